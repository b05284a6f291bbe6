"""Resonance varieties from linearized Alexander matrices and cup-product data."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Mapping, Sequence

from sympy import primitive_root

from .errors import InputError
from .exactla import rank_mod_p, rank_q
from .jumploci import Character, depth
from .presentations import GroupPresentation


@dataclass(frozen=True)
class LinearFormMatrix:
    """A matrix whose entries are linear forms sum_i c_i x_i in ``nvars`` variables."""

    rows: int
    cols: int
    nvars: int
    coeffs: tuple[tuple[tuple[int, ...], ...], ...]  # coeffs[r][c][i]

    def evaluate(self, a: Sequence) -> list[list[Fraction]]:
        if len(a) != self.nvars:
            raise InputError(f"point must have {self.nvars} coordinates")
        a = [Fraction(x) for x in a]
        return [[sum((c * x for c, x in zip(entry, a)), Fraction(0)) for entry in row] for row in self.coeffs]

    def evaluate_mod_p(self, a: Sequence[int], p: int) -> list[list[int]]:
        return [[sum(c * x for c, x in zip(entry, a)) % p for entry in row] for row in self.coeffs]

    def is_zero(self) -> bool:
        return not any(any(e) for row in self.coeffs for e in row)

    def to_text(self) -> list[list[str]]:
        out = []
        for row in self.coeffs:
            line = []
            for entry in row:
                terms = []
                for i, c in enumerate(entry):
                    if c:
                        coef = "" if abs(c) == 1 else f"{abs(c)}*"
                        terms.append(("- " if c < 0 else "+ ") + f"{coef}x{i + 1}")
                s = " ".join(terms) or "0"
                s = s[2:] if s.startswith("+ ") else ("-" + s[2:] if s.startswith("- ") else s)
                line.append(s)
            out.append(line)
        return out


def linearized_alexander_matrix(pres: GroupPresentation) -> LinearFormMatrix:
    """Degree-one part of the Alexander matrix after substituting t_i = 1 + x_i.

    The linear part of a monomial t^u is <u, x>, so an entry sum c_u t^u
    becomes sum c_u <u, x>; its constant part sum c_u must vanish.
    """
    if not pres.has_commutator_relators():
        raise InputError("linearization needs every relator in the commutator subgroup")
    mat = pres.alexander_matrix()
    q = pres.ngens
    rows = []
    for row in mat.entries:
        line = []
        for f in row:
            if f.value_at_one() != 0:
                raise InputError("Alexander matrix entry does not vanish at the identity")
            coef = [0] * q
            for u, c in f.terms.items():
                for i in range(q):
                    coef[i] += c * u[i]
            line.append(tuple(coef))
        rows.append(tuple(line))
    return LinearFormMatrix(mat.rows, q, q, tuple(rows))


# ---------------------------------------------------------------------------
# cup products


@dataclass(frozen=True)
class CupStructure:
    """Cup product H^1 x H^1 -> H^2 given by mu[(i, j, k)] = coefficient of e_k in e_i e_j.

    Indices are zero-based internally; JSON uses one-based indices.
    """

    b1: int
    b2: int
    mu: Mapping[tuple[int, int, int], int]

    @classmethod
    def build(cls, b1: int, b2: int, entries: Mapping[tuple[int, int, int], int] | Sequence) -> "CupStructure":
        """Complete given entries by antisymmetry, rejecting inconsistent data."""
        if isinstance(entries, Mapping):
            items = list(entries.items())
        else:
            items = [((i, j, k), v) for i, j, k, v in entries]
        mu: dict[tuple[int, int, int], int] = {}
        for (i, j, k), v in items:
            if not (0 <= i < b1 and 0 <= j < b1 and 0 <= k < b2):
                raise InputError(f"cup product index ({i + 1},{j + 1},{k + 1}) out of range")
            v = int(v)
            if i == j and v:
                raise InputError("cup square of a degree-one class must vanish")
            for key, val in (((i, j, k), v), ((j, i, k), -v)):
                if key in mu and mu[key] != val:
                    raise InputError(f"cup product data is not antisymmetric at {tuple(x + 1 for x in key)}")
                mu[key] = val
        return cls(b1, b2, {k: v for k, v in mu.items() if v})

    def product(self, u: Sequence, v: Sequence) -> list:
        out = [0] * self.b2
        for (i, j, k), c in self.mu.items():
            out[k] += c * u[i] * v[j]
        return out

    def theta(self) -> LinearFormMatrix:
        """b2 x b1 matrix with entries Theta_kj = sum_i mu_ijk x_i."""
        rows = [[[0] * self.b1 for _ in range(self.b1)] for _ in range(self.b2)]
        for (i, j, k), c in self.mu.items():
            rows[k][j][i] += c
        return LinearFormMatrix(self.b2, self.b1, self.b1,
                                tuple(tuple(tuple(e) for e in row) for row in rows))

    @classmethod
    def from_json(cls, data: Mapping) -> "CupStructure":
        try:
            b1, b2 = int(data["b1"]), int(data["b2"])
            raw = data["mu"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("cup structure JSON needs b1, b2 and mu") from exc
        entries = []
        for item in raw:
            if len(item) != 4:
                raise InputError("each mu entry is [i, j, k, value]")
            i, j, k, v = (int(x) for x in item)
            entries.append((i - 1, j - 1, k - 1, v))
        return cls.build(b1, b2, entries)

    def to_json(self) -> dict:
        mu = [[i + 1, j + 1, k + 1, v] for (i, j, k), v in sorted(self.mu.items()) if i < j]
        return {"b1": self.b1, "b2": self.b2, "mu": mu}


def cup_from_theta(theta: LinearFormMatrix) -> CupStructure:
    """Read mu_ijk = coefficient of x_i in Theta_kj; the result must be antisymmetric."""
    if theta.cols != theta.nvars:
        raise InputError("theta must have one column per variable")
    entries = {}
    for k in range(theta.rows):
        for j in range(theta.cols):
            for i, c in enumerate(theta.coeffs[k][j]):
                if c:
                    entries[(i, j, k)] = c
    for (i, j, k), c in entries.items():
        if entries.get((j, i, k), 0) != -c:
            raise InputError("linear form matrix is not of cup-product type")
    return CupStructure.build(theta.cols, theta.rows, entries)


def theta_from_3form(eta: Mapping[tuple[int, int, int], int], n: int) -> LinearFormMatrix:
    """n x n skew matrix Theta_kj = sum_i eta_ijk x_i from an antisymmetric 3-form."""
    full: dict[tuple[int, int, int], int] = {}
    for (i, j, k), v in eta.items():
        if not all(0 <= x < n for x in (i, j, k)):
            raise InputError("3-form index out of range")
        if len({i, j, k}) < 3:
            if v:
                raise InputError("an antisymmetric 3-form vanishes on repeated indices")
            continue
        base = sorted((i, j, k))
        perm = [base.index(x) for x in (i, j, k)]
        inversions = sum(1 for a in range(3) for b in range(a + 1, 3) if perm[a] > perm[b])
        sign = -1 if inversions % 2 else 1
        key = tuple(base)
        if key in full and full[key] != sign * v:
            raise InputError("3-form data is not antisymmetric")
        full[key] = sign * v
    rows = [[[0] * n for _ in range(n)] for _ in range(n)]
    for (i, j, k), v in full.items():
        for perm in permutations(range(3)):
            idx = [(i, j, k)[p] for p in perm]
            inversions = sum(1 for a in range(3) for b in range(a + 1, 3) if perm[a] > perm[b])
            sign = -1 if inversions % 2 else 1
            a, b, c = idx
            rows[c][b][a] += sign * v
    return LinearFormMatrix(n, n, n, tuple(tuple(tuple(e) for e in row) for row in rows))


# ---------------------------------------------------------------------------
# membership


@dataclass(frozen=True)
class ResonanceResult:
    member: bool
    rank: int
    aomoto_betti: int

    def to_json(self) -> dict:
        return {"member": self.member, "rank": self.rank, "aomoto_betti": self.aomoto_betti}


def resonance_membership(theta: LinearFormMatrix, a: Sequence, d: int = 1,
                         prime: int | None = None) -> ResonanceResult:
    """Whether a lies in R_d: rank Theta(a) < b1 - d.

    ``aomoto_betti`` is dim H^1(A, a) = b1 - 1 - rank for a != 0 and b1 at 0.
    """
    b1 = theta.nvars
    if d < 0:
        raise InputError("depth must be non-negative")
    if prime is None:
        mat = theta.evaluate(a)
        r = rank_q(mat) if mat else 0
        zero = all(Fraction(x) == 0 for x in a)
    else:
        mat = theta.evaluate_mod_p([int(x) for x in a], prime)
        r = rank_mod_p(mat, prime) if mat else 0
        zero = all(int(x) % prime == 0 for x in a)
    betti = b1 if zero else b1 - 1 - r
    return ResonanceResult(r < b1 - d, r, betti)


def isotropy_rank(cup: CupStructure, span: Sequence[Sequence], prime: int | None = None) -> int:
    """Rank of the cup product restricted to Lambda^2 of the span of the given vectors."""
    images = []
    for x in range(len(span)):
        for y in range(x + 1, len(span)):
            images.append(cup.product(span[x], span[y]))
    if not images:
        return 0
    if prime is None:
        return rank_q([[Fraction(v) for v in row] for row in images])
    return rank_mod_p(images, prime)


@dataclass(frozen=True)
class GermComparison:
    trials: int
    both: int
    resonance_only: int
    character_only: int
    neither: int

    @property
    def non_formality_signal(self) -> bool:
        """Resonant directions whose exponentials never hit V_1."""
        return self.resonance_only > 0 and self.both == 0

    def to_json(self) -> dict:
        return {"trials": self.trials, "both": self.both, "resonance_only": self.resonance_only,
                "character_only": self.character_only, "neither": self.neither,
                "non_formality_signal": self.non_formality_signal}


def germ_comparison_sample(pres: GroupPresentation, trials: int = 40, prime: int = 101,
                           seed: int = 0, bound: int = 3) -> GermComparison:
    """Compare R_1 with V_1 along sampled integral directions.

    A direction a in Z^n is tested for resonance over Q; the matching
    character is g^(s a) in F_p^* for a primitive root g and random s, which
    lies on the subtorus exp(L) whenever a lies on a rational subspace L.
    """
    theta = linearized_alexander_matrix(pres)
    n = pres.ngens
    rng = random.Random(seed)
    g = primitive_root(prime)
    counts = {"both": 0, "resonance_only": 0, "character_only": 0, "neither": 0}
    done = 0
    while done < trials:
        a = [rng.randint(-bound, bound) for _ in range(n)]
        if not any(a):
            continue
        s = rng.randrange(1, prime - 1)
        vals = tuple(pow(g, s * x % (prime - 1), prime) for x in a)
        rho = Character(prime, vals)
        if rho.is_trivial():
            continue
        res = resonance_membership(theta, a, 1).member
        char = depth(pres, rho) >= 1
        key = ("both" if char else "resonance_only") if res else ("character_only" if char else "neither")
        counts[key] += 1
        done += 1
    return GermComparison(trials, **counts)

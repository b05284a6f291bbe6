"""Characteristic varieties over prime fields: depth, character enumeration, cyclic covers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Mapping, Sequence

from sympy import isprime, primitive_root, totient

from .alexinv import alexander_polynomial
from .errors import CapExceeded, InputError, cap
from .exactla import rank_mod_p, smith_normal_form
from .laurent import LaurentPoly
from .presentations import GroupPresentation, check_epimorphism, permutation_lift


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise InputError(f"{p} is not a prime")


@dataclass(frozen=True)
class Character:
    """A homomorphism to F_p^*, given by its values on the generators."""

    prime: int
    values: tuple[int, ...]

    def __post_init__(self):
        _check_prime(self.prime)
        vals = tuple(int(v) % self.prime for v in self.values)
        if any(v == 0 for v in vals):
            raise InputError("character values must be nonzero mod p")
        object.__setattr__(self, "values", vals)

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def power(self, k: int) -> "Character":
        return Character(self.prime, tuple(pow(v, k, self.prime) for v in self.values))

    def order(self) -> int:
        n = 1
        for v in self.values:
            k = 1
            x = v
            while x != 1:
                x = x * v % self.prime
                k += 1
            n = n * k // gcd(n, k)
        return n

    def validate(self, pres: GroupPresentation) -> "Character":
        if len(self.values) != pres.ngens:
            raise InputError(f"character has {len(self.values)} values, presentation has {pres.ngens} generators")
        for i, r in enumerate(pres.relators):
            if r.evaluate_mod_p(self.values, self.prime) != 1:
                raise InputError(f"relator {i + 1} does not evaluate to 1 under the character")
        return self

    def to_json(self, pres: GroupPresentation) -> dict:
        return {"prime": self.prime, "values": dict(zip(pres.generators, self.values))}

    @classmethod
    def from_json(cls, data: Mapping, pres: GroupPresentation) -> "Character":
        try:
            prime = int(data["prime"])
            vals = data["values"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("character JSON needs 'prime' and 'values'") from exc
        return cls(prime, _values_from_mapping(vals, pres)).validate(pres)


def _values_from_mapping(vals, pres: GroupPresentation) -> tuple[int, ...]:
    if isinstance(vals, Mapping):
        missing = [g for g in pres.generators if g not in vals]
        extra = [k for k in vals if k not in pres.generators]
        if missing or extra:
            raise InputError(f"values must name every generator exactly once (missing {missing}, unknown {extra})")
        return tuple(int(vals[g]) for g in pres.generators)
    vals = list(vals)
    if len(vals) != pres.ngens:
        raise InputError("wrong number of values")
    return tuple(int(v) for v in vals)


@dataclass(frozen=True)
class CyclicEpimorphism:
    """A surjection onto Z_n given by generator residues."""

    modulus: int
    residues: tuple[int, ...]

    def validate(self, pres: GroupPresentation) -> "CyclicEpimorphism":
        res = check_epimorphism(pres, self.residues, self.modulus)
        return CyclicEpimorphism(self.modulus, tuple(res))

    @classmethod
    def from_json(cls, data: Mapping, pres: GroupPresentation) -> "CyclicEpimorphism":
        try:
            n = int(data["modulus"])
            vals = data["values"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("epimorphism JSON needs 'modulus' and 'values'") from exc
        return cls(n, _values_from_mapping(vals, pres)).validate(pres)

    def to_json(self, pres: GroupPresentation) -> dict:
        return {"modulus": self.modulus, "values": dict(zip(pres.generators, self.residues))}


# ---------------------------------------------------------------------------
# depth


def depth(pres: GroupPresentation, rho: Character) -> int:
    """dim H1(X, C_rho) over F_p for the presentation 2-complex X."""
    rho.validate(pres)
    q = pres.ngens
    jac = pres.evaluated_jacobian(rho.values, rho.prime)
    kernel_dim = q if rho.is_trivial() else q - 1
    return kernel_dim - rank_mod_p(jac, rho.prime)


def first_betti_mod_p(pres: GroupPresentation, p: int) -> int:
    _check_prime(p)
    return pres.ngens - rank_mod_p(pres.exponent_matrix(), p)


def in_characteristic_variety(pres: GroupPresentation, rho: Character, d: int = 1) -> bool:
    return depth(pres, rho) >= d


def smallest_prime_with_roots(n: int, after: int = 1) -> int:
    """Smallest prime p > after with n | p - 1."""
    if n < 1:
        raise InputError("order must be positive")
    p = after + 1
    while True:
        if (p - 1) % n == 0 and isprime(p):
            return p
        p += 1


def root_of_unity(n: int, p: int) -> int:
    """A primitive n-th root of unity in F_p (needs n | p - 1)."""
    _check_prime(p)
    if (p - 1) % n:
        raise InputError(f"F_{p} has no primitive {n}-th root of unity")
    return pow(primitive_root(p), (p - 1) // n, p)


def enumerate_characters(pres: GroupPresentation, prime: int, order: int | None = None,
                         limit: int | None = None) -> list[Character]:
    """Characters G -> F_p^* (of exact ``order`` when given), in sorted order.

    The parametrisation runs through the Smith form of the exponent matrix, so
    torsion in H1 is handled.
    """
    _check_prime(prime)
    n = prime - 1 if order is None else order
    if n < 1 or (prime - 1) % n:
        raise InputError(f"order {n} does not divide {prime} - 1")
    limit = cap("characters") if limit is None else limit
    q = pres.ngens
    snf = smith_normal_form(pres.exponent_matrix(), transforms=True, ncols=q)
    diag = list(snf.factors) + [0] * (q - snf.rank)
    steps = []
    for d in diag:
        g = gcd(d, n)  # gcd(0, n) = n
        steps.append(range(0, n, n // g))
    total = prod(len(s) for s in steps)
    if total > limit:
        raise CapExceeded(f"{total} candidate characters exceed the cap of {limit}")
    zeta = root_of_unity(n, prime)
    right = snf.right
    out = []
    for b in itertools.product(*steps):
        exps = [sum(right[j][k] * b[k] for k in range(q)) % n for j in range(q)]
        if order is not None and gcd(n, gcd(*exps) if exps else 0) != 1:
            # character order is n / gcd(n, exps)
            continue
        out.append(Character(prime, tuple(pow(zeta, e, prime) for e in exps)))
    out.sort(key=lambda c: c.values)
    return out


# ---------------------------------------------------------------------------
# codimension-one stratum


@dataclass(frozen=True)
class CodimOneStratum:
    """The part of V_1 inside the identity component detectable from Delta.

    kind is one of ``full`` (Delta = 0), ``hypersurface`` (the zero set of
    Delta), ``finite`` (b1 = 1: roots of Delta together with the trivial
    character), ``empty`` (Delta a unit) or ``point`` (b1 = 0).
    """

    kind: str
    delta: LaurentPoly
    b1: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "delta": str(self.delta), "b1": self.b1}


def codim1_stratum(pres: GroupPresentation, limit: int | None = None) -> CodimOneStratum:
    delta = alexander_polynomial(pres, limit)
    b1 = pres.b1
    if b1 == 0:
        kind = "point"
    elif delta.is_zero():
        kind = "full"
    elif b1 == 1:
        kind = "finite"
    elif delta.is_associate_of_constant():
        kind = "empty"
    else:
        kind = "hypersurface"
    return CodimOneStratum(kind, delta, b1)


# ---------------------------------------------------------------------------
# cyclic covers


@dataclass(frozen=True)
class CoverBetti:
    betti: int
    base: int
    contributions: tuple[tuple[int, int, int], ...] = field(default=())  # (e, phi(e), depth)

    def to_json(self) -> dict:
        return {"b1": self.betti, "base": self.base,
                "terms": [{"e": e, "phi": f, "depth_sum": d} for e, f, d in self.contributions]}


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def character_depth_terms(pres: GroupPresentation, rho: Character, n: int) -> tuple[tuple[int, int, int], ...]:
    """(e, phi(e), sum of depths of the phi(e) powers of rho of exact order e) for 1 < e | n.

    Over F_p the primitive e-th roots are not Galois conjugate, so the powers
    of exact order e are evaluated one by one rather than as phi(e) copies.
    """
    terms = []
    for e in _divisors(n)[1:]:
        total = 0
        for j in range(1, e):
            if gcd(j, e) == 1:
                total += depth(pres, rho.power(j * (n // e)))
        terms.append((e, int(totient(e)), total))
    return tuple(terms)


def cover_betti_depth(pres: GroupPresentation, residues: Sequence[int], n: int, prime: int) -> CoverBetti:
    """dim H1(cover, F_p) for the Z_n-cover defined by ``residues``, via depths.

    The cover's homology splits over the characters of Z_n; each divisor
    e > 1 of n contributes the depths of the characters of exact order e.
    """
    _check_prime(prime)
    if n % prime == 0:
        raise InputError(f"the prime {prime} divides the cover degree {n}")
    if (prime - 1) % n:
        raise InputError(f"{n} does not divide {prime} - 1")
    res = check_epimorphism(pres, residues, n)
    zeta = root_of_unity(n, prime)
    base = first_betti_mod_p(pres, prime)
    terms = character_depth_terms(pres, Character(prime, tuple(pow(zeta, a, prime) for a in res)), n)
    return CoverBetti(base + sum(d for _, _, d in terms), base, terms)


@dataclass(frozen=True)
class CoverHomology:
    rank: int
    torsion: tuple[int, ...]

    def betti_mod_p(self, p: int) -> int:
        return self.rank + sum(1 for t in self.torsion if t % p == 0)

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = [f"Z^{self.rank}"] if self.rank else []
        parts += [f"Z_{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def cover_h1_snf(pres: GroupPresentation, residues: Sequence[int], n: int) -> CoverHomology:
    """Integral H1 of the Z_n-cover from the Smith form of the permutation lift."""
    lift = permutation_lift(pres, residues, n)
    snf = smith_normal_form(lift, ncols=pres.ngens * n)
    free, torsion = snf.cokernel()
    rank = free - (n - 1)
    if rank < 0:
        raise InputError("permutation lift has too small a cokernel; is the map onto?")
    return CoverHomology(rank, tuple(torsion))


@dataclass(frozen=True)
class CoverComparison:
    by_depth: CoverBetti
    by_snf: CoverHomology
    prime: int

    @property
    def agreement(self) -> bool:
        return self.by_depth.betti == self.by_snf.betti_mod_p(self.prime)

    def to_json(self) -> dict:
        return {"b1_depth": self.by_depth.betti, "h1": self.by_snf.to_json(),
                "b1_snf_mod_p": self.by_snf.betti_mod_p(self.prime), "agreement": self.agreement}


def cover_betti_both(pres: GroupPresentation, residues: Sequence[int], n: int, prime: int) -> CoverComparison:
    return CoverComparison(cover_betti_depth(pres, residues, n, prime), cover_h1_snf(pres, residues, n), prime)


def congruence_b1(pres: GroupPresentation, n: int, prime: int, orders: str = "dividing",
                  limit: int | None = None) -> int:
    """dim H1 of the congruence cover (deck group H1(X, Z_n)) over F_p.

    ``orders="dividing"`` sums depths over all nontrivial characters of order
    dividing n, which is the count for the whole deck group. ``orders="exact"``
    only uses characters of exact order n; both agree for prime n.
    """
    if orders not in ("dividing", "exact"):
        raise InputError("orders must be 'dividing' or 'exact'")
    _check_prime(prime)
    if n < 2:
        raise InputError("congruence covers need n >= 2")
    if n % prime == 0 or (prime - 1) % n:
        raise InputError(f"need a prime p with n | p - 1 and p not dividing n; got p={prime}, n={n}")
    total = first_betti_mod_p(pres, prime)
    levels = [n] if orders == "exact" else _divisors(n)[1:]
    for e in levels:
        total += sum(depth(pres, rho) for rho in enumerate_characters(pres, prime, e, limit))
    return total

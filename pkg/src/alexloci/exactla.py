"""Exact linear algebra over the integers, the rationals and prime fields.

Matrices are plain lists of rows of Python ints (or Fractions where noted),
so big integers come for free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence

from .errors import InputError

IntMatrix = list[list[int]]


def _shape(matrix: Sequence[Sequence], ncols: int | None = None) -> tuple[int, int]:
    rows = len(matrix)
    cols = len(matrix[0]) if rows else (ncols or 0)
    for row in matrix:
        if len(row) != cols:
            raise InputError("ragged matrix")
    return rows, cols


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for k in range(inner):
            x = row[k]
            if x:
                brow = b[k]
                for j in range(cols):
                    if brow[j]:
                        acc[j] += x * brow[j]
        out.append(acc)
    return out


def transpose(matrix: Sequence[Sequence], ncols: int = 0) -> list[list]:
    if not matrix:
        return [[] for _ in range(ncols)]
    return [list(col) for col in zip(*matrix)]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class SmithForm:
    """Result of a Smith normal form computation.

    ``factors`` are the nonzero diagonal entries d_1 | d_2 | ... (all positive).
    When transforms were requested, ``left @ matrix @ right`` is the diagonal
    matrix with those entries.
    """

    rows: int
    cols: int
    factors: list[int]
    left: IntMatrix | None = None
    right: IntMatrix | None = None

    @property
    def rank(self) -> int:
        return len(self.factors)

    def cokernel(self) -> tuple[int, list[int]]:
        """Free rank and torsion coefficients of Z^cols / rowspace."""
        return self.cols - self.rank, [d for d in self.factors if d != 1]


def smith_normal_form(matrix: Sequence[Sequence[int]], transforms: bool = False,
                      ncols: int | None = None) -> SmithForm:
    m, n = _shape(matrix, ncols)
    a = [list(map(int, row)) for row in matrix]
    left = identity(m) if transforms else None
    right = identity(n) if transforms else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if left is not None:
            left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if right is not None:
            for row in right:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row dst += c * row src
        rs, rd = a[src], a[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += c * rs[k]
        if left is not None:
            ls, ld = left[src], left[dst]
            for k in range(m):
                if ls[k]:
                    ld[k] += c * ls[k]

    def add_col(src, dst, c):  # col dst += c * col src
        for row in a:
            if row[src]:
                row[dst] += c * row[src]
        if right is not None:
            for row in right:
                if row[src]:
                    row[dst] += c * row[src]

    factors: list[int] = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    if a[t][j]:
                        done = False
            if not done:
                # move the smallest leftover in row/column t to the pivot
                cand = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(t, i)
                if j != t:
                    swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if left is not None:
                left[t] = [-x for x in left[t]]
        factors.append(a[t][t])
        t += 1
    return SmithForm(m, n, factors, left, right)


def invariant_factors(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    return smith_normal_form(matrix, ncols=ncols).factors


def cokernel(matrix: Sequence[Sequence[int]], ncols: int) -> tuple[int, list[int]]:
    """(free rank, torsion) of Z^ncols modulo the row span of ``matrix``."""
    return smith_normal_form(matrix, ncols=ncols).cokernel()


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """Rows forming a Z-basis of {x in Z^ncols : matrix x = 0}."""
    if not matrix:
        return identity(ncols)
    snf = smith_normal_form(matrix, transforms=True, ncols=ncols)
    right = snf.right
    return [[right[i][k] for i in range(ncols)] for k in range(snf.rank, ncols)]


# ---------------------------------------------------------------------------
# Hermite normal form


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """Row-style HNF of the lattice spanned by ``rows``; zero rows dropped.

    Pivots are positive and entries above a pivot lie in [0, pivot).
    """
    a = [list(map(int, row)) for row in rows if any(row)]
    r = 0
    for col in range(ncols):
        if r == len(a):
            break
        while True:
            nz = [i for i in range(r, len(a)) if a[i][col]]
            if not nz:
                break
            i = min(nz, key=lambda k: abs(a[k][col]))
            a[r], a[i] = a[i], a[r]
            others = [k for k in range(r + 1, len(a)) if a[k][col]]
            if not others:
                break
            piv = a[r]
            for k in others:
                q = a[k][col] // piv[col]
                a[k] = [x - q * y for x, y in zip(a[k], piv)]
        if r == len(a) or not a[r][col]:
            continue
        if a[r][col] < 0:
            a[r] = [-x for x in a[r]]
        piv = a[r]
        for j in range(r):
            q = a[j][col] // piv[col]
            if q:
                a[j] = [x - q * y for x, y in zip(a[j], piv)]
        r += 1
    return a[:r]


# ---------------------------------------------------------------------------
# ranks


def rank_mod_p(matrix: Sequence[Sequence[int]], p: int) -> int:
    rows = [[x % p for x in row] for row in matrix]
    if not rows:
        return 0
    n = len(rows[0])
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        prow = [x * inv % p for x in rows[rank]]
        rows[rank] = prow
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _integerize(row: Sequence) -> list[int]:
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            d = x.denominator
            den = den * d // _gcd(den, d)
    return [int(x * den) for x in row]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def rank_q(matrix: Sequence[Sequence]) -> int:
    """Rank over Q via fraction-free (Bareiss) elimination."""
    a = [_integerize(r) for r in matrix]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(rank, m) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pr = a[rank]
        for i in range(rank + 1, m):
            ai = a[i]
            a[i] = [(pr[c] * ai[k] - ai[c] * pr[k]) // prev for k in range(n)]
        prev = pr[c]
        rank += 1
        if rank == m:
            break
    return rank


def solve_q(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One rational solution x of matrix x = rhs, or None."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    if any(a[i][n] for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = a[i][n]
    return x


# ---------------------------------------------------------------------------
# rational subspaces


@total_ordering
@dataclass(frozen=True)
class RationalSubspace:
    """A rational linear subspace of Q^dim, stored as the kernel of its normals.

    The normals are the HNF of the saturated integer lattice orthogonal to the
    subspace, which makes equality of subspaces equality of the stored data.
    """

    dim_ambient: int
    normals: tuple[tuple[int, ...], ...] = field(default=())

    @classmethod
    def from_normals(cls, normals: Iterable[Sequence[int]], dim: int) -> "RationalSubspace":
        rows = [list(map(int, r)) for r in normals]
        for r in rows:
            if len(r) != dim:
                raise InputError("normal vector has wrong length")
        rows = [r for r in rows if any(r)]
        if not rows:
            return cls(dim, ())
        inside = integer_kernel(rows, dim)
        sat = integer_kernel(inside, dim) if inside else identity(dim)
        return cls(dim, tuple(tuple(r) for r in hermite_normal_form(sat, dim)))

    @classmethod
    def from_basis(cls, vectors: Iterable[Sequence[int]], dim: int) -> "RationalSubspace":
        rows = [_integerize(v) for v in vectors]
        rows = [r for r in rows if any(r)]
        if not rows:
            return cls.zero(dim)
        return cls.from_normals(integer_kernel(rows, dim), dim)

    @classmethod
    def full(cls, dim: int) -> "RationalSubspace":
        return cls(dim, ())

    @classmethod
    def zero(cls, dim: int) -> "RationalSubspace":
        return cls(dim, tuple(tuple(r) for r in identity(dim)))

    @property
    def dimension(self) -> int:
        return self.dim_ambient - len(self.normals)

    def basis(self) -> IntMatrix:
        return integer_kernel([list(r) for r in self.normals], self.dim_ambient)

    def contains_vector(self, v: Sequence) -> bool:
        if len(v) != self.dim_ambient:
            raise InputError("vector has wrong length")
        return all(sum(Fraction(a) * b for a, b in zip(v, n)) == 0 for n in self.normals)

    def contains_vector_mod_p(self, v: Sequence[int], p: int) -> bool:
        return all(sum(a * b for a, b in zip(v, n)) % p == 0 for n in self.normals)

    def issubset(self, other: "RationalSubspace") -> bool:
        self._check(other)
        if not other.normals:
            return True
        mine = [list(r) for r in self.normals]
        return rank_q(mine + [list(r) for r in other.normals]) == len(mine)

    def intersect(self, other: "RationalSubspace") -> "RationalSubspace":
        self._check(other)
        return RationalSubspace.from_normals(list(self.normals) + list(other.normals), self.dim_ambient)

    def __le__(self, other: "RationalSubspace") -> bool:  # type: ignore[override]
        return self.sort_key() <= other.sort_key()

    def __lt__(self, other: "RationalSubspace") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.dim_ambient, -self.dimension, self.normals)

    def _check(self, other: "RationalSubspace") -> None:
        if other.dim_ambient != self.dim_ambient:
            raise InputError("subspaces live in different ambient spaces")

    def to_json(self) -> dict:
        return {"ambient_dim": self.dim_ambient, "dim": self.dimension,
                "normals": [list(r) for r in self.normals]}

    def __str__(self) -> str:
        if not self.normals:
            return f"Q^{self.dim_ambient}"
        if self.dimension == 0:
            return "{0}"
        eqs = []
        for r in self.normals:
            terms = []
            for i, c in enumerate(r):
                if c:
                    coef = "" if abs(c) == 1 else f"{abs(c)}*"
                    sign = "-" if c < 0 else "+"
                    terms.append(f"{sign} {coef}z{i + 1}")
            s = " ".join(terms)
            s = s[2:] if s.startswith("+ ") else "-" + s[2:]
            eqs.append(f"{s} = 0")
        return "{" + ", ".join(eqs) + "}"


def canonicalize(space: RationalSubspace) -> RationalSubspace:
    return RationalSubspace.from_normals(space.normals, space.dim_ambient)


def contains(a: RationalSubspace, b: RationalSubspace) -> bool:
    """True when ``a`` is a subset of ``b``."""
    return a.issubset(b)


def intersect(a: RationalSubspace, b: RationalSubspace) -> RationalSubspace:
    return a.intersect(b)


class SubspaceArrangement:
    """A finite union of rational subspaces, kept irredundant and sorted.

    An arrangement with no members is the empty set.
    """

    def __init__(self, dim: int, members: Iterable[RationalSubspace] = ()):
        self.dim_ambient = dim
        self.members: tuple[RationalSubspace, ...] = ()
        for s in members:
            if s.dim_ambient != dim:
                raise InputError("subspace dimension mismatch in arrangement")
        self.members = tuple(_irredundant(list(members)))

    @classmethod
    def empty(cls, dim: int) -> "SubspaceArrangement":
        return cls(dim, ())

    @classmethod
    def full(cls, dim: int) -> "SubspaceArrangement":
        return cls(dim, [RationalSubspace.full(dim)])

    def is_empty(self) -> bool:
        return not self.members

    def union(self, other: "SubspaceArrangement") -> "SubspaceArrangement":
        return SubspaceArrangement(self.dim_ambient, self.members + other.members)

    def intersect(self, other: "SubspaceArrangement") -> "SubspaceArrangement":
        return SubspaceArrangement(self.dim_ambient,
                                   [a.intersect(b) for a in self.members for b in other.members])

    def contains_vector(self, v: Sequence) -> bool:
        return any(s.contains_vector(v) for s in self.members)

    def covers(self, space: RationalSubspace) -> bool:
        """True when ``space`` lies inside a single member (enough for irreducible pieces)."""
        return any(space.issubset(s) for s in self.members)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SubspaceArrangement) and other.dim_ambient == self.dim_ambient
                and other.members == self.members)

    def __hash__(self) -> int:
        return hash((self.dim_ambient, self.members))

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return f"SubspaceArrangement({self.dim_ambient}, [{', '.join(map(str, self.members))}])"

    def to_json(self) -> list:
        return [s.to_json() for s in self.members]


def _irredundant(spaces: list[RationalSubspace]) -> list[RationalSubspace]:
    uniq = sorted(set(spaces), key=lambda s: (-s.dimension, s.normals))
    kept: list[RationalSubspace] = []
    for s in uniq:
        if not any(s.issubset(k) for k in kept):
            kept.append(s)
    return sorted(kept)

"""Exponential tangent cones of characteristic varieties and their consequences.

The cone of V(f) at the identity is a finite union of rational subspaces:
each partition of the support of f into blocks with zero coefficient sum
gives the subspace of directions constant on every block.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Sequence

from .alexinv import iter_minors
from .errors import CapExceeded, InputError, cap
from .exactla import RationalSubspace, SubspaceArrangement
from .laurent import LaurentPoly, factor_laurent
from .presentations import GroupPresentation


def _block_space(points: Sequence[Sequence[int]], dim: int) -> RationalSubspace:
    base = points[0]
    return RationalSubspace.from_normals([[a - b for a, b in zip(p, base)] for p in points[1:]], dim)


def zero_sum_partitions(f: LaurentPoly) -> Iterable[list[list[tuple[int, ...]]]]:
    """All partitions of the support of f whose blocks have zero coefficient sum."""
    pts = f.support()
    coeffs = [f.coefficient(p) for p in pts]

    def rec(remaining: tuple[int, ...]):
        if not remaining:
            yield []
            return
        first, rest = remaining[0], remaining[1:]
        k = len(rest)
        for mask in range(1 << k):
            block = [first] + [rest[i] for i in range(k) if mask >> i & 1]
            if sum(coeffs[i] for i in block) != 0:
                continue
            left = tuple(rest[i] for i in range(k) if not mask >> i & 1)
            for tail in rec(left):
                yield [[pts[i] for i in block]] + tail

    yield from rec(tuple(range(len(pts))))


def tau1_of_polynomial(f: LaurentPoly, limit: int | None = None, factor: bool = True) -> SubspaceArrangement:
    """Exponential tangent cone of the hypersurface V(f) at 1.

    With ``factor`` the cone is assembled from the irreducible factors of f,
    so the support cap applies to each factor rather than to f.
    """
    n = f.nvars
    if f.is_zero():
        return SubspaceArrangement.full(n)
    if f.value_at_one() != 0:
        return SubspaceArrangement.empty(n)
    if factor and len(f.terms) > 3:
        _, parts = factor_laurent(f)
        result = SubspaceArrangement.empty(n)
        for g, _ in parts:
            result = result.union(tau1_of_polynomial(g, limit, factor=False))
        return result
    limit = cap("support") if limit is None else limit
    pts = f.support()
    if len(pts) > limit:
        raise CapExceeded(f"support of size {len(pts)} exceeds the cap of {limit}")
    coeffs = [f.coefficient(p) for p in pts]
    full = (1 << len(pts)) - 1

    @lru_cache(maxsize=None)
    def cone(mask: int) -> SubspaceArrangement:
        # union over zero-sum partitions of ``mask`` of the intersection of block spaces
        if mask == 0:
            return SubspaceArrangement.full(n)
        low = mask & -mask
        rest = mask ^ low
        pieces = []
        sub = rest
        while True:
            block = sub | low
            if sum(coeffs[i] for i in range(len(pts)) if block >> i & 1) == 0:
                tail = cone(mask ^ block)
                if not tail.is_empty():
                    space = _block_space([pts[i] for i in range(len(pts)) if block >> i & 1], n)
                    pieces.extend(space.intersect(t) for t in tail)
            if sub == 0:
                break
            sub = (sub - 1) & rest
        return SubspaceArrangement(n, pieces)

    return cone(full)


def subspace_in_cone(f: LaurentPoly, space: RationalSubspace) -> bool:
    """Exact test of space ⊆ tau1(V(f)): f(exp(t z)) vanishes for every z in space.

    For generic z in the space, <u, z> = <v, z> exactly when u and v have the
    same coordinates against a basis, so group the support by those.
    """
    basis = space.basis()
    sums: dict = {}
    for u, c in f.terms.items():
        key = tuple(sum(a * b for a, b in zip(u, row)) for row in basis)
        sums[key] = sums.get(key, 0) + c
    return all(v == 0 for v in sums.values())


def tau1_of_system(polys: Iterable[LaurentPoly], nvars: int, limit: int | None = None) -> SubspaceArrangement:
    """Cone of the common zero set: intersection of the individual cones."""
    result = SubspaceArrangement.full(nvars)
    seen = set()
    ordered = []
    for f in polys:
        if f.nvars != nvars:
            raise InputError("polynomial system lives in different rings")
        g = f.normalize()
        if g in seen:
            continue
        seen.add(g)
        ordered.append(g)
    # cheap rejections first
    ordered.sort(key=lambda g: (g.value_at_one() == 0, len(g.terms)))
    for g in ordered:
        if g.value_at_one() != 0:
            return SubspaceArrangement.empty(nvars)
        cone = None
        pieces = []
        for member in result:
            if subspace_in_cone(g, member):
                pieces.append(member)
                continue
            if cone is None:
                cone = tau1_of_polynomial(g, limit)
            pieces.extend(member.intersect(m) for m in cone)
        result = SubspaceArrangement(nvars, pieces)
        if result.is_empty():
            break
    return result


def witness_check(f: LaurentPoly, z: Sequence[int]) -> bool:
    """Whether f(exp(t z)) vanishes identically: group the support by <u, z>."""
    sums: dict = {}
    for u, c in f.terms.items():
        key = sum(a * b for a, b in zip(u, z))
        sums[key] = sums.get(key, 0) + c
    return all(v == 0 for v in sums.values())


def bns_upper_bound(pres: GroupPresentation, minor_limit: int | None = None,
                    support_limit: int | None = None) -> SubspaceArrangement:
    """Cone of V_1 at 1, computed from the codimension-one minors of the Alexander matrix.

    Its complement (as a subset of the real character sphere) is contained
    in the BNS invariant. The trivial direction {0} is always included.
    """
    mat = pres.alexander_matrix()
    n = mat.nvars
    size = mat.cols - 1
    if size <= 0:
        cone = SubspaceArrangement.empty(n)
    elif size > mat.rows:
        cone = SubspaceArrangement.full(n)
    else:
        cone = tau1_of_system(iter_minors(mat, size, minor_limit), n, support_limit)
    return cone.union(SubspaceArrangement(n, [RationalSubspace.zero(n)]))


def dwyer_fried_rank1(pres: GroupPresentation, nu: Sequence[int], **limits) -> bool:
    """Whether the Z-cover along the primitive class nu has finite first Betti number."""
    cone = bns_upper_bound(pres, **limits)
    nu = [int(x) for x in nu]
    if len(nu) != cone.dim_ambient:
        raise InputError(f"class must have {cone.dim_ambient} coordinates")
    if not any(nu):
        raise InputError("the zero class does not define a cover")
    g = 0
    for x in nu:
        g = gcd(g, x)
    if g != 1:
        raise InputError("the class must be primitive")
    return not cone.contains_vector(nu)


# ---------------------------------------------------------------------------
# coordinate loci and the product formula


Locus = tuple[frozenset, ...]  # maximal coordinate subsets W; () is the empty locus


def maximal_sets(sets: Iterable[frozenset]) -> Locus:
    uniq = set(frozenset(s) for s in sets)
    keep = [s for s in uniq if not any(s < t for t in uniq)]
    return tuple(sorted(keep, key=lambda s: (-len(s), sorted(map(str, s)))))


@dataclass(frozen=True)
class LocusFamily:
    """Coordinate-subtorus descriptions of V^i_1 for degrees 0..top over a vertex set."""

    vertices: frozenset
    degrees: Mapping[int, Locus]

    def locus(self, i: int) -> Locus:
        if i not in self.degrees:
            raise InputError(f"no locus recorded in degree {i}")
        return self.degrees[i]


def loci_product(a: LocusFamily, b: LocusFamily, i: int) -> Locus:
    """Degree-i locus of a product: union over p + q = i of products of factor loci."""
    if a.vertices & b.vertices:
        raise InputError("factor vertex sets must be disjoint")
    pieces = []
    for p in range(i + 1):
        for wa in a.locus(p):
            for wb in b.locus(i - p):
                pieces.append(wa | wb)
    return maximal_sets(pieces)

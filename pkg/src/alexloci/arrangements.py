"""Line arrangements: intersection lattices, Orlik-Solomon algebra in low degrees,
resonance components, group-theoretic classifiers, Milnor fibers and boundary manifolds.

Lines are indexed from 0 internally and from 1 in JSON and text output.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from sympy import isprime

from .alexinv import alexander_polynomial
from .errors import InputError
from .exactla import RationalSubspace, rank_q, solve_q
from .fixtures import near_pencil, pencil
from .jumploci import (CoverHomology, Character, character_depth_terms, cover_h1_snf, root_of_unity,
                       smallest_prime_with_roots)
from .laurent import LaurentPoly
from .presentations import GroupPresentation, Word
from .resonance import CupStructure, resonance_membership


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class IntersectionLattice:
    """Combinatorics of n lines: all intersection points and, for affine input, direction classes.

    ``points`` lists every intersection point as the set of lines through it
    (double points included). ``directions`` partitions the lines of an affine
    arrangement by direction; it is None for projective arrangements.
    """

    n: int
    points: tuple[frozenset, ...]
    directions: tuple[frozenset, ...] | None

    def __post_init__(self):
        if self.n < 1:
            raise InputError("an arrangement needs at least one line")
        seen: dict[frozenset, int] = {}
        for idx, pt in enumerate(self.points):
            if len(pt) < 2 or not all(0 <= i < self.n for i in pt):
                raise InputError("each point needs two or more valid lines")
            for pair in itertools.combinations(sorted(pt), 2):
                if frozenset(pair) in seen:
                    raise InputError(f"lines {pair[0] + 1} and {pair[1] + 1} meet in two points")
                seen[frozenset(pair)] = idx
        parallel = set()
        if self.directions is not None:
            covered = sorted(i for d in self.directions for i in d)
            if covered != list(range(self.n)):
                raise InputError("direction classes must partition the lines")
            for d in self.directions:
                for pair in itertools.combinations(sorted(d), 2):
                    if frozenset(pair) in seen:
                        raise InputError(f"parallel lines {pair[0] + 1} and {pair[1] + 1} cannot meet")
                    parallel.add(frozenset(pair))
        for pair in itertools.combinations(range(self.n), 2):
            if frozenset(pair) not in seen and frozenset(pair) not in parallel:
                raise InputError(f"lines {pair[0] + 1} and {pair[1] + 1} neither meet nor are parallel")

    @property
    def projective(self) -> bool:
        return self.directions is None

    @property
    def multiple_points(self) -> tuple[frozenset, ...]:
        return tuple(p for p in self.points if len(p) >= 3)

    @property
    def parallel_classes(self) -> tuple[frozenset, ...]:
        return tuple(d for d in (self.directions or ()) if len(d) >= 2)

    def is_parallel(self, i: int, j: int) -> bool:
        return any(i in d and j in d for d in self.parallel_classes)

    @classmethod
    def build(cls, n: int, multiple_points: Sequence[Sequence[int]] = (),
              parallel_classes: Sequence[Sequence[int]] = (), projective: bool = False) -> "IntersectionLattice":
        """From zero-based combinatorial data; double points are filled in."""
        pts = [frozenset(p) for p in multiple_points]
        if projective and parallel_classes:
            raise InputError("projective arrangements have no parallel lines")
        if projective:
            dirs = None
        else:
            classes = [frozenset(c) for c in parallel_classes]
            used = set().union(*classes) if classes else set()
            if sum(len(c) for c in classes) != len(used):
                raise InputError("parallel classes overlap")
            dirs = tuple(sorted(classes + [frozenset([i]) for i in range(n) if i not in used], key=min))
        covered = set()
        for p in pts:
            covered |= {frozenset(pr) for pr in itertools.combinations(p, 2)}
        par = set()
        for d in (dirs or ()):
            par |= {frozenset(pr) for pr in itertools.combinations(d, 2)}
        for pr in itertools.combinations(range(n), 2):
            f = frozenset(pr)
            if f not in covered and f not in par:
                pts.append(f)
        pts = sorted(set(pts), key=lambda p: sorted(p))
        return cls(n, tuple(pts), dirs)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "projective": self.projective,
            "multiple_points": [sorted(i + 1 for i in p) for p in self.multiple_points],
            "double_points": [sorted(i + 1 for i in p) for p in self.points if len(p) == 2],
            "parallel_classes": [sorted(i + 1 for i in d) for d in self.parallel_classes],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "IntersectionLattice":
        if "lines" in data:
            return LineArrangement(data["lines"], projective=bool(data.get("projective", False))).lattice()
        if "combinatorics" not in data:
            raise InputError("arrangement JSON needs 'lines' or 'combinatorics'")
        comb = data["combinatorics"]
        try:
            n = int(comb["n"])
            mps = [[int(i) - 1 for i in p] for p in comb.get("multiple_points", [])]
            pcs = [[int(i) - 1 for i in c] for c in comb.get("parallel_classes", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("combinatorics JSON needs n, multiple_points and parallel_classes") from exc
        for p in mps + pcs:
            if not all(0 <= i < n for i in p):
                raise InputError("line index out of range")
        return cls.build(n, mps, pcs, projective=bool(comb.get("projective", data.get("projective", False))))


class LineArrangement:
    """Lines a*z1 + b*z2 + c = 0 in C^2, or a*x + b*y + c*z = 0 in CP^2 when projective."""

    def __init__(self, lines: Sequence[Sequence], projective: bool = False):
        self.projective = projective
        self.lines = []
        for ln in lines:
            if len(ln) != 3:
                raise InputError("each line is given by three coefficients")
            a, b, c = (Fraction(x) for x in ln)
            if projective and a == b == c == 0:
                raise InputError("degenerate projective line")
            if not projective and a == b == 0:
                raise InputError("degenerate affine line (a = b = 0)")
            self.lines.append((a, b, c))
        normed = [self._normalize(ln) for ln in self.lines]
        if len(set(normed)) != len(normed):
            raise InputError("repeated line")

    @staticmethod
    def _normalize(v):
        lead = next(x for x in v if x)
        return tuple(x / lead for x in v)

    def lattice(self) -> IntersectionLattice:
        n = len(self.lines)
        if n == 0:
            raise InputError("an arrangement needs at least one line")
        groups: dict[tuple, set[int]] = {}
        directions: list[set[int]] = []
        for i, j in itertools.combinations(range(n), 2):
            a1, b1, c1 = self.lines[i]
            a2, b2, c2 = self.lines[j]
            if self.projective:
                pt = (b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2)
                key = self._normalize(pt)
            else:
                det = a1 * b2 - a2 * b1
                if det == 0:
                    for d in directions:
                        if i in d or j in d:
                            d.update((i, j))
                            break
                    else:
                        directions.append({i, j})
                    continue
                key = ((b1 * c2 - b2 * c1) / det, (a2 * c1 - a1 * c2) / det)
            groups.setdefault(key, set()).update((i, j))
        points = tuple(sorted((frozenset(g) for g in groups.values()), key=sorted))
        if self.projective:
            return IntersectionLattice(n, points, None)
        merged = _merge_classes(directions)
        used = set().union(*merged) if merged else set()
        dirs = tuple(sorted([frozenset(d) for d in merged] + [frozenset([i]) for i in range(n) if i not in used],
                            key=min))
        return IntersectionLattice(n, points, dirs)


def _merge_classes(classes: list[set[int]]) -> list[set[int]]:
    out: list[set[int]] = []
    for c in classes:
        c = set(c)
        for d in [d for d in out if d & c]:
            c |= d
            out.remove(d)
        out.append(c)
    return out


def intersection_lattice(arr: LineArrangement) -> IntersectionLattice:
    return arr.lattice()


def projective_closure(lat: IntersectionLattice) -> IntersectionLattice:
    """Add the line at infinity (index n); each direction class becomes a point on it."""
    if lat.projective:
        raise InputError("arrangement is already projective")
    inf = lat.n
    pts = list(lat.points) + [d | {inf} for d in lat.directions]
    return IntersectionLattice(lat.n + 1, tuple(sorted(pts, key=sorted)), None)


def decone(lat: IntersectionLattice, line: int | None = None) -> IntersectionLattice:
    """Send ``line`` (default: the last) to infinity; points on it become direction classes."""
    if not lat.projective:
        raise InputError("deconing needs a projective arrangement")
    h = lat.n - 1 if line is None else line
    if lat.n < 2:
        raise InputError("deconing needs at least two lines")
    relabel = {i: (i if i < h else i - 1) for i in range(lat.n) if i != h}
    pts, dirs = [], []
    for p in lat.points:
        if h in p:
            dirs.append(frozenset(relabel[i] for i in p if i != h))
        else:
            pts.append(frozenset(relabel[i] for i in p))
    return IntersectionLattice(lat.n - 1, tuple(sorted(pts, key=sorted)), tuple(sorted(dirs, key=min)))


def _affine(lat: IntersectionLattice) -> IntersectionLattice:
    return decone(lat) if lat.projective else lat


# ---------------------------------------------------------------------------
# Orlik-Solomon algebra in degrees <= 2


@dataclass(frozen=True)
class OSStructure:
    cup: CupStructure
    basis: tuple[tuple[int, int], ...]  # pairs (i, j) whose products form a basis of A^2

    @property
    def b2(self) -> int:
        return self.cup.b2


def os2_structure(lat: IntersectionLattice) -> OSStructure:
    """Degree-two Orlik-Solomon algebra as cup-product data.

    A^2 is Lambda^2 modulo e_i e_j for parallel pairs and (e_i - e_k)(e_j - e_k)
    for triples through a common point. The basis consists of products e_i e_j
    chosen greedily in lexicographic order.
    """
    lat = _affine(lat)
    n = lat.n
    pairs = list(itertools.combinations(range(n), 2))
    pidx = {p: k for k, p in enumerate(pairs)}
    rels = []
    for d in lat.parallel_classes:
        for p in itertools.combinations(sorted(d), 2):
            v = [0] * len(pairs)
            v[pidx[p]] = 1
            rels.append(v)
    for pt in lat.multiple_points:
        for i, j, k in itertools.combinations(sorted(pt), 3):
            v = [0] * len(pairs)
            v[pidx[(j, k)]] += 1
            v[pidx[(i, k)]] -= 1
            v[pidx[(i, j)]] += 1
            rels.append(v)
    base_rank = rank_q(rels) if rels else 0
    chosen: list[int] = []
    rows = [list(r) for r in rels]
    current = base_rank
    for k in range(len(pairs)):
        e = [0] * len(pairs)
        e[k] = 1
        r = rank_q(rows + [e])
        if r > current:
            rows.append(e)
            chosen.append(k)
            current = r
    b2 = len(chosen)
    # express every e_i e_j in the chosen basis modulo the relations
    gens = [[int(c == k) for c in range(len(pairs))] for k in chosen] + rels
    columns = [list(col) for col in zip(*gens)] if gens else [[] for _ in pairs]
    mu: dict[tuple[int, int, int], int] = {}
    for k, (i, j) in enumerate(pairs):
        if not gens:
            break
        target = [int(c == k) for c in range(len(pairs))]
        sol = solve_q(columns, target)
        if sol is None:
            raise AssertionError("Orlik-Solomon basis does not span")
        for slot in range(b2):
            c = sol[slot]
            if c:
                if c.denominator != 1:
                    raise AssertionError("non-integral Orlik-Solomon structure constant")
                mu[(i, j, slot)] = int(c)
    return OSStructure(CupStructure.build(n, b2, mu), tuple(pairs[k] for k in chosen))


# ---------------------------------------------------------------------------
# resonance components


@dataclass(frozen=True)
class ResonanceComponent:
    kind: str  # local, parallel or extra
    lines: tuple[int, ...]
    space: RationalSubspace
    verified: bool

    def to_json(self) -> dict:
        return {"kind": self.kind, "lines": [i + 1 for i in self.lines], "dim": self.space.dimension,
                "normals": [list(r) for r in self.space.normals], "verified": self.verified}


def local_component(lines: Sequence[int], n: int) -> RationalSubspace:
    lines = set(lines)
    normals = [[int(i in lines) for i in range(n)]]
    normals += [[int(k == i) for k in range(n)] for i in range(n) if i not in lines]
    return RationalSubspace.from_normals(normals, n)


def coordinate_component(lines: Sequence[int], n: int) -> RationalSubspace:
    lines = set(lines)
    return RationalSubspace.from_normals([[int(k == i) for k in range(n)] for i in range(n) if i not in lines], n)


def _random_point(space: RationalSubspace, rng: random.Random) -> list[int]:
    basis = space.basis()
    while True:
        coeffs = [rng.randint(-50, 50) for _ in basis]
        pt = [sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(space.dim_ambient)]
        if any(pt) or not basis:
            return pt


def verify_component(theta, space: RationalSubspace, rng: random.Random, samples: int = 2) -> bool:
    return all(resonance_membership(theta, _random_point(space, rng), 1).member for _ in range(samples))


def resonance_components(lat: IntersectionLattice, extra: Sequence[RationalSubspace] = (),
                         seed: int = 0) -> list[ResonanceComponent]:
    """Local components (points of multiplicity >= 3 and parallel classes) plus verified extras.

    A class of k >= 2 parallel lines meets the line at infinity in a point of
    multiplicity k + 1, which yields the k-dimensional coordinate component.
    """
    lat = _affine(lat)
    n = lat.n
    theta = os2_structure(lat).cup.theta()
    rng = random.Random(seed)
    out = []
    for pt in lat.multiple_points:
        sp = local_component(pt, n)
        out.append(ResonanceComponent("local", tuple(sorted(pt)), sp, verify_component(theta, sp, rng)))
    for d in lat.parallel_classes:
        sp = coordinate_component(d, n)
        out.append(ResonanceComponent("parallel", tuple(sorted(d)), sp, verify_component(theta, sp, rng)))
    for sp in extra:
        if sp.dim_ambient != n:
            raise InputError("extra subspace lives in the wrong dimension")
        out.append(ResonanceComponent("extra", (), sp, verify_component(theta, sp, rng)))
    return out


def partition_component(blocks: Sequence[Sequence[int]], n: int) -> RationalSubspace:
    """{x : x constant on each block's partner lines ...} for a neighbourly partition.

    ``blocks`` lists groups of lines that share a coordinate value; together
    with sum x = 0 this is the non-local component attached to the partition.
    """
    normals = [[1] * n]
    for b in blocks:
        b = list(b)
        for i in b[1:]:
            v = [0] * n
            v[b[0]] += 1
            v[i] -= 1
            normals.append(v)
    return RationalSubspace.from_normals(normals, n)


# ---------------------------------------------------------------------------
# classifiers


def multiplicity_graph(lat: IntersectionLattice) -> tuple[list[frozenset], list[tuple[int, int]]]:
    """Vertices: points of multiplicity >= 3 of the projective closure; edges join
    consecutive such points along each line. The forest test does not depend on
    the order of points along a line, so points are taken in sorted order."""
    proj = lat if lat.projective else projective_closure(lat)
    verts = list(proj.multiple_points)
    edges = []
    for line in range(proj.n):
        on = [k for k, p in enumerate(verts) if line in p]
        edges.extend(zip(on, on[1:]))
    return verts, edges


def _is_forest(nv: int, edges: Sequence[tuple[int, int]]) -> bool:
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


@dataclass(frozen=True)
class ArrangementClass:
    type_am: tuple[int, ...] | None
    free_group: bool
    kahler_group: bool
    raag: bool

    def to_json(self) -> dict:
        return {"type_Am": list(self.type_am) if self.type_am is not None else None,
                "free_group": self.free_group, "kahler_group": self.kahler_group, "raag": self.raag}


def arr_classify(lat: IntersectionLattice) -> ArrangementClass:
    lat = _affine(lat)
    only_double = not lat.multiple_points
    dirs = lat.directions
    type_am = tuple(sorted((len(d) for d in dirs), reverse=True)) if only_double else None
    free = len(dirs) == 1
    general = only_double and not lat.parallel_classes
    kahler = general and lat.n % 2 == 0
    verts, edges = multiplicity_graph(lat)
    return ArrangementClass(type_am, free, kahler, _is_forest(len(verts), edges))


def is_pencil(lat: IntersectionLattice) -> bool:
    return lat.n >= 2 and any(len(p) == lat.n for p in lat.points)


def is_near_pencil_affine(lat: IntersectionLattice) -> int | None:
    """Index of the transverse line when the lattice is of type A(n-1, 1)."""
    if lat.projective or lat.n < 3 or lat.multiple_points:
        return None
    big = [d for d in lat.directions if len(d) == lat.n - 1]
    if len(lat.directions) == 2 and big:
        return next(iter(next(d for d in lat.directions if len(d) == 1)))
    return None


@dataclass(frozen=True)
class ArrangementAlexander:
    kind: str  # pencil, near_pencil or constant
    delta: LaurentPoly | None
    cross_checked: bool

    def to_json(self) -> dict:
        return {"kind": self.kind, "delta": str(self.delta) if self.delta is not None else None,
                "cross_checked": self.cross_checked}


def arr_alex_poly(lat: IntersectionLattice, cross_check: bool = True) -> ArrangementAlexander:
    lat = _affine(lat)
    n = lat.n
    if n >= 3 and is_pencil(lat) and not lat.parallel_classes:
        t = LaurentPoly.monomial([1] * n)
        delta = ((t - 1) ** (n - 2)).normalize()
        ok = alexander_polynomial(pencil(n)) == delta if cross_check else False
        if cross_check and not ok:
            raise AssertionError("pencil Alexander polynomial disagrees with its presentation")
        return ArrangementAlexander("pencil", delta, ok)
    k = is_near_pencil_affine(lat)
    if k is not None:
        e = [0] * n
        e[k] = 1
        delta = ((LaurentPoly.monomial(e) - 1) ** (n - 2)).normalize()
        ok = False
        if cross_check:
            # the built-in presentation puts the transverse line last
            ref = alexander_polynomial(near_pencil(n))
            order = [i for i in range(n) if i != k] + [k]
            moved = LaurentPoly(n, {tuple(_place(u, order)): c for u, c in ref.terms.items()})
            ok = moved == delta
            if not ok:
                raise AssertionError("A(n-1,1) Alexander polynomial disagrees with its presentation")
        return ArrangementAlexander("near_pencil", delta, ok)
    return ArrangementAlexander("constant", None, False)


def _place(u: Sequence[int], order: Sequence[int]) -> list[int]:
    out = [0] * len(u)
    for pos, line in enumerate(order):
        out[line] = u[pos]
    return out


# ---------------------------------------------------------------------------
# Milnor fibers


@dataclass(frozen=True)
class MilnorResult:
    b1: int
    degree: int
    prime: int
    terms: tuple[tuple[int, int, int], ...]  # (e, phi(e), depth sum over characters of order e)
    h1: CoverHomology | None = None

    def to_json(self) -> dict:
        out = {"b1": self.b1, "degree": self.degree, "prime": self.prime,
               "terms": [{"e": e, "phi": f, "depth_sum": d} for e, f, d in self.terms]}
        if self.h1 is not None:
            out["h1_snf"] = self.h1.to_json()
        return out


def milnor_b1(pres: GroupPresentation, multiplicities: Sequence[int] | None = None,
              degrees: Sequence[int] | None = None, prime: int | None = None,
              append_relator: bool = True, with_snf: bool = False) -> MilnorResult:
    """First Betti number of the Milnor fiber of a homogeneous polynomial prod f_i^{a_i}.

    ``pres`` presents the complement in C^{l+1} with one meridian generator per
    factor, in order. The projectivised complement is obtained by appending
    the relator g_1^{n_1}...g_s^{n_s} (n_i = deg f_i); the monodromy character
    sends g_i to zeta^{a_i} for a primitive root of unity of order sum a_i n_i,
    and b1(F) = (s - 1) + the depths of its nontrivial powers.
    """
    s = pres.ngens
    a = [1] * s if multiplicities is None else [int(x) for x in multiplicities]
    nd = [1] * s if degrees is None else [int(x) for x in degrees]
    if len(a) != s or len(nd) != s:
        raise InputError("one multiplicity and one degree per meridian are required")
    if any(x < 1 for x in a + nd):
        raise InputError("multiplicities and degrees must be positive")
    n = sum(x * y for x, y in zip(a, nd))
    g = 0
    for x in a:
        g = gcd(g, x)
    if g != 1:
        raise InputError("the multiplicities must be coprime (reduced monodromy)")
    if prime is None:
        prime = smallest_prime_with_roots(n)
    if (prime - 1) % n or n % prime == 0 or not isprime(prime):
        raise InputError(f"need a prime p with {n} | p - 1")
    pu = pres
    if append_relator:
        pu = pres.with_relators([Word.from_syllables([(i, nd[i]) for i in range(s)])])
    zeta = root_of_unity(n, prime)
    rho = Character(prime, tuple(pow(zeta, ai, prime) for ai in a))
    terms = character_depth_terms(pu, rho, n)
    b1 = (s - 1) + sum(d for _, _, d in terms)
    h1 = cover_h1_snf(pu, a, n) if with_snf else None
    return MilnorResult(b1, n, prime, tuple(terms), h1)


def arrangement_presentation(lat: IntersectionLattice) -> GroupPresentation:
    """Presentations for the arrangement types with closed-form groups."""
    lat = _affine(lat)
    n = lat.n
    if is_pencil(lat) and not lat.parallel_classes:
        return pencil(n)
    k = is_near_pencil_affine(lat)
    if k is not None and k == n - 1:
        return near_pencil(n)
    if not lat.multiple_points:
        # type A(m): a product of free groups, one factor per direction class
        names = [f"x{i + 1}" for i in range(n)]
        rels = []
        for d1, d2 in itertools.combinations(lat.directions, 2):
            for i in sorted(d1):
                for j in sorted(d2):
                    a, b = sorted((i, j))
                    rels.append(Word.generator(a) * Word.generator(b) * Word.generator(a, -1) * Word.generator(b, -1))
        return GroupPresentation(names, rels)
    raise InputError("no built-in presentation for this arrangement")


# ---------------------------------------------------------------------------
# boundary manifolds


@dataclass(frozen=True)
class BoundaryInvariants:
    n_lines: int
    vertices: tuple[tuple[str, tuple[int, ...]], ...]  # ("line", (i,)) or ("point", J)
    edges: tuple[tuple[int, int], ...]
    degrees: tuple[int, ...]
    essential: bool
    delta: LaurentPoly | None
    v1: tuple[LaurentPoly, ...]
    r1: str
    manifold: str | None

    def to_json(self) -> dict:
        return {
            "vertices": [{"kind": k, "lines": [i + 1 for i in ls], "degree": m}
                         for (k, ls), m in zip(self.vertices, self.degrees)],
            "edges": [list(e) for e in self.edges],
            "essential": self.essential,
            "delta": str(self.delta) if self.delta is not None else None,
            "v1": [f"{f} = 0" for f in self.v1],
            "r1": self.r1,
            "manifold": self.manifold,
        }


def _boundary_kind(lat: IntersectionLattice) -> str:
    big = max((len(p) for p in lat.points), default=0)
    if big == lat.n:
        return "pencil"
    if big == lat.n - 1 and lat.n >= 3:
        return "near_pencil"
    return "other"


def boundary_invariants(lat: IntersectionLattice) -> BoundaryInvariants:
    """Graph-manifold data for the boundary of a neighbourhood of a projective line arrangement.

    Variables t1..t_N stand for the N lines (formal meridian classes); an
    exceptional vertex v_J carries the product of the t_j, j in J.
    """
    if not lat.projective:
        lat = projective_closure(lat)
    n_lines = lat.n
    vertices: list[tuple[str, tuple[int, ...]]] = [("line", (i,)) for i in range(n_lines)]
    multi = [tuple(sorted(p)) for p in lat.multiple_points]
    vertices += [("point", J) for J in multi]
    edges = []
    for p in lat.points:
        if len(p) == 2:
            i, j = sorted(p)
            edges.append((i, j))
    for k, J in enumerate(multi):
        for i in J:
            edges.append((n_lines + k, i))
    deg = [0] * len(vertices)
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    kind = _boundary_kind(lat)
    essential = kind != "pencil"

    def tv(v: int) -> LaurentPoly:
        e = [0] * n_lines
        for i in vertices[v][1]:
            e[i] = 1
        return LaurentPoly.monomial(e)

    delta = None
    if essential:
        delta = LaurentPoly.constant(1, n_lines)
        for v, m in enumerate(deg):
            if m - 2 < 0:
                raise AssertionError("essential arrangement with a vertex of degree < 2")
            delta = delta * (tv(v) - 1) ** (m - 2)
        delta = delta.normalize()
    v1 = tuple(tv(v) - 1 for v, m in enumerate(deg) if m >= 3)
    nn = n_lines - 1
    r1 = {"pencil": f"C^{nn}", "near_pencil": f"C^{2 * (nn - 1)}"}.get(kind, "H^1")
    manifold = {"pencil": f"#^{nn} S^1 x S^2", "near_pencil": f"S^1 x Sigma_{nn - 1}"}.get(kind)
    return BoundaryInvariants(n_lines, tuple(vertices), tuple(edges), tuple(deg), essential, delta, v1, r1, manifold)

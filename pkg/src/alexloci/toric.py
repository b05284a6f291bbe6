"""Toric complexes and right-angled Artin groups: jump loci from links of simplices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Mapping, Sequence

from .alexinv import alexander_polynomial
from .errors import CapExceeded, InputError, cap
from .exactla import RationalSubspace, SubspaceArrangement, rank_mod_p, rank_q, smith_normal_form
from .laurent import LaurentPoly
from .presentations import GroupPresentation, Word, commutator
from .tcone import Locus, maximal_sets

Face = frozenset


def _sorted(labels: Iterable) -> list:
    try:
        return sorted(labels)
    except TypeError:
        return sorted(labels, key=repr)


class SimplicialComplex:
    """A finite simplicial complex on a vertex set, closed under taking faces.

    ``facets=[]`` gives the complex {∅}; ``void=True`` gives the complex with no faces.
    """

    def __init__(self, vertices: Iterable[Hashable], facets: Iterable[Iterable[Hashable]] = (),
                 void: bool = False):
        self.vertices = tuple(_sorted(set(vertices)))
        vset = set(self.vertices)
        faces: set[Face] = set()
        if not void:
            faces.add(frozenset())
            for f in facets:
                f = frozenset(f)
                if not f <= vset:
                    raise InputError(f"facet {sorted(map(str, f))} uses vertices outside the vertex set")
                for k in range(1, len(f) + 1):
                    faces.update(frozenset(c) for c in itertools.combinations(f, k))
        self.faces: frozenset[Face] = frozenset(faces)
        self.void = void

    @classmethod
    def from_faces(cls, vertices: Iterable[Hashable], faces: Iterable[Face]) -> "SimplicialComplex":
        obj = cls.__new__(cls)
        obj.vertices = tuple(_sorted(set(vertices)))
        obj.faces = frozenset(faces)
        obj.void = not obj.faces
        return obj

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.faces == other.faces and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.vertices, self.faces))

    def __repr__(self) -> str:
        return f"SimplicialComplex({list(self.vertices)}, facets={[sorted(map(str, f)) for f in self.facets()]})"

    def facets(self) -> list[Face]:
        return [f for f in self.faces if not any(f < g for g in self.faces)]

    def dimension(self) -> int:
        return max((len(f) for f in self.faces), default=0) - 1

    def induced(self, w: Iterable[Hashable]) -> "SimplicialComplex":
        w = frozenset(w)
        return SimplicialComplex.from_faces(w, [f for f in self.faces if f <= w])

    def link_in(self, sigma: Face, w: Iterable[Hashable]) -> "SimplicialComplex":
        """{tau ⊆ W : tau ∪ sigma is a face}, for sigma disjoint from W."""
        w = frozenset(w)
        return SimplicialComplex.from_faces(w, [f - sigma for f in self.faces if sigma <= f and (f - sigma) <= w])

    def link(self, sigma: Face) -> "SimplicialComplex":
        return self.link_in(frozenset(sigma), frozenset(self.vertices) - frozenset(sigma))

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "facets": [_sorted(f) for f in sorted(self.facets(), key=lambda f: (len(f), _sorted(map(repr, f))))]}

    @classmethod
    def from_json(cls, data: Mapping) -> "SimplicialComplex":
        try:
            return cls(data["vertices"], data.get("facets", []))
        except (KeyError, TypeError) as exc:
            raise InputError("complex JSON needs 'vertices' and 'facets'") from exc


def join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    if set(a.vertices) & set(b.vertices):
        raise InputError("join needs disjoint vertex sets")
    return SimplicialComplex.from_faces(a.vertices + b.vertices, [f | g for f in a.faces for g in b.faces])


def full_simplex(vertices: Iterable[Hashable]) -> SimplicialComplex:
    v = list(vertices)
    return SimplicialComplex(v, [v] if v else [])


def discrete(vertices: Iterable[Hashable]) -> SimplicialComplex:
    v = list(vertices)
    return SimplicialComplex(v, [[x] for x in v])


# ---------------------------------------------------------------------------
# homology


def _boundary(faces: frozenset, k: int) -> tuple[list[list[int]], int]:
    """Matrix of d_k : C_k -> C_{k-1} with one row per k-face; also returns dim C_{k-1}."""
    top = sorted((sorted(f, key=repr) for f in faces if len(f) == k + 1), key=lambda f: [repr(x) for x in f])
    low = sorted((sorted(f, key=repr) for f in faces if len(f) == k), key=lambda f: [repr(x) for x in f])
    index = {frozenset(f): i for i, f in enumerate(low)}
    rows = []
    for f in top:
        row = [0] * len(low)
        for j in range(len(f)):
            row[index[frozenset(f[:j] + f[j + 1:])]] += -1 if j % 2 else 1
        rows.append(row)
    return rows, len(low)


@lru_cache(maxsize=200_000)
def _reduced(faces: frozenset, i: int, prime: int | None) -> tuple[int, tuple[int, ...]]:
    if i < -1 or not faces:
        return 0, ()
    n_i = sum(1 for f in faces if len(f) == i + 1)
    if n_i == 0:
        return 0, ()

    def rank(mat, ncols):
        if not mat or not ncols:
            return 0
        return rank_q(mat) if prime in (None, 0) else rank_mod_p(mat, prime)

    d_i, ncols_i = _boundary(faces, i) if i >= 0 else ([], 0)
    d_up, _ = _boundary(faces, i + 1)
    r_i = rank(d_i, ncols_i)
    if prime == 0:  # integral
        snf = smith_normal_form(d_up, ncols=n_i) if d_up else None
        r_up = snf.rank if snf else 0
        torsion = tuple(d for d in snf.factors if d > 1) if snf else ()
        return n_i - r_i - r_up, torsion
    r_up = rank(d_up, n_i)
    return n_i - r_i - r_up, ()


def reduced_homology(k: SimplicialComplex, i: int, prime: int | None = None,
                     integral: bool = False) -> int | tuple[int, tuple[int, ...]]:
    """Reduced homology in degree i.

    Returns the dimension over Q (default) or F_prime; with ``integral`` the
    pair (rank, torsion coefficients) of the integral group.
    """
    if integral:
        return _reduced(k.faces, i, 0)
    return _reduced(k.faces, i, prime)[0]


# ---------------------------------------------------------------------------
# toric jump loci


def _check_size(vertices: Sequence) -> None:
    limit = cap("vertices")
    if len(vertices) > limit:
        raise CapExceeded(f"{len(vertices)} vertices exceed the cap of {limit}")


def toric_depth_count(l: SimplicialComplex, w: frozenset, i: int, prime: int | None = None) -> int:
    """sum over faces sigma of L outside W of dim H~_{i-1-|sigma|}(lk_{L_W}(sigma))."""
    rest = frozenset(l.vertices) - w
    total = 0
    for sigma in l.faces:
        if sigma <= rest:
            total += reduced_homology(l.link_in(sigma, w), i - 1 - len(sigma), prime)
    return total


def toric_jump_loci(l: SimplicialComplex, i: int, d: int = 1, prime: int | None = None) -> Locus:
    """Maximal W whose coordinate subtorus lies in V^i_d of the toric complex of L.

    The same sets describe the resonance variety R^i_d as coordinate subspaces.
    """
    _check_size(l.vertices)
    if d < 1:
        raise InputError("depth must be at least 1")
    hits = []
    verts = l.vertices
    for r in range(len(verts) + 1):
        for w in itertools.combinations(verts, r):
            w = frozenset(w)
            if toric_depth_count(l, w, i, prime) >= d:
                hits.append(w)
    return maximal_sets(hits)


def coordinate_arrangement(locus: Locus, vertices: Sequence) -> SubspaceArrangement:
    """Coordinate subspaces spanned by each W, in the ordering of ``vertices``."""
    n = len(vertices)
    spaces = []
    for w in locus:
        normals = [[int(k == idx) for k in range(n)] for idx, v in enumerate(vertices) if v not in w]
        spaces.append(RationalSubspace.from_normals(normals, n))
    return SubspaceArrangement(n, spaces)


# ---------------------------------------------------------------------------
# graphs and right-angled Artin groups


class Graph:
    def __init__(self, vertices: Iterable[Hashable], edges: Iterable[Iterable[Hashable]] = ()):
        self.vertices = tuple(_sorted(set(vertices)))
        vset = set(self.vertices)
        es = set()
        for e in edges:
            e = tuple(e)
            if len(e) != 2 or e[0] == e[1]:
                raise InputError(f"invalid edge {e}")
            if not set(e) <= vset:
                raise InputError(f"edge {e} uses an unknown vertex")
            es.add(frozenset(e))
        self.edges = frozenset(es)

    @classmethod
    def from_json(cls, data: Mapping) -> "Graph":
        try:
            return cls(data["vertices"], data.get("edges", []))
        except (KeyError, TypeError) as exc:
            raise InputError("graph JSON needs 'vertices' and 'edges'") from exc

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": sorted(_sorted(e) for e in self.edges)}

    def adjacent(self, u, v) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbours(self, v) -> set:
        return {u for u in self.vertices if self.adjacent(u, v)}

    def induced(self, w: Iterable[Hashable]) -> "Graph":
        w = set(w)
        return Graph(w, [tuple(e) for e in self.edges if e <= w])

    def complement(self) -> "Graph":
        return Graph(self.vertices, [(u, v) for u, v in itertools.combinations(self.vertices, 2)
                                     if not self.adjacent(u, v)])

    def components(self) -> list[frozenset]:
        seen: set = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            stack, comp = [v], {v}
            while stack:
                x = stack.pop()
                for y in self.neighbours(x):
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def cliques(self) -> list[frozenset]:
        out = [frozenset()]

        def grow(clique: list, candidates: list):
            for idx, v in enumerate(candidates):
                new = clique + [v]
                out.append(frozenset(new))
                grow(new, [u for u in candidates[idx + 1:] if self.adjacent(u, v)])

        grow([], list(self.vertices))
        return out

    def flag_complex(self) -> SimplicialComplex:
        return SimplicialComplex.from_faces(self.vertices, self.cliques())


def complete_graph(n: int) -> Graph:
    v = list(range(1, n + 1))
    return Graph(v, itertools.combinations(v, 2))


def path_graph(n: int) -> Graph:
    v = list(range(1, n + 1))
    return Graph(v, [(i, i + 1) for i in range(1, n)])


def complete_multipartite(*sizes: int) -> Graph:
    parts, start = [], 1
    for s in sizes:
        parts.append(list(range(start, start + s)))
        start += s
    v = [x for p in parts for x in p]
    edges = [(a, b) for p, q in itertools.combinations(parts, 2) for a in p for b in q]
    return Graph(v, edges)


def raag_v1(graph: Graph) -> Locus:
    """Maximal W (|W| >= 2) with disconnected induced subgraph: the positive-dimensional part of V_1.

    The trivial character also lies in V_1 whenever there is a vertex; see raag_v1_contains.
    """
    _check_size(graph.vertices)
    hits = []
    for r in range(2, len(graph.vertices) + 1):
        for w in itertools.combinations(graph.vertices, r):
            if not graph.induced(w).is_connected():
                hits.append(frozenset(w))
    return maximal_sets(hits)


def raag_v1_contains(graph: Graph, values: Sequence[int]) -> bool:
    """Membership of the character with the given vertex values (in vertex order) in V_1."""
    if len(values) != len(graph.vertices):
        raise InputError("one value per vertex is required")
    trivial = all(x == 1 for x in values)
    return (trivial and bool(graph.vertices)) or in_coordinate_locus(raag_v1(graph), graph.vertices, values)


def in_coordinate_locus(locus: Locus, vertices: Sequence, values: Sequence[int]) -> bool:
    """Whether the character with the given values (indexed like ``vertices``) lies on the locus."""
    support = frozenset(v for v, x in zip(vertices, values) if x != 1)
    return any(support <= w for w in locus)


def raag_presentation(graph: Graph) -> GroupPresentation:
    """One generator x<v> per vertex and a commutator relator per edge."""
    names = [f"x{v}" for v in graph.vertices]
    index = {v: i for i, v in enumerate(graph.vertices)}
    rels = []
    for e in sorted(graph.edges, key=lambda e: sorted(index[v] for v in e)):
        a, b = sorted(index[v] for v in e)
        rels.append(commutator(Word.generator(a), Word.generator(b)))
    return GroupPresentation(names, rels)


def vertex_connectivity(graph: Graph) -> int:
    """Largest r such that removing fewer than r vertices leaves a connected graph (at most n - 1)."""
    n = len(graph.vertices)
    if n <= 1:
        return 0
    for r in range(0, n - 1):
        for cut in itertools.combinations(graph.vertices, r):
            rest = [v for v in graph.vertices if v not in cut]
            if not graph.induced(rest).is_connected():
                return r
    return n - 1


@dataclass(frozen=True)
class DeltaStatus:
    connectivity: int
    delta: LaurentPoly
    predicted_nonconstant: bool
    delta_nonconstant: bool

    @property
    def agreement(self) -> bool:
        return self.predicted_nonconstant == self.delta_nonconstant

    def to_json(self) -> dict:
        return {"connectivity": self.connectivity, "delta": str(self.delta),
                "predicted_nonconstant": self.predicted_nonconstant,
                "delta_nonconstant": self.delta_nonconstant, "agreement": self.agreement}


def raag_delta_status(graph: Graph) -> DeltaStatus:
    """Alexander polynomial of the RAAG against the prediction 'nonconstant iff connectivity 1'."""
    kappa = vertex_connectivity(graph)
    delta = alexander_polynomial(raag_presentation(graph))
    return DeltaStatus(kappa, delta, kappa == 1, not delta.is_associate_of_constant())


@dataclass(frozen=True)
class SigmaComplement:
    arrangement: SubspaceArrangement
    torsion_condition: bool
    vertices: tuple

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "torsion_condition": self.torsion_condition,
                "components": self.arrangement.to_json()}


def torsion_condition(l: SimplicialComplex, q: int) -> bool:
    """Integral homology of every lk_{L_W}(sigma) torsion-free up to degree q - dim(sigma) - 2."""
    verts = frozenset(l.vertices)
    for sigma in l.faces:
        top = q - (len(sigma) - 1) - 2
        if top < 0:
            continue
        rest = verts - sigma
        for r in range(len(rest) + 1):
            for w in itertools.combinations(sorted(rest, key=repr), r):
                lk = l.link_in(sigma, w)
                for j in range(0, top + 1):
                    if reduced_homology(lk, j, integral=True)[1]:
                        return False
    return True


def raag_sigma_complement(graph: Graph, q: int) -> SigmaComplement:
    """Union of the coordinate subspaces of R^i_1, i <= q, for the flag complex of the graph.

    When ``torsion_condition`` holds, this union is the complement of the
    q-th Bieri-Neumann-Strebel-Renz invariant.
    """
    if q < 0:
        raise InputError("degree must be non-negative")
    l = graph.flag_complex()
    pieces: list[frozenset] = []
    for i in range(q + 1):
        pieces.extend(toric_jump_loci(l, i, 1))
    arr = coordinate_arrangement(maximal_sets(pieces), graph.vertices)
    return SigmaComplement(arr, torsion_condition(l, q), graph.vertices)


@dataclass(frozen=True)
class RaagClassification:
    quasi_kahler: bool
    kahler: bool
    partition: tuple[tuple, ...] | None

    def to_json(self) -> dict:
        return {"quasi_kahler": self.quasi_kahler, "kahler": self.kahler,
                "partition": [list(p) for p in self.partition] if self.partition else None}


def raag_classify(graph: Graph) -> RaagClassification:
    """Quasi-Kahler iff complete multipartite (a product of free groups); Kahler iff K_{2m}."""
    comp = graph.complement()
    parts = comp.components()
    multipartite = all(len(comp.induced(p).edges) == len(p) * (len(p) - 1) // 2 for p in parts)
    n = len(graph.vertices)
    complete = len(graph.edges) == n * (n - 1) // 2
    partition = tuple(sorted((tuple(_sorted(p)) for p in parts), key=lambda p: (-len(p), repr(p)))) \
        if multipartite else None
    return RaagClassification(multipartite, complete and n > 0 and n % 2 == 0, partition)

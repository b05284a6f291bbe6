import itertools
from math import comb

import pytest

from alexloci.errors import InputError
from alexloci.toric import (Graph, SimplicialComplex, complete_graph, complete_multipartite, discrete,
                            full_simplex, in_coordinate_locus, join, path_graph, raag_classify,
                            raag_delta_status, raag_sigma_complement, raag_v1, raag_v1_contains, reduced_homology,
                            toric_jump_loci, vertex_connectivity)


def test_reduced_homology():
    rp2 = SimplicialComplex(range(1, 7), [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
                                          [2, 3, 5], [2, 4, 5], [2, 4, 6], [3, 4, 6], [3, 5, 6]])
    assert reduced_homology(rp2, 1, integral=True) == (0, (2,))
    assert reduced_homology(rp2, 1, prime=2) == 1
    assert reduced_homology(rp2, 1) == 0
    assert reduced_homology(SimplicialComplex([], []), -1) == 1
    assert reduced_homology(SimplicialComplex([], void=True), -1) == 0
    circle = SimplicialComplex([1, 2, 3], [[1, 2], [2, 3], [1, 3]])
    assert reduced_homology(circle, 1) == 1 and reduced_homology(circle, 0) == 0


@pytest.mark.parametrize("n", range(1, 5))
def test_torus_closed_form(n):
    l = full_simplex(range(n))
    for i in range(4):
        for d in range(1, comb(n, i) + 2):
            locus = toric_jump_loci(l, i, d)
            assert (locus == (frozenset(),)) == (d <= comb(n, i))
            assert locus in ((frozenset(),), ())


@pytest.mark.parametrize("n", range(2, 5))
def test_wedge_closed_form(n):
    l = discrete(range(n))
    for d in range(1, n + 1):
        assert (toric_jump_loci(l, 1, d) == (frozenset(range(n)),)) == (d <= n - 1)


def test_join_is_product():
    a, b = discrete(["a", "b"]), discrete(["c", "d"])
    j = join(a, b)
    assert toric_jump_loci(j, 1, 1) == tuple(sorted([frozenset("ab"), frozenset("cd")], key=sorted))
    with pytest.raises(InputError):
        join(a, a)


def test_link_and_json():
    l = full_simplex([1, 2, 3])
    assert l.link(frozenset([1])) == full_simplex([2, 3])
    assert SimplicialComplex.from_json(l.to_json()) == l


def test_raag_v1():
    assert raag_v1(path_graph(3)) == (frozenset({1, 3}),)
    assert raag_v1(complete_graph(4)) == ()
    assert raag_v1_contains(complete_graph(4), (1, 1, 1, 1))
    assert not raag_v1_contains(complete_graph(4), (2, 1, 1, 1))
    assert raag_v1(discrete_graph(3)) == (frozenset({1, 2, 3}),)
    assert in_coordinate_locus(raag_v1(path_graph(3)), (1, 2, 3), (4, 1, 2))
    assert not in_coordinate_locus(raag_v1(path_graph(3)), (1, 2, 3), (4, 3, 2))
    assert not in_coordinate_locus(raag_v1(complete_graph(3)), (1, 2, 3), (1, 1, 1))


def discrete_graph(n):
    return Graph(range(1, n + 1))


def test_connectivity():
    assert vertex_connectivity(path_graph(3)) == 1
    assert vertex_connectivity(complete_graph(4)) == 3
    assert vertex_connectivity(Graph([1])) == 0
    assert vertex_connectivity(discrete_graph(2)) == 0
    assert vertex_connectivity(complete_multipartite(2, 3)) == 2


def test_delta_status():
    s = raag_delta_status(path_graph(3))
    assert s.connectivity == 1 and str(s.delta) == "t2 - 1" and s.agreement
    assert not raag_delta_status(complete_graph(4)).delta_nonconstant


def test_delta_nonconstant_iff_cut_vertex():
    # K_2 has connectivity 1 but no cut vertex, and its group Z^2 has constant Delta
    k2 = raag_delta_status(complete_graph(2))
    assert k2.connectivity == 1 and not k2.delta_nonconstant and not k2.agreement
    for graph in (path_graph(3), path_graph(4), complete_graph(3), complete_multipartite(2, 3)):
        cut = any(not graph.induced([w for w in graph.vertices if w != v]).is_connected()
                  for v in graph.vertices)
        assert raag_delta_status(graph).delta_nonconstant == cut


def test_sigma_complement():
    assert raag_sigma_complement(discrete_graph(2), 1).arrangement.to_json() == \
        [{"ambient_dim": 2, "dim": 2, "normals": []}]
    k2 = raag_sigma_complement(complete_graph(2), 1)
    assert [s.dimension for s in k2.arrangement] == [0]
    k23 = raag_sigma_complement(complete_multipartite(2, 3), 1)
    assert sorted(s.dimension for s in k23.arrangement) == [2, 3] and k23.torsion_condition


def test_classifier():
    assert raag_classify(complete_multipartite(2, 3)).quasi_kahler
    assert not raag_classify(complete_multipartite(2, 3)).kahler
    assert raag_classify(complete_graph(4)).kahler
    assert raag_classify(path_graph(3)).quasi_kahler
    assert not raag_classify(path_graph(4)).quasi_kahler
    assert not raag_classify(complete_graph(3)).kahler


def test_graph_json():
    g = path_graph(3)
    assert Graph.from_json(g.to_json()).edges == g.edges
    with pytest.raises(InputError):
        Graph([1, 2], [(1, 3)])
    with pytest.raises(InputError):
        Graph([1], [(1, 1)])


def test_flag_complex_of_triangle_is_filled():
    assert complete_graph(3).flag_complex() == full_simplex([1, 2, 3])
    assert all(len(f) <= 2 for f in itertools.chain(path_graph(4).flag_complex().faces))

import itertools

import pytest

from alexloci import fixtures
from alexloci.alexinv import alexander_polynomial
from alexloci.arrangements import (IntersectionLattice, LineArrangement, arr_alex_poly, arr_classify,
                                   arrangement_presentation, boundary_invariants, decone, milnor_b1,
                                   os2_structure, partition_component, projective_closure,
                                   resonance_components)
from alexloci.errors import InputError
from alexloci.exactla import RationalSubspace
from alexloci.jumploci import cover_betti_depth
from alexloci.laurent import parse_laurent
from alexloci.presentations import Word

BRAID_SECTION = IntersectionLattice.build(6, [[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]])
# z1 = z2, z1 = 0, z2 = 0, z1 = 1, z2 = 1
FIVE_LINES = LineArrangement([(1, -1, 0), (1, 0, 0), (0, 1, 0), (1, 0, -1), (0, 1, -1)])


def generic(n):
    return LineArrangement([(1, k, k * k) for k in range(n)]).lattice()


def pencil_lines(n):
    return LineArrangement([(1, k, 0) for k in range(n)]).lattice()


def parallel(n):
    return LineArrangement([(1, 0, k) for k in range(n)]).lattice()


def near_pencil_lines(n):
    return LineArrangement([(1, 0, k) for k in range(n - 1)] + [(0, 1, 0)]).lattice()


def test_lattice_from_equations():
    lat = generic(3)
    assert len(lat.points) == 3 and not lat.multiple_points and not lat.parallel_classes
    assert pencil_lines(4).multiple_points == (frozenset(range(4)),)
    assert parallel(3).parallel_classes == (frozenset(range(3)),)
    five = FIVE_LINES.lattice()
    assert five.multiple_points == (frozenset({0, 1, 2}), frozenset({0, 3, 4}))
    assert five.parallel_classes == (frozenset({1, 3}), frozenset({2, 4}))


def test_lattice_json_round_trip():
    data = {"combinatorics": {"n": 6, "multiple_points": [[1, 2, 4], [1, 3, 5], [2, 3, 6], [4, 5, 6]],
                              "parallel_classes": []}}
    lat = IntersectionLattice.from_json(data)
    assert lat == BRAID_SECTION
    again = lat.to_json()
    assert IntersectionLattice.from_json({"combinatorics": again}) == lat


def test_lattice_errors():
    with pytest.raises(InputError):
        LineArrangement([(1, 0, 0), (2, 0, 0)])
    with pytest.raises(InputError):
        LineArrangement([(0, 0, 1)])
    with pytest.raises(InputError):
        IntersectionLattice.build(3, [[0, 1, 2], [0, 1]])
    with pytest.raises(InputError):
        IntersectionLattice.from_json({"combinatorics": {"n": 2, "multiple_points": [[1, 3]]}})


def test_projective_closure_and_decone():
    five = FIVE_LINES.lattice()
    closed = projective_closure(five)
    assert closed.n == 6 and len(closed.multiple_points) == 4
    assert decone(closed) == five


def test_os2_dimensions():
    assert os2_structure(generic(2)).b2 == 1
    assert os2_structure(pencil_lines(3)).b2 == 2
    assert os2_structure(parallel(4)).b2 == 0
    assert os2_structure(BRAID_SECTION).b2 == 11
    # b2 = sum over points of (multiplicity - 1)
    for lat in (generic(5), FIVE_LINES.lattice(), near_pencil_lines(5)):
        assert os2_structure(lat).b2 == sum(len(p) - 1 for p in lat.points)


def test_os2_is_graded_commutative():
    cup = os2_structure(pencil_lines(3)).cup
    e = [[int(i == j) for j in range(3)] for i in range(3)]
    # the concurrency relation (e1 - e3)(e2 - e3) = 0
    u = [a - b for a, b in zip(e[0], e[2])]
    v = [a - b for a, b in zip(e[1], e[2])]
    assert cup.product(u, v) == [0, 0]


def test_braid_section_components():
    lp = partition_component([[0, 5], [1, 4], [2, 3]], 6)
    expected = RationalSubspace.from_normals([[1, 1, 1, 0, 0, 0], [1, 0, 0, 0, 0, -1], [0, 1, 0, 0, -1, 0],
                                              [0, 0, 1, -1, 0, 0]], 6)
    assert lp == expected
    comps = resonance_components(BRAID_SECTION, [lp])
    assert [c.kind for c in comps] == ["local"] * 4 + ["extra"]
    assert all(c.verified and c.space.dimension == 2 for c in comps)
    for a, b in itertools.combinations(comps, 2):
        assert a.space.intersect(b.space).dimension == 0


def test_local_components_lie_in_sum_hyperplane():
    for lat in (pencil_lines(4), BRAID_SECTION, FIVE_LINES.lattice()):
        for c in resonance_components(lat):
            if c.kind == "local":
                assert c.space.dimension == len(c.lines) - 1
                assert all(sum(v) == 0 for v in c.space.basis())


def test_five_line_non_local_component():
    lat = FIVE_LINES.lattice()
    extra = RationalSubspace.from_normals([[1, 1, 1, 0, 0], [0, 1, 0, 0, -1], [0, 0, 1, -1, 0]], 5)
    comps = resonance_components(lat, [extra])
    assert all(c.verified for c in comps)
    assert [c.kind for c in comps].count("parallel") == 2
    # a random subspace does not verify
    bogus = RationalSubspace.from_normals([[1, 2, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0]], 5)
    assert not resonance_components(lat, [bogus])[-1].verified


def test_classifier_examples():
    assert arr_classify(parallel(4)).free_group
    g4 = arr_classify(generic(4))
    assert g4.kahler_group and g4.type_am == (1, 1, 1, 1) and g4.raag
    assert not arr_classify(generic(3)).kahler_group
    assert not arr_classify(BRAID_SECTION).raag
    assert not arr_classify(FIVE_LINES.lattice()).raag
    assert arr_classify(pencil_lines(4)).raag
    assert arr_classify(near_pencil_lines(4)).type_am == (3, 1)


def test_alexander_polynomials():
    r = arr_alex_poly(pencil_lines(4))
    assert r.kind == "pencil" and r.cross_checked
    assert r.delta == parse_laurent("(t1*t2*t3*t4 - 1)^2", 4)
    # transverse line in the middle: the cross-check permutes variables
    mixed = LineArrangement([(1, 0, 0), (0, 1, 0), (1, 0, 1), (1, 0, 2)]).lattice()
    r = arr_alex_poly(mixed)
    assert r.kind == "near_pencil" and r.cross_checked
    assert r.delta == parse_laurent("(t2 - 1)^2", 4)
    assert arr_alex_poly(BRAID_SECTION).kind == "constant"


def test_arrangement_presentation():
    assert arrangement_presentation(pencil_lines(3)) == fixtures.pencil(3)
    p = arrangement_presentation(generic(3))
    assert alexander_polynomial(p).is_associate(parse_laurent("1", 3))
    with pytest.raises(InputError):
        arrangement_presentation(BRAID_SECTION)


def test_milnor_fibers():
    assert milnor_b1(fixtures.free_abelian(2)).b1 == 1
    r = milnor_b1(fixtures.pencil(3), prime=7, with_snf=True)
    assert r.b1 == 4 and r.h1.rank == 4
    braid = milnor_b1(fixtures.pure_braid(4), with_snf=True)
    assert braid.b1 == 7 and braid.h1.rank == 7 and braid.h1.torsion == ()


@pytest.mark.parametrize("n", [3, 4, 5])
def test_milnor_matches_cover_betti(n):
    pu = fixtures.pencil(n).with_relators([Word.from_syllables([(i, 1) for i in range(n)])])
    m = milnor_b1(fixtures.pencil(n))
    c = cover_betti_depth(pu, [1] * n, n, m.prime)
    assert m.b1 == c.betti


def test_milnor_errors():
    with pytest.raises(InputError):
        milnor_b1(fixtures.free_abelian(2), multiplicities=[2, 2])
    with pytest.raises(InputError):
        milnor_b1(fixtures.free_abelian(2), prime=5, multiplicities=[1, 2])


def test_boundary_generic_four_lines():
    lat = LineArrangement([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)], projective=True).lattice()
    b = boundary_invariants(lat)
    assert all(d == 3 for d in b.degrees)
    assert b.delta == parse_laurent("(t1 - 1)*(t2 - 1)*(t3 - 1)*(t4 - 1)", 4)
    assert b.r1 == "H^1" and b.manifold is None


def test_boundary_tags():
    pen = IntersectionLattice.build(4, [[0, 1, 2, 3]], projective=True)
    b = boundary_invariants(pen)
    assert not b.essential and b.delta is None and b.manifold == "#^3 S^1 x S^2" and b.r1 == "C^3"
    near = IntersectionLattice.build(5, [[0, 1, 2, 3]], projective=True)
    b = boundary_invariants(near)
    assert b.manifold == "S^1 x Sigma_3" and b.r1 == "C^6"
    assert b.delta.value_at_one() == 0

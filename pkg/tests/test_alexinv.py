import pytest

from alexloci import fixtures
from alexloci.alexinv import (alexander_norm, alexander_polynomial, count_minors, elementary_ideal_gcd,
                              newton_segment_report)
from alexloci.errors import CapExceeded, InputError
from alexloci.laurent import LaurentMatrix, parse_laurent
from alexloci.presentations import GroupPresentation


def P(text, n):
    return parse_laurent(text, n)


@pytest.mark.parametrize("pres, expected", [
    (fixtures.free_group(2), "0"),
    (fixtures.free_group(3), "0"),
    (fixtures.free_abelian(2), "1"),
    (fixtures.free_abelian(3), "1"),
    (fixtures.pencil(3), "t1*t2*t3 - 1"),
    (fixtures.near_pencil(3), "t3 - 1"),
    (fixtures.baumslag_solitar_12(), "t1 - 2"),
    (fixtures.heisenberg(), "1"),
    (fixtures.surface_group(2), "0"),
])
def test_alexander_polynomial_values(pres, expected):
    delta = alexander_polynomial(pres)
    if expected == "0":
        assert delta.is_zero()
    else:
        assert delta.is_associate(P(expected, pres.b1))


def test_raag_path_on_three_vertices():
    pres = GroupPresentation.parse("<x1,x2,x3 | [x1,x2],[x2,x3]>")
    assert alexander_polynomial(pres).is_associate(P("t2 - 1", 3))


def test_elementary_ideal_edge_cases():
    m = LaurentMatrix(1, [[P("t1 - 1", 1), P("t1 - 1", 1)]], cols=2)
    assert elementary_ideal_gcd(m, 2).is_unit()
    assert elementary_ideal_gcd(m, 0).is_zero()
    assert elementary_ideal_gcd(m, 1).is_associate(P("t1 - 1", 1))


def test_minor_cap():
    assert count_minors(4, 5, 3) == 40
    with pytest.raises(CapExceeded):
        alexander_polynomial(fixtures.free_abelian(4), limit=3)


def test_alexander_norm():
    assert alexander_norm(P("t1^2*t2 - 1", 2), [1, 0]) == 2
    assert alexander_norm(P("t1^2*t2 - 1", 2), [0, 1]) == 1
    with pytest.raises(InputError):
        alexander_norm(P("0", 2), [1, 0])


def test_newton_report():
    r = newton_segment_report(fixtures.pencil(3))
    assert r.polytope.is_segment and r.kahler_obstructed and not r.quasikahler_obstructed
    r = newton_segment_report(fixtures.free_abelian(2))
    assert not r.kahler_obstructed

import itertools

import pytest

from alexloci import fixtures
from alexloci.errors import InputError
from alexloci.jumploci import (Character, CyclicEpimorphism, codim1_stratum, congruence_b1, cover_betti_both,
                               cover_betti_depth, cover_h1_snf, depth, enumerate_characters,
                               first_betti_mod_p, root_of_unity, smallest_prime_with_roots)
from alexloci.presentations import GroupPresentation

P3 = GroupPresentation.parse("<x1,x2,x3 | [x1,x2],[x2,x3]>")


def test_depth_examples():
    assert depth(P3, Character(5, (2, 1, 3))) == 1
    assert depth(P3, Character(5, (2, 3, 4))) == 0
    assert depth(fixtures.free_group(2), Character(5, (2, 3))) == 1
    assert depth(fixtures.free_abelian(2), Character(5, (2, 3))) == 0
    assert depth(fixtures.free_abelian(2), Character(5, (1, 1))) == 2


def test_character_validation():
    with pytest.raises(InputError):
        Character(6, (1, 1))
    with pytest.raises(InputError):
        Character(5, (0, 1))
    with pytest.raises(InputError):
        depth(fixtures.baumslag_solitar_12(), Character(5, (2, 3)))


def test_character_json_round_trip():
    p = fixtures.free_abelian(2)
    rho = Character(7, (3, 5))
    assert Character.from_json(rho.to_json(p), p) == rho
    eps = CyclicEpimorphism(3, (1, 2)).validate(p)
    assert CyclicEpimorphism.from_json(eps.to_json(p), p) == eps


def test_roots_of_unity():
    assert smallest_prime_with_roots(3) == 7
    assert smallest_prime_with_roots(4, after=5) == 13
    z = root_of_unity(6, 7)
    assert pow(z, 6, 7) == 1 and all(pow(z, k, 7) != 1 for k in range(1, 6))


def test_enumerate_characters_counts():
    assert len(enumerate_characters(fixtures.free_abelian(2), 5)) == 16
    assert len(enumerate_characters(fixtures.free_abelian(2), 5, order=2)) == 3
    # characters of Z_3 over F_7
    assert len(enumerate_characters(fixtures.cyclic(3), 7)) == 3


def test_codim1():
    assert codim1_stratum(fixtures.free_group(2)).kind == "full"
    assert codim1_stratum(fixtures.free_abelian(2)).kind == "empty"
    assert codim1_stratum(fixtures.pencil(3)).kind == "hypersurface"
    assert codim1_stratum(fixtures.baumslag_solitar_12()).kind == "finite"
    assert codim1_stratum(fixtures.cyclic(3)).kind == "point"


def test_cover_betti_examples():
    assert cover_betti_depth(fixtures.free_group(2), (1, 1), 2, 5).betti == 3
    assert cover_betti_depth(fixtures.free_abelian(2), (1, 0), 3, 7).betti == 2
    assert cover_betti_depth(fixtures.pencil(3), (1, 1, 1), 3, 7).betti == 5
    h = cover_h1_snf(fixtures.baumslag_solitar_12(), (1, 0), 2)
    assert (h.rank, h.torsion) == (1, (3,))


@pytest.mark.parametrize("pres, res, n, p", [
    (fixtures.free_group(2), (1, 0), 4, 5),
    (fixtures.pencil(4), (1, 1, 1, 1), 4, 13),
    (fixtures.baumslag_solitar_12(), (1, 0), 3, 7),
    (fixtures.baumslag_solitar_12(), (1, 0), 3, 3 * 0 + 13),
])
def test_double_oracle(pres, res, n, p):
    assert cover_betti_both(pres, res, n, p).agreement


def test_congruence():
    assert congruence_b1(fixtures.free_group(2), 2, 5) == 5
    assert congruence_b1(fixtures.free_abelian(2), 2, 5) == 2
    assert congruence_b1(fixtures.free_group(2), 4, 5) == 17
    assert congruence_b1(fixtures.free_group(2), 4, 5, orders="exact") == 14
    with pytest.raises(InputError):
        congruence_b1(fixtures.free_group(2), 3, 5)


def test_congruence_matches_euler_characteristic():
    # the Z_n^2 cover of a wedge of two circles has Euler characteristic -n^2
    for n, p in [(2, 5), (3, 7)]:
        assert congruence_b1(fixtures.free_group(2), n, p) == n * n + 1


def test_first_betti_mod_p_sees_torsion():
    assert first_betti_mod_p(fixtures.cyclic(3), 3) == 1
    assert first_betti_mod_p(fixtures.cyclic(3), 5) == 0


def test_depth_is_invariant_under_galois_powers():
    p = 7
    pres = fixtures.pencil(3)
    for vals in itertools.product([2, 4], repeat=3):
        rho = Character(p, vals)
        for k in (2, 4):
            assert depth(pres, rho) == depth(pres, rho.power(k)) or rho.power(k).is_trivial()

import random

import pytest

from alexloci import fixtures
from alexloci.errors import InputError
from alexloci.resonance import (CupStructure, cup_from_theta, germ_comparison_sample, isotropy_rank,
                                linearized_alexander_matrix, resonance_membership, theta_from_3form)


def test_linearized_matrices():
    assert linearized_alexander_matrix(fixtures.free_abelian(2)).to_text() == [["-x2", "x1"]]
    assert linearized_alexander_matrix(fixtures.heisenberg()).is_zero()
    assert linearized_alexander_matrix(fixtures.free_group(2)).rows == 0
    with pytest.raises(InputError):
        linearized_alexander_matrix(fixtures.baumslag_solitar_12())


def test_quadric_resonance():
    theta = linearized_alexander_matrix(fixtures.quadric_resonance_group())
    assert resonance_membership(theta, [0, 0, 1, 0]).member
    rng = random.Random(1)
    checked = 0
    while checked < 40:
        a = [rng.randint(-9, 9) for _ in range(4)]
        if a[0] ** 2 == 2 * a[1] ** 2:
            continue
        assert not resonance_membership(theta, a).member
        checked += 1


def test_cup_structure_round_trip():
    torus = CupStructure.build(2, 1, {(0, 1, 0): 1})
    assert torus.mu[(1, 0, 0)] == -1
    assert CupStructure.from_json(torus.to_json()) == torus
    assert cup_from_theta(torus.theta()) == torus
    with pytest.raises(InputError):
        CupStructure.build(2, 1, [(0, 1, 0, 1), (1, 0, 0, 1)])
    with pytest.raises(InputError):
        CupStructure.build(2, 1, {(0, 0, 0): 1})


def test_membership_at_zero_uses_rank():
    torus = CupStructure.build(2, 1, {(0, 1, 0): 1}).theta()
    r = resonance_membership(torus, [0, 0])
    assert r.member and r.aomoto_betti == 2
    assert not resonance_membership(torus, [1, 0]).member
    assert resonance_membership(torus, [1, 0], d=0).member


def test_skew_theta_from_3form():
    theta = theta_from_3form({(0, 1, 2): 1}, 3)
    # at a = e1 the matrix has rank 2
    assert resonance_membership(theta, [1, 0, 0]).rank == 2
    with pytest.raises(InputError):
        theta_from_3form({(0, 1, 2): 1, (1, 0, 2): 1}, 3)


def test_isotropy():
    torus = CupStructure.build(2, 1, {(0, 1, 0): 1})
    assert isotropy_rank(torus, [[1, 0], [0, 1]]) == 1
    assert isotropy_rank(torus, [[1, 0]]) == 0


def test_germ_comparison():
    assert germ_comparison_sample(fixtures.heisenberg()).non_formality_signal
    for pres in (fixtures.free_abelian(2), fixtures.free_group(2), fixtures.pencil(3)):
        assert not germ_comparison_sample(pres, trials=15).non_formality_signal

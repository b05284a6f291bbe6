import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alexloci import fixtures
from alexloci.errors import InputError
from alexloci.presentations import (GroupPresentation, GroupRingElement, Word, check_epimorphism, commutator,
                                    fox_derivative, permutation_lift)

words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12).map(Word.from_letters)


def _times_generator_minus_one(elt: GroupRingElement, j: int) -> GroupRingElement:
    x = Word.generator(j)
    out = GroupRingElement({u * x: c for u, c in elt.terms.items()})
    return out - elt


@settings(max_examples=100, deadline=None)
@given(words)
def test_fundamental_identity(w):
    total = GroupRingElement()
    for j in range(3):
        total = total + _times_generator_minus_one(fox_derivative(w, j), j)
    assert total == GroupRingElement({w: 1}) - GroupRingElement({Word(): 1})


@settings(max_examples=100, deadline=None)
@given(words, words)
def test_product_rule_augmentation(u, v):
    for j in range(3):
        assert fox_derivative(u * v, j).augmentation() == \
            fox_derivative(u, j).augmentation() + fox_derivative(v, j).augmentation()


@settings(max_examples=100, deadline=None)
@given(words)
def test_words_are_reduced(w):
    letters = w.letters()
    assert all(a != -b for a, b in zip(letters, letters[1:]))
    assert (w * w.inverse()).is_identity()


def test_fox_derivative_of_commutator():
    names = ["x1", "x2"]
    assert fox_derivative(commutator(Word.generator(0), Word.generator(1)), 0).text(names) == "1 - x1 x2 x1^-1"


def test_parse_round_trip():
    p = GroupPresentation.parse("<x1,x2,x3 | [x1,x1x2x3],[x2,x1x2x3]>")
    assert p.ngens == 3 and p.nrels == 2
    assert GroupPresentation.parse(p.serialize()) == p
    assert p == fixtures.pencil(3)


def test_parse_exponent_binds_to_last_generator():
    p = GroupPresentation.parse("<a,b | ab^2>")
    assert p.relators[0] == Word.from_letters([1, 2, 2])
    q = GroupPresentation.parse("<a,b | (ab)^2, 1>")
    assert q.relators[0] == Word.from_letters([1, 2, 1, 2])
    assert q.relators[1].is_identity()


@pytest.mark.parametrize("text", [
    "<x1 | x2>", "<x1, x1 | >", "<x1 | x1^>", "<a, ab, b | abab>", "<x1 | [x1]>", "x1 | x1", "<x1 | x1 ; x1>",
])
def test_parse_errors(text):
    with pytest.raises(InputError):
        GroupPresentation.parse(text)


def test_parse_error_reports_position():
    with pytest.raises(InputError, match="position"):
        GroupPresentation.parse("<x1 | x1 x9>")


def test_abelianization():
    assert fixtures.free_abelian(3).abelianization.rank == 3
    bs = fixtures.baumslag_solitar_12().abelianization
    assert (bs.rank, bs.torsion) == (1, ())
    c = fixtures.cyclic(6).abelianization
    assert (c.rank, c.torsion) == (0, (6,))
    braid = fixtures.pure_braid(4)
    assert braid.abelianization.rank == 6
    assert braid.with_relators([fixtures.full_twist(4)]).abelianization.rank == 5


def test_alexander_matrix_of_torus():
    m = fixtures.free_abelian(2).alexander_matrix()
    assert m.to_text() == [["-t2 + 1", "t1 - 1"]]


def test_epimorphism_checks():
    p = fixtures.free_abelian(2)
    assert check_epimorphism(p, [1, 0], 3) == [1, 0]
    with pytest.raises(InputError):
        check_epimorphism(p, [2, 0], 4)
    with pytest.raises(InputError):
        check_epimorphism(fixtures.baumslag_solitar_12(), [1, 1], 3)


def test_permutation_lift_shape():
    p = fixtures.free_abelian(2)
    lift = permutation_lift(p, [1, 0], 3)
    assert len(lift) == 3 and len(lift[0]) == 6


def test_pure_braid_three_strands_is_a_pencil_group():
    p = fixtures.pure_braid(3)
    assert p.ngens == 3 and p.abelianization.rank == 3

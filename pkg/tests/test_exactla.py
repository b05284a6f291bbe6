from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alexloci.exactla import (RationalSubspace, SubspaceArrangement, cokernel, hermite_normal_form,
                              integer_kernel, invariant_factors, matmul, rank_mod_p, rank_q,
                              smith_normal_form, solve_q)

small_int = st.integers(-6, 6)
matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(lambda c: st.lists(st.lists(small_int, min_size=c, max_size=c),
                                                            min_size=r, max_size=r)))


def test_invariant_factors_examples():
    assert invariant_factors([[2, 0], [0, 3]]) == [1, 6]
    assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert invariant_factors([[0, 0], [0, 0]]) == []


def test_cokernel_counts_free_part():
    assert cokernel([[2, 0, 0]], 3) == (2, [2])
    assert cokernel([], 2) == (2, [])


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_smith_transforms_diagonalize(m):
    sf = smith_normal_form(m, transforms=True)
    d = matmul(matmul(sf.left, m), sf.right)
    r, c = len(m), len(m[0])
    for i in range(r):
        for j in range(c):
            expected = sf.factors[i] if i == j and i < len(sf.factors) else 0
            assert d[i][j] == expected
    for a, b in zip(sf.factors, sf.factors[1:]):
        assert b % a == 0
    assert sf.rank == rank_q(m)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_kernel_is_annihilated(m):
    c = len(m[0])
    ker = integer_kernel(m, c)
    assert len(ker) == c - rank_q(m)
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


@settings(max_examples=60, deadline=None)
@given(matrices, st.integers(-3, 3))
def test_hnf_invariant_under_row_operations(m, k):
    c = len(m[0])
    h = hermite_normal_form(m, c)
    shuffled = list(reversed(m))
    if len(shuffled) > 1:
        shuffled[0] = [a + k * b for a, b in zip(shuffled[0], shuffled[1])]
    assert hermite_normal_form(shuffled, c) == h


def test_rank_mod_p_drops_on_divisible_entries():
    m = [[5, 10], [1, 2]]
    assert rank_mod_p(m, 5) == 1
    assert rank_mod_p([[5, 0], [0, 1]], 5) == 1
    assert rank_q([[5, 0], [0, 1]]) == 2


def test_solve_q():
    assert solve_q([[2, 0], [0, 3]], [1, 1]) == [Fraction(1, 2), Fraction(1, 3)]
    assert solve_q([[1, 1], [1, 1]], [1, 2]) is None


def test_subspace_basics():
    s = RationalSubspace.from_normals([[1, 1]], 2)
    assert s.dimension == 1
    assert s.contains_vector([1, -1]) and not s.contains_vector([1, 1])
    assert RationalSubspace.from_basis([[2, -2]], 2) == s
    assert str(s) == "{z1 + z2 = 0}"
    assert s.intersect(RationalSubspace.from_normals([[1, 0]], 2)) == RationalSubspace.zero(2)
    assert RationalSubspace.zero(2).issubset(s) and s.issubset(RationalSubspace.full(2))


vectors = st.lists(st.lists(small_int, min_size=3, max_size=3), max_size=3)


@settings(max_examples=80, deadline=None)
@given(vectors, vectors)
def test_subspace_intersection_laws(a, b):
    x = RationalSubspace.from_normals(a, 3)
    y = RationalSubspace.from_normals(b, 3)
    z = x.intersect(y)
    assert z == y.intersect(x)
    assert z.issubset(x) and z.issubset(y)
    assert x.intersect(x) == x
    assert z.dimension >= x.dimension + y.dimension - 3


def test_arrangement_is_irredundant():
    line = RationalSubspace.from_normals([[1, 0]], 2)
    arr = SubspaceArrangement(2, [line, RationalSubspace.zero(2), line])
    assert list(arr) == [line]
    assert arr.union(SubspaceArrangement.full(2)) == SubspaceArrangement.full(2)
    assert SubspaceArrangement.empty(2).is_empty()
    assert arr.contains_vector([0, 5]) and not arr.contains_vector([1, 0])


def test_mismatched_dimensions_rejected():
    with pytest.raises(ValueError):
        SubspaceArrangement(3, [RationalSubspace.zero(2)])

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from extriples.groups import Factor
from extriples.lie import (FormType, Irrep, LieError, SimpleType, cartan_matrix, dim_irrep, dual_weight, form_type,
                           fundamental, positive_roots)
from extriples.linalg import SMat, echelon, inverse, kron, nullspace, rank, solve
from extriples.realize import irrep_realizer


@pytest.mark.parametrize("fam,r,dim", [
    ("A", 1, 3), ("A", 3, 15), ("B", 3, 21), ("C", 2, 10), ("D", 4, 28), ("B", 4, 36), ("D", 6, 66),
    ("G", 2, 14), ("F", 4, 52), ("E", 6, 78), ("E", 7, 133), ("E", 8, 248),
])
def test_algebra_dimensions(fam, r, dim):
    assert SimpleType(fam, r).dim == dim


@pytest.mark.parametrize("fam,r", [("B", 1), ("D", 2), ("E", 5), ("G", 3), ("X", 2)])
def test_invalid_types(fam, r):
    with pytest.raises(LieError):
        SimpleType(fam, r)


def test_positive_roots_count():
    assert len(positive_roots(SimpleType("A", 4))) == 10
    assert len(positive_roots(SimpleType("G", 2))) == 6


def test_cartan_matrix_g2_is_not_symmetric():
    c = cartan_matrix(SimpleType("G", 2))
    assert c[0][1] != c[1][0]
    assert {c[0][1], c[1][0]} == {-1, -3}


# Weyl dimensions checked against explicit realizations (spin modules by Clifford algebras,
# exterior powers by wedge functors)
@pytest.mark.parametrize("factor,k", [
    (Factor("so", 7), 3), (Factor("so", 8), 4), (Factor("so", 12), 6), (Factor("so", 9), 4),
    (Factor("sl", 6), 2), (Factor("sl", 5), 3), (Factor("g2"), 1), (Factor("sp", 6), 1), (Factor("so", 10), 5),
])
def test_weyl_dimension_matches_realization(factor, k):
    w = factor.fundamental(k)
    assert dim_irrep(factor.irrep(w)) == irrep_realizer(factor, w).dim


@pytest.mark.parametrize("irrep,dim", [
    (Irrep(SimpleType("E", 6), (1, 0, 0, 0, 0, 0)), 27),
    (Irrep(SimpleType("E", 7), (0, 0, 0, 0, 0, 0, 1)), 56),
    (Irrep(SimpleType("F", 4), (0, 0, 0, 1)), 26),
    (Irrep(SimpleType("G", 2), (0, 1)), 14),
    (Irrep(SimpleType("C", 2), (0, 1)), 5),
])
def test_weyl_dimension_exceptional_values(irrep, dim):
    assert dim_irrep(irrep) == dim


@pytest.mark.parametrize("irrep,kind", [
    (Irrep(SimpleType("B", 3), (0, 0, 1)), FormType.ORTHOGONAL),
    (Irrep(SimpleType("D", 6), (0, 0, 0, 0, 0, 1)), FormType.SYMPLECTIC),
    (Irrep(SimpleType("D", 5), (0, 0, 0, 0, 1)), FormType.COMPLEX),
    (Irrep(SimpleType("A", 3), (0, 1, 0)), FormType.ORTHOGONAL),
    (Irrep(SimpleType("A", 3), (1, 0, 0)), FormType.COMPLEX),
    (Irrep(SimpleType("A", 1), (1,)), FormType.SYMPLECTIC),
    (Irrep(SimpleType("E", 7), (0, 0, 0, 0, 0, 0, 1)), FormType.SYMPLECTIC),
])
def test_form_types(irrep, kind):
    assert form_type(irrep) == kind


types = st.sampled_from([SimpleType("A", 3), SimpleType("A", 4), SimpleType("D", 4), SimpleType("D", 5),
                         SimpleType("E", 6), SimpleType("B", 3), SimpleType("C", 3)])


@st.composite
def irreps(draw):
    t = draw(types)
    w = draw(st.lists(st.integers(0, 2), min_size=t.rank, max_size=t.rank))
    return Irrep(t, tuple(w))


@given(irreps())
@settings(max_examples=60, deadline=None)
def test_dual_is_an_involution_preserving_dimension(r):
    d = dual_weight(r)
    assert dual_weight(d) == r
    assert dim_irrep(d) == dim_irrep(r)
    if form_type(r) != FormType.COMPLEX:
        assert d == r


def test_fundamental_is_one_based():
    assert fundamental(SimpleType("A", 2), 2).weight == (0, 1)


# ----------------------------------------------------------------------
# exact linear algebra against sympy

matrices = st.lists(st.lists(st.integers(-3, 3), min_size=5, max_size=5), min_size=1, max_size=6)


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_rank_matches_sympy(rows):
    assert rank(rows) == sympy.Matrix(rows).rank()


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_nullspace_is_kernel_of_right_size(rows):
    ns = nullspace(rows, 5)
    assert len(ns) == 5 - sympy.Matrix(rows).rank()
    for v in ns:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)


def test_rank_of_fractions():
    rows = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]]
    assert rank(rows) == 1


def test_echelon_pivots():
    _, piv = echelon([[0, 2, 4], [0, 1, 2], [1, 0, 0]])
    assert piv == [0, 1]


def test_solve_and_inverse():
    assert solve([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    assert solve([[1, 1], [2, 2]], [1, 3]) is None
    m = SMat.from_dense([[2, 1], [1, 1]])
    assert m @ inverse(m) == SMat.identity(2)


def test_kron_and_bracket():
    a = SMat.from_dense([[0, 1], [0, 0]])
    b = SMat.from_dense([[0, 0], [1, 0]])
    h = a.bracket(b)
    assert h == SMat.from_dense([[1, 0], [0, -1]])
    k = kron(h, SMat.identity(2))
    assert k.rows == 4 and k.trace() == 0

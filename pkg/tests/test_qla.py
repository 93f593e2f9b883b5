from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from kvwitness.errors import DimensionMismatch, NotSymmetric, SingularMatrix
from kvwitness.qla import (
    QMatrix,
    QVector,
    determinant,
    floor_rationals,
    is_negative_definite,
    leading_minors,
    rank,
    rational,
    solve_linear,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=7)


@st.composite
def square_matrices(draw, max_n=5, elements=fractions):
    n = draw(st.integers(1, max_n))
    return QMatrix.from_rows([[draw(elements) for _ in range(n)] for _ in range(n)])


@st.composite
def symmetric_matrices(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = Fraction(draw(st.integers(-4, 4)))
    return QMatrix.from_rows(rows)


def to_sympy(m: QMatrix) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in m.to_rows()])


def test_rational_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        rational(0.5)
    with pytest.raises(TypeError):
        rational(True)
    assert rational("3/6") == Fraction(1, 2)


def test_vector_arithmetic():
    v = QVector([1, "1/2", -3])
    w = QVector.unit(3, 1)
    assert v + w == (1, Fraction(3, 2), -3)
    assert (v - v) == QVector.zeros(3)
    assert v.dot(w) == Fraction(1, 2)
    assert not v.is_integral() and (v * 2).is_integral()
    with pytest.raises(DimensionMismatch):
        v + QVector([1])


@settings(max_examples=150)
@given(square_matrices(), st.data())
def test_solve_linear_round_trip(m, data):
    b = QVector([data.draw(fractions) for _ in range(m.rows)])
    det = to_sympy(m).det()
    if det == 0:
        with pytest.raises(SingularMatrix):
            solve_linear(m, b)
        return
    x = solve_linear(m, b)
    assert m @ x == b
    oracle = to_sympy(m).LUsolve(sympy.Matrix([sympy.Rational(v.numerator, v.denominator) for v in b]))
    assert [sympy.Rational(v.numerator, v.denominator) for v in x] == list(oracle)


@settings(max_examples=150)
@given(square_matrices(elements=st.integers(-5, 5).map(Fraction)))
def test_determinant_and_rank_match_sympy(m):
    s = to_sympy(m)
    assert determinant(m) == Fraction(int(s.det()))
    assert rank(m) == s.rank()


@settings(max_examples=150)
@given(symmetric_matrices())
def test_negative_definite_matches_charpoly_oracle(m):
    # a real symmetric matrix has all eigenvalues negative iff every coefficient
    # of det(tI - m) is positive (Descartes' rule on a real-rooted polynomial)
    coeffs = to_sympy(m).charpoly().all_coeffs()
    assert is_negative_definite(m) == all(c > 0 for c in coeffs)


def test_negative_definite_known_cases():
    a4 = QMatrix.from_rows([[-2, 1, 0, 0], [1, -2, 1, 0], [0, 1, -2, 1], [0, 0, 1, -2]])
    assert is_negative_definite(a4)
    assert leading_minors(a4) == [-2, 3, -4, 5]
    assert not is_negative_definite(QMatrix.from_rows([[-1, 1], [1, -1]]))
    with pytest.raises(NotSymmetric):
        is_negative_definite(QMatrix.from_rows([[-1, 1], [0, -1]]))


def test_solve_linear_dimension_checks():
    with pytest.raises(DimensionMismatch):
        solve_linear(QMatrix(2, 3, range(6)), QVector([1, 2]))
    with pytest.raises(DimensionMismatch):
        solve_linear(QMatrix.identity(2), QVector([1, 2, 3]))


@given(st.lists(fractions, max_size=8))
def test_floor_rationals(xs):
    f = floor_rationals(xs)
    assert f.is_integral()
    assert all(a <= x < a + 1 for a, x in zip(f, xs))


@given(square_matrices(max_n=4))
def test_transpose_involution_and_identity(m):
    assert m.transpose().transpose() == m
    assert QMatrix.identity(m.rows) @ m == m

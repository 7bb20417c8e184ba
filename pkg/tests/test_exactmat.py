from __future__ import annotations

import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from consim.errors import ShapeError, SingularMatrixError
from consim.exactmat import (
    CMatrix,
    GaussianRational,
    LinearEquation,
    Term,
    block_diag,
    charpoly,
    conj,
    det,
    inverse,
    is_nonsingular,
    matrix_from_json,
    matrix_to_json,
    rank,
    scalar_from_json,
    scalar_to_json,
    solve_real_linear,
)
from tests.helpers import m, z

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
scalars = st.builds(GaussianRational, rationals, rationals)


def matrices(rows=None, cols=None, max_dim=4):
    rows_st = st.just(rows) if rows else st.integers(1, max_dim)
    cols_st = st.just(cols) if cols else st.integers(1, max_dim)
    return st.tuples(rows_st, cols_st).flatmap(
        lambda rc: st.lists(
            st.lists(scalars, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]
        ).map(CMatrix.from_rows)
    )


def to_sympy(A: CMatrix) -> sympy.Matrix:
    return sympy.Matrix(
        A.rows, A.cols, lambda i, j: sympy.Rational(str(A[i, j].re)) + sympy.I * sympy.Rational(str(A[i, j].im))
    )


# -- scalars ------------------------------------------------------------------


def test_gaussian_rational_arithmetic():
    i = z(0, 1)
    assert i * i == -1
    assert (1 + 2 * i).conj() == 1 - 2 * i
    assert (3 + 4 * i) / (3 + 4 * i) == 1
    assert z(Fraction(1, 2), -1) == GaussianRational("1/2", "-1")
    assert str(z(Fraction(1, 2), -1)) == "1/2-1i"


@given(scalars, scalars)
def test_scalar_conj_is_multiplicative_involution(a, b):
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()


def test_scalars_are_immutable():
    with pytest.raises(AttributeError):
        z(1).re = 2


# -- conj / products ------------------------------------------------------------


@pytest.mark.parametrize(
    "A, expected",
    [
        (m([[1j]]), m([[-1j]])),
        (CMatrix.identity(3), CMatrix.identity(3)),
        (m([[1 + 2j, 0], [0, 3]]), m([[1 - 2j, 0], [0, 3]])),
    ],
)
def test_conj_examples(A, expected):
    assert conj(A) == expected


def test_product_examples():
    A = m([[1, 2j], [3, 4]])
    assert CMatrix.identity(2) @ A == A
    N = m([[0, 1], [0, 0]])
    assert (N @ N).is_zero()
    assert m([[1j]]) @ m([[1j]]) == m([[-1]])


def test_shape_errors():
    with pytest.raises(ShapeError):
        m([[1, 2]]) @ m([[1, 2]])
    with pytest.raises(ShapeError):
        m([[1]]) + m([[1, 2]])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(matrices(n, n), matrices(n, n))))
def test_conj_respects_sum_and_product(pair):
    A, B = pair
    assert (A @ B).conj() == A.conj() @ B.conj()
    assert (A + B).conj() == A.conj() + B.conj()
    assert A.conj().conj() == A


def test_lowest_terms_storage():
    A = m([[Fraction(2, 4), Fraction(6, 8)]])
    B = m([[Fraction(1, 2), Fraction(3, 4)]])
    assert A == B and hash(A) == hash(B)
    assert (A - B).is_zero()


# -- rank / inverse / det -----------------------------------------------------


def test_rank_inverse_examples():
    assert rank(CMatrix.identity(3)) == 3
    assert rank(m([[0, 1], [0, 0]])) == 1
    assert inverse(m([[2]])) == m([[Fraction(1, 2)]])
    with pytest.raises(SingularMatrixError):
        inverse(m([[1, 1j], [1j, -1]]))
    with pytest.raises(SingularMatrixError):
        inverse(m([[1, 2]]))


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_rank_agrees_with_sympy_and_is_conj_transpose_invariant(A):
    r = rank(A)
    assert r == to_sympy(A).rank()
    assert r == rank(A.conj()) == rank(A.T)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_inverse_round_trip_and_det(A):
    d = det(A)
    ours = sympy.Rational(str(d.re)) + sympy.I * sympy.Rational(str(d.im))
    assert sympy.expand(to_sympy(A).det(method="bareiss") - ours) == 0
    if d:
        Ai = inverse(A)
        assert Ai @ A == CMatrix.identity(A.rows)
        assert inverse(Ai) == A
        assert is_nonsingular(A)
    else:
        assert not is_nonsingular(A)


def test_charpoly_against_sympy():
    A = m([[1 + 2j, 3, 0], [Fraction(1, 2), 1j, 2], [0, -1, 4]])
    x = sympy.Symbol("x")
    ref = sympy.Poly(to_sympy(A).charpoly(x).as_expr(), x).all_coeffs()
    ours = [sympy.Rational(str(c.re)) + sympy.I * sympy.Rational(str(c.im)) for c in charpoly(A)]
    assert [sympy.expand(c) for c in ref] == ours


def test_block_diag_and_powers():
    N = m([[0, 1], [0, 0]])
    D = block_diag(N, m([[5]]))
    assert D.shape == (3, 3) and D[2, 2] == 5 and D[0, 1] == 1
    assert (D**2)[2, 2] == 25 and (D**2)[0, 1] == 0
    assert (m([[2]]) ** -2) == m([[Fraction(1, 4)]])


# -- realified solver ---------------------------------------------------------


def _semicommutant_eq(J):
    return LinearEquation((Term(None, J, conj=True), Term(-J, None)))


def test_solver_zero_constraint_is_everything():
    sol = solve_real_linear(2, 2, [_semicommutant_eq(CMatrix.zeros(2))])
    assert sol.consistent and sol.real_dim == 8


def test_solver_jordan_block_by_hand():
    # conj(S) J = J S for J = [[0,1],[0,0]], written out entrywise:
    #   (1,1): 0 = s21;  (1,2): conj(s11) = s22;  (2,1): 0 = 0;  (2,2): conj(s21) = 0
    # so s12 and s11 are free (4 real unknowns) and s22 = conj(s11), s21 = 0.
    J = m([[0, 1], [0, 0]])
    sol = solve_real_linear(2, 2, [_semicommutant_eq(J)])
    assert sol.real_dim == 4
    for S in sol.basis:
        assert S.conj() @ J == J @ S
        assert S[1, 0] == 0 and S[1, 1] == S[0, 0].conj()


def test_solver_scalar_relation():
    # x + iy = i (x - iy) = y + ix  =>  x = y
    i = CMatrix.scalar(1j)
    sol = solve_real_linear(1, 1, [LinearEquation((Term(None, None), Term(-i, None, conj=True)))])
    assert sol.real_dim == 1
    (B,) = sol.basis
    assert B[0, 0].re == B[0, 0].im != 0


def test_solver_affine_and_inconsistent():
    # 2 X + conj(X) = 3 + i  has the unique solution X = 1 + i
    eq = LinearEquation((Term(m([[2]]), None), Term(None, None, conj=True)), rhs=m([[3 + 1j]]))
    sol = solve_real_linear(1, 1, [eq])
    assert sol.consistent and sol.real_dim == 0 and sol.particular == m([[1 + 1j]])
    bad = LinearEquation((Term(CMatrix.zeros(1), None),), rhs=m([[1]]))
    assert not solve_real_linear(1, 1, [bad]).consistent


def test_solver_rectangular_unknown():
    # X (2x3) with A X = 0 for A = [1, 1]: two columns' worth of real freedom per column
    A = m([[1, 1]])
    sol = solve_real_linear(2, 3, [LinearEquation((Term(A, None),))])
    assert sol.real_dim == 2 * 3 * 2 - 2 * 3
    assert all((A @ B).is_zero() for B in sol.basis)


# -- serialization ------------------------------------------------------------


def test_scalar_json_format():
    assert scalar_to_json(z(Fraction(-2, 4), 3)) == ["-1/2", "3/1"]
    assert scalar_from_json(["6/4", "-0/7"]) == z(Fraction(3, 2))


@settings(max_examples=30, deadline=None)
@given(matrices())
def test_matrix_json_round_trip(A):
    text = json.dumps(matrix_to_json(A))
    assert matrix_from_json(json.loads(text)) == A


def test_matrix_json_rejects_bad_shape():
    with pytest.raises(ValueError):
        matrix_from_json({"rows": 2, "cols": 1, "entries": [[["1/1", "0/1"]]]})

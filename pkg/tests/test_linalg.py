from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cartan_tableaux.linalg import (
    RatMatrix,
    determinant,
    inverse,
    kernel,
    kernel_vectors,
    rank,
    rank_of_vectors,
    rref,
    solve,
    to_fraction,
)

small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def square(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)
    )


def test_to_fraction_accepts_exact_input_only():
    assert to_fraction("-3/2") == Fraction(-3, 2)
    assert to_fraction(4) == 4
    assert to_fraction("−1/3") == Fraction(-1, 3)
    with pytest.raises(TypeError):
        to_fraction(0.5)
    with pytest.raises(TypeError):
        to_fraction(True)


def test_rref_of_known_matrix():
    m = RatMatrix([[1, 2, 3], [2, 4, 7], [1, 2, 4]])
    red, piv = rref(m)
    assert piv == [0, 2]
    assert red.tolist() == [[1, 2, 0], [0, 0, 1], [0, 0, 0]]


def test_empty_shapes():
    assert rank(RatMatrix.zeros(0, 3)) == 0
    assert len(kernel_vectors(RatMatrix.zeros(0, 3))) == 3
    assert rank_of_vectors([], 4) == 0


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):
    assert rank(RatMatrix(rows)) == sympy.Matrix(rows).rank()


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rref_matches_sympy(rows):
    red, piv = rref(RatMatrix(rows))
    s_red, s_piv = sympy.Matrix(rows).rref()
    assert list(piv) == list(s_piv)
    assert red.tolist() == [[Fraction(int(x.p), int(x.q)) for x in s_red.row(i)] for i in range(s_red.rows)]


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_kernel_is_annihilated_and_has_complementary_dimension(rows):
    m = RatMatrix(rows)
    K = kernel(m)
    assert K.cols + rank(m) == m.cols
    for v in K.column_list():
        assert all(x == 0 for x in m @ v)


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_returns_a_solution_or_proves_inconsistency(rows, x):
    m = RatMatrix(rows)
    rhs = m @ tuple(Fraction(v) for v in x[: m.cols])
    sol = solve(m, rhs)
    assert sol is not None and tuple(m @ sol) == tuple(rhs)
    # perturb into an inconsistent system whenever the column space is proper
    if rank(m) < m.rows:
        left = kernel(m.transpose()).column(0)
        bad = tuple(r + y for r, y in zip(rhs, left))
        assert solve(m, bad) is None


@settings(max_examples=60, deadline=None)
@given(square(), square())
def test_determinant_is_multiplicative_and_matches_sympy(a, b):
    if len(a) != len(b):
        b = [row[: len(a)] + [0] * max(0, len(a) - len(row)) for row in b[: len(a)]]
        b += [[0] * len(a)] * (len(a) - len(b))
    A, B = RatMatrix(a), RatMatrix(b)
    assert determinant(A) == sympy.Matrix(a).det()
    assert determinant(A @ B) == determinant(A) * determinant(B)


@settings(max_examples=60, deadline=None)
@given(square())
def test_inverse(rows):
    A = RatMatrix(rows)
    if determinant(A) == 0:
        with pytest.raises(ZeroDivisionError):
            inverse(A)
    else:
        assert A @ inverse(A) == RatMatrix.identity(A.rows)


def test_matrix_is_immutable():
    m = RatMatrix([[1, 2]])
    with pytest.raises(AttributeError):
        m.rows = 3

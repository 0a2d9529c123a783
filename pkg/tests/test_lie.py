import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartan_tableaux import catalog
from cartan_tableaux.lie import (
    DimensionError,
    LieAlgebra,
    Subspace,
    adjoint,
    bracket,
    centralizer,
    check_jacobi,
    complement,
    contains,
    direct_sum,
    intersect,
    is_semisimple,
    is_subspace,
    killing_form,
    killing_orthogonal,
    subspace_sum,
)
from cartan_tableaux.linalg import RatMatrix, rank

from randgen import change_basis, random_algebra


def test_sl2_brackets():
    L = catalog.sl2()
    e, h, f = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    assert bracket(L, h, e) == (2, 0, 0)
    assert bracket(L, h, f) == (0, 0, -2)
    assert bracket(L, e, f) == (0, 1, 0)
    assert bracket(L, f, e) == (0, -1, 0)


@pytest.mark.parametrize("L", [catalog.sl2(), catalog.heisenberg(), catalog.sl_n(3), catalog.sl4_wilczynski()[0]],
                         ids=["sl2", "heisenberg", "sl3", "sl4"])
def test_catalog_algebras_satisfy_jacobi(L):
    assert check_jacobi(L) == []


def test_broken_constants_fail_jacobi():
    # [e1,e2] = e3, [e2,e3] = e1, [e1,e3] = e3 violates Jacobi
    L = LieAlgebra.from_brackets(["a", "b", "c"], [(0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 2, 1)])
    assert check_jacobi(L)


def test_antisymmetry_violations_rejected():
    with pytest.raises(ValueError):
        LieAlgebra.from_brackets(["a", "b"], [(0, 0, 1, 1)])
    with pytest.raises(ValueError):
        LieAlgebra.from_brackets(["a", "b"], [(0, 1, 1, 1), (1, 0, 1, 1)])
    # consistent reversed entry is accepted
    L = LieAlgebra.from_brackets(["a", "b"], [(0, 1, 1, 1), (1, 0, 1, -1)])
    assert bracket(L, (1, 0), (0, 1)) == (0, 1)


def _trace_product(x, y):
    return sum(x[i][t] * y[t][i] for i in range(len(x)) for t in range(len(x)))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_killing_form_is_2n_trace_on_sl_n(n):
    mats, names = catalog.sl_basis(n)
    L = catalog.lie_algebra_from_matrices(mats, names)
    B = killing_form(L)
    for a in range(L.dim):
        for b in range(L.dim):
            assert B[a, b] == 2 * n * _trace_product(mats[a], mats[b])


def test_semisimplicity():
    assert is_semisimple(catalog.sl2())
    assert is_semisimple(catalog.sl4_wilczynski()[0])
    assert rank(killing_form(catalog.sl4_wilczynski()[0])) == 15
    assert not is_semisimple(catalog.heisenberg())
    assert not is_semisimple(LieAlgebra.abelian(3))


def test_adjoint_is_a_representation():
    L = catalog.sl_n(3)
    rng = random.Random(1)
    for _ in range(5):
        x = tuple(Fraction(rng.randint(-3, 3)) for _ in range(L.dim))
        y = tuple(Fraction(rng.randint(-3, 3)) for _ in range(L.dim))
        lhs = adjoint(L, bracket(L, x, y))
        rhs = adjoint(L, x) @ adjoint(L, y) - adjoint(L, y) @ adjoint(L, x)
        assert lhs == rhs


vectors4 = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), max_size=4)


@settings(max_examples=80, deadline=None)
@given(vectors4, vectors4)
def test_grassmann_formula(u, v):
    S, T = Subspace(4, u), Subspace(4, v)
    assert subspace_sum(S, T).dim + intersect(S, T).dim == S.dim + T.dim
    assert is_subspace(intersect(S, T), S) and is_subspace(intersect(S, T), T)
    C = complement(S, subspace_sum(S, T))
    assert intersect(C, S).dim == 0 and subspace_sum(C, S) == subspace_sum(S, T)


@settings(max_examples=40, deadline=None)
@given(vectors4)
def test_subspace_is_canonical(u):
    S = Subspace(4, u)
    assert Subspace(4, list(reversed(u))) == S
    assert Subspace(4, S.vectors) == S
    for v in u:
        assert contains(S, v)


def test_dimension_checks():
    with pytest.raises(DimensionError):
        Subspace(3, [(1, 2)])
    with pytest.raises(DimensionError):
        bracket(catalog.sl2(), (1, 0), (0, 1, 0))


def test_centralizer_and_orthogonal_in_sl3():
    L = catalog.sl_n(3)
    cartan = Subspace(8, [tuple(1 if t == 6 else 0 for t in range(8)), tuple(1 if t == 7 else 0 for t in range(8))])
    assert centralizer(L, cartan) == cartan
    # the Killing-orthogonal of the diagonal is the off-diagonal part
    perp = killing_orthogonal(L, cartan)
    assert perp == Subspace(8, [tuple(1 if t == i else 0 for t in range(8)) for i in range(6)])


def test_direct_sum_blocks_commute():
    L = direct_sum(catalog.sl2(), catalog.heisenberg())
    assert L.dim == 6 and check_jacobi(L) == []
    for i in range(3):
        for j in range(3, 6):
            assert not any(L.basis_bracket(i, j))


def test_random_algebras_are_lie_algebras():
    rng = random.Random(5)
    for _ in range(25):
        assert check_jacobi(random_algebra(rng)) == []


def test_basis_change_preserves_killing_rank():
    rng = random.Random(3)
    L = catalog.sl_n(3)
    P = [[Fraction(rng.randint(-2, 2)) for _ in range(8)] for _ in range(8)]
    while rank(RatMatrix(P)) < 8:
        P = [[Fraction(rng.randint(-2, 2)) for _ in range(8)] for _ in range(8)]
    L2 = change_basis(L, P)
    assert check_jacobi(L2) == []
    assert is_semisimple(L2)

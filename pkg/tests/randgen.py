"""Seeded generators of small Jacobi-valid algebras and random tableaux over them."""

from __future__ import annotations

import random
from fractions import Fraction

from cartan_tableaux import catalog
from cartan_tableaux.lie import LieAlgebra, Subspace, bracket, check_jacobi, intersect
from cartan_tableaux.linalg import RatMatrix, inverse, rank_of_vectors
from cartan_tableaux.tableau import TableauSpec


def change_basis(L: LieAlgebra, P) -> LieAlgebra:
    """Same algebra in the basis f_a = sum_q P[a][q] e_q (P invertible)."""
    n = L.dim
    P = RatMatrix(P, cols=n)
    Pinv = inverse(P)
    rows = P.row_list()
    entries = []
    for a in range(n):
        for b in range(a + 1, n):
            br = bracket(L, rows[a], rows[b])
            coords = [sum((br[q] * Pinv[q, t] for q in range(n)), Fraction(0)) for t in range(n)]
            entries += [(a, b, t, c) for t, c in enumerate(coords) if c]
    return LieAlgebra.from_brackets([f"f{i + 1}" for i in range(n)], entries)


def _flat(m):
    return [x for row in m for x in row]


def matrix_closure(gens, max_dim: int = 7):
    """Lie algebra generated by integer matrices under the commutator, or None if too big."""
    basis = []

    def add(m):
        if rank_of_vectors([_flat(b) for b in basis] + [_flat(m)], len(_flat(m))) > len(basis):
            basis.append(m)
            return True
        return False

    for g in gens:
        add(g)
    grew = True
    while grew and len(basis) <= max_dim:
        grew = False
        for x in list(basis):
            for y in list(basis):
                if add(catalog.commutator(x, y)):
                    grew = True
                if len(basis) > max_dim:
                    return None
    if len(basis) > max_dim or not basis:
        return None
    return catalog.lie_algebra_from_matrices(basis, [f"e{i + 1}" for i in range(len(basis))])


def _random_invertible(rng: random.Random, n: int):
    while True:
        P = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if rank_of_vectors(P, n) == n:
            return P


def random_algebra(rng: random.Random) -> LieAlgebra:
    kind = rng.choice(["matrix", "matrix", "abelian", "catalog"])
    if kind == "abelian":
        return LieAlgebra.abelian(rng.randint(2, 5))
    if kind == "catalog":
        L = rng.choice([catalog.sl2(), catalog.heisenberg(), catalog.sl_n(3)])
        return change_basis(L, _random_invertible(rng, L.dim))
    while True:
        size = rng.choice([2, 3])
        gens = [[[Fraction(rng.randint(-1, 1)) for _ in range(size)] for _ in range(size)]
                for _ in range(rng.randint(1, 3))]
        L = matrix_closure(gens)
        if L is not None and L.dim >= 2:
            return L


def _random_vectors(rng, count, n, lo=-2, hi=2):
    return [tuple(Fraction(rng.randint(lo, hi)) for _ in range(n)) for _ in range(count)]


def random_tableau(rng: random.Random, L: LieAlgebra | None = None, max_k: int = 3, max_h: int = 4) -> TableauSpec:
    L = L if L is not None else random_algebra(rng)
    n = L.dim
    assert not check_jacobi(L)
    while True:
        k = rng.randint(1, min(max_k, n - 1))
        h = rng.randint(1, min(max_h, n - k))
        a = _random_vectors(rng, k, n)
        b = _random_vectors(rng, h, n)
        A, B = Subspace(n, a), Subspace(n, b)
        if A.dim == k and B.dim == h and intersect(A, B).dim == 0:
            break
    m = rng.randint(1, min(6, h * k))
    while True:
        gens = [RatMatrix([[Fraction(rng.randint(-2, 2)) for _ in range(k)] for _ in range(h)], cols=k)
                for _ in range(m)]
        if rank_of_vectors([g.flatten() for g in gens], h * k) == m:
            break
    return TableauSpec(algebra=L, a_basis=tuple(a), b_basis=tuple(b), generators=tuple(gens))

"""Lie algebras given by structure constants, and the subspace calculus."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import (
    RatMatrix,
    Vector,
    kernel_vectors,
    rank,
    rref,
    to_fraction,
    unit_vector,
    vector,
)


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class LieAlgebra:
    """Finite-dimensional Lie algebra with [e_i, e_j] = sum_k c^k_ij e_k.

    ``structure`` holds (i, j, k, c) with i < j only; antisymmetry is implicit.
    """

    basis_names: tuple[str, ...]
    structure: tuple[tuple[int, int, int, Fraction], ...]
    _table: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        n = len(self.basis_names)
        for i, j, k, c in self.structure:
            if not (0 <= i < j < n and 0 <= k < n):
                raise DimensionError(f"bad structure-constant index ({i}, {j}, {k})")
            table.setdefault((i, j), {})[k] = c
        object.__setattr__(self, "_table", table)

    @classmethod
    def from_brackets(cls, names: Sequence[str], entries: Iterable[tuple]) -> LieAlgebra:
        """Build from (i, j, k, c) entries in any order; i > j entries are flipped.

        Raises ValueError on [e_i, e_i] != 0 or on contradictory duplicates.
        """
        acc: dict[tuple[int, int, int], Fraction] = {}
        seen: dict[tuple[int, int, int], Fraction] = {}
        for i, j, k, c in entries:
            c = to_fraction(c)
            if i == j:
                if c != 0:
                    raise ValueError(f"antisymmetry violated: [e{i}, e{i}] has component {c} on e{k}")
                continue
            key, val = ((i, j, k), c) if i < j else ((j, i, k), -c)
            if key in seen and seen[key] != val:
                raise ValueError(f"antisymmetry violated at ({i}, {j}, {k})")
            seen[key] = val
            acc[key] = val
        structure = tuple(sorted((i, j, k, c) for (i, j, k), c in acc.items() if c != 0))
        return cls(tuple(names), structure)

    @classmethod
    def abelian(cls, n: int, names: Sequence[str] | None = None) -> LieAlgebra:
        return cls(tuple(names or (f"e{i + 1}" for i in range(n))), ())

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def constant(self, i: int, j: int, k: int) -> Fraction:
        if i == j:
            return Fraction(0)
        if i < j:
            return self._table.get((i, j), {}).get(k, Fraction(0))
        return -self._table.get((j, i), {}).get(k, Fraction(0))

    def basis_bracket(self, i: int, j: int) -> Vector:
        out = [Fraction(0)] * self.dim
        if i < j:
            for k, c in self._table.get((i, j), {}).items():
                out[k] = c
        elif i > j:
            for k, c in self._table.get((j, i), {}).items():
                out[k] = -c
        return tuple(out)

    def nonzero_pairs(self):
        return self._table.items()


def bracket(L: LieAlgebra, x: Sequence, y: Sequence, zero=None) -> tuple:
    """[x, y] from the structure constants.

    Works for any coefficient ring supporting + and * (Fractions, Polys);
    ``zero`` seeds the sums so that the result type is uniform.
    """
    n = L.dim
    if len(x) != n or len(y) != n:
        raise DimensionError(f"bracket expects vectors of length {n}")
    if zero is None:
        zero = Fraction(0)
    out = [zero] * n
    for (i, j), comps in L.nonzero_pairs():
        xi, xj, yi, yj = x[i], x[j], y[i], y[j]
        w = xi * yj - xj * yi
        if isinstance(w, Fraction) or isinstance(w, int):
            if w == 0:
                continue
        elif hasattr(w, "is_zero") and w.is_zero():
            continue
        for k, c in comps.items():
            out[k] = out[k] + w * c
    return tuple(out)


def check_jacobi(L: LieAlgebra) -> list[tuple[int, int, int]]:
    """Basis triples i < j < k violating Jacobi; empty list means pass."""
    n = L.dim
    bad = []
    for i, j, k in combinations(range(n), 3):
        ei, ej, ek = unit_vector(n, i), unit_vector(n, j), unit_vector(n, k)
        s1 = bracket(L, bracket(L, ei, ej), ek)
        s2 = bracket(L, bracket(L, ej, ek), ei)
        s3 = bracket(L, bracket(L, ek, ei), ej)
        if any(a + b + c != 0 for a, b, c in zip(s1, s2, s3)):
            bad.append((i, j, k))
    return bad


def adjoint(L: LieAlgebra, x: Sequence) -> RatMatrix:
    """Matrix of y -> [x, y]; column j is [x, e_j]."""
    n = L.dim
    if len(x) != n:
        raise DimensionError(f"adjoint expects a vector of length {n}")
    x = vector(x)
    cols = [bracket(L, x, unit_vector(n, j)) for j in range(n)]
    return RatMatrix.from_columns(cols, n)


def killing_form(L: LieAlgebra) -> RatMatrix:
    n = L.dim
    if n == 0:
        return RatMatrix.zeros(0, 0)
    ads = [adjoint(L, unit_vector(n, i)) for i in range(n)]
    B = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            prod = ads[i] @ ads[j]
            t = sum((prod[r, r] for r in range(n)), Fraction(0))
            B[i][j] = B[j][i] = t
    return RatMatrix(B, cols=n)


def killing(L: LieAlgebra, x: Sequence, y: Sequence, B: RatMatrix | None = None) -> Fraction:
    B = B if B is not None else killing_form(L)
    return sum((x[i] * B[i, j] * y[j] for i in range(L.dim) for j in range(L.dim)), Fraction(0))


def is_semisimple(L: LieAlgebra) -> bool:
    """Cartan's criterion: nondegenerate Killing form."""
    return L.dim > 0 and rank(killing_form(L)) == L.dim


class Subspace:
    """Subspace of Q^n stored by its canonical reduced echelon basis.

    Two subspaces are equal iff their echelon matrices are identical.
    """

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, vectors: Iterable[Sequence] = ()):
        vecs = [vector(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient}")
        if vecs:
            red, piv = rref(RatMatrix(vecs, cols=ambient))
            rows = red.row_list()[: len(piv)]
        else:
            rows, piv = [], []
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", RatMatrix(rows, cols=ambient))
        object.__setattr__(self, "pivots", tuple(piv))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n)

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, (unit_vector(n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def vectors(self) -> list[Vector]:
        return self.basis.row_list()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(ambient={self.ambient}, dim={self.dim})"

    def contains(self, v: Sequence) -> bool:
        return contains(self, v)

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of v in the echelon basis (v must lie in the subspace)."""
        v = vector(v)
        coords = tuple(v[p] for p in self.pivots)
        recon = [Fraction(0)] * self.ambient
        for c, row in zip(coords, self.vectors):
            for t, x in enumerate(row):
                recon[t] += c * x
        if tuple(recon) != v:
            raise ValueError("vector is not in the subspace")
        return coords


def _check_ambient(S: Subspace, T: Subspace):
    if S.ambient != T.ambient:
        raise DimensionError(f"ambient mismatch {S.ambient} vs {T.ambient}")


def span(ambient: int, vectors: Iterable[Sequence]) -> Subspace:
    return Subspace(ambient, vectors)


def contains(S: Subspace, v: Sequence) -> bool:
    v = vector(v)
    if len(v) != S.ambient:
        raise DimensionError("vector length does not match ambient dimension")
    if all(x == 0 for x in v):
        return True
    return Subspace(S.ambient, S.vectors + [v]).dim == S.dim


def subspace_sum(S: Subspace, T: Subspace) -> Subspace:
    _check_ambient(S, T)
    return Subspace(S.ambient, S.vectors + T.vectors)


def intersect(S: Subspace, T: Subspace) -> Subspace:
    _check_ambient(S, T)
    if S.dim == 0 or T.dim == 0:
        return Subspace.zero(S.ambient)
    n = S.ambient
    # solve sum a_i s_i - sum b_j t_j = 0
    cols = S.vectors + [tuple(-x for x in t) for t in T.vectors]
    M = RatMatrix.from_columns(cols, n)
    out = []
    for sol in kernel_vectors(M):
        a = sol[: S.dim]
        out.append(tuple(sum((a[i] * S.vectors[i][t] for i in range(S.dim)), Fraction(0)) for t in range(n)))
    return Subspace(n, out)


def is_subspace(S: Subspace, T: Subspace) -> bool:
    _check_ambient(S, T)
    return subspace_sum(S, T).dim == T.dim


def complement(S: Subspace, T: Subspace) -> Subspace:
    """Deterministic complement of S inside T.

    Greedy over T's echelon rows: keep each row that enlarges the span.
    """
    _check_ambient(S, T)
    if not is_subspace(S, T):
        raise ValueError("complement requires S to be contained in T")
    current = S
    chosen = []
    for row in T.vectors:
        if current.dim == T.dim:
            break
        bigger = Subspace(S.ambient, current.vectors + [row])
        if bigger.dim > current.dim:
            chosen.append(row)
            current = bigger
    return Subspace(S.ambient, chosen)


def complement_vectors(S: Subspace, T: Subspace) -> list[Vector]:
    """Like :func:`complement` but returns the chosen rows themselves (not re-echelonized)."""
    _check_ambient(S, T)
    if not is_subspace(S, T):
        raise ValueError("complement requires S to be contained in T")
    current = S
    chosen = []
    for row in T.vectors:
        bigger = Subspace(S.ambient, current.vectors + [row])
        if bigger.dim > current.dim:
            chosen.append(row)
            current = bigger
    return chosen


def centralizer(L: LieAlgebra, S: Subspace, carrier: Subspace | None = None) -> Subspace:
    """{X in carrier : [X, s] = 0 for every s in S}; carrier defaults to the whole algebra."""
    n = L.dim
    carrier = carrier if carrier is not None else Subspace.full(n)
    if S.dim == 0 or carrier.dim == 0:
        return carrier
    # unknowns: coordinates c of X in carrier basis
    rows = []
    for s in S.vectors:
        images = [bracket(L, u, s) for u in carrier.vectors]
        for k in range(n):
            rows.append([img[k] for img in images])
    M = RatMatrix(rows, cols=carrier.dim)
    out = []
    for c in kernel_vectors(M):
        out.append(tuple(sum((c[t] * carrier.vectors[t][q] for t in range(carrier.dim)), Fraction(0)) for q in range(n)))
    return Subspace(n, out)


def killing_orthogonal(L: LieAlgebra, S: Subspace, B: RatMatrix | None = None) -> Subspace:
    """Kernel of x -> (B(x, s_i))_i."""
    n = L.dim
    if S.dim == 0:
        return Subspace.full(n)
    B = B if B is not None else killing_form(L)
    rows = [B @ s for s in S.vectors]
    return Subspace(n, kernel_vectors(RatMatrix(rows, cols=n)))


def bracket_subspaces_within(L: LieAlgebra, S: Subspace, T: Subspace, target: Subspace):
    """First basis pair (s, t) with [s, t] outside target, or None."""
    for i, s in enumerate(S.vectors):
        for j, t in enumerate(T.vectors):
            v = bracket(L, s, t)
            if not contains(target, v):
                return (i, j, v)
    return None


def direct_sum(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    n1 = L1.dim
    entries = list(L1.structure)
    entries += [(i + n1, j + n1, k + n1, c) for i, j, k, c in L2.structure]
    names = tuple(f"{x}_1" for x in L1.basis_names) + tuple(f"{x}_2" for x in L2.basis_names)
    return LieAlgebra(names, tuple(sorted(entries)))

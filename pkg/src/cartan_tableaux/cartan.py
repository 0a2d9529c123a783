"""Cartan tableaux of symmetric decompositions g = g0 + g1 of semisimple algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .lie import (
    LieAlgebra,
    Subspace,
    bracket,
    bracket_subspaces_within,
    centralizer,
    complement,
    contains,
    intersect,
    is_semisimple,
    is_subspace,
    killing_form,
    killing_orthogonal,
    subspace_sum,
)
from .linalg import RatMatrix, Vector, rank_of_vectors, solve, vector
from .tableau import (
    CharacterReport,
    CheckResult,
    ConditionReport,
    TableauError,
    TableauSpec,
    characters,
    filtration_dims,
    is_tableau_over,
    prolongation,
    rho,
)


class CartanError(ValueError):
    """The decomposition does not support a Cartan tableau; carries a witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class SymmetricDecomposition:
    algebra: LieAlgebra
    g0: Subspace
    g1: Subspace
    a: Subspace | None = None
    name: str = ""


@dataclass(frozen=True, eq=False)
class CartanData:
    algebra: LieAlgebra
    g0: Subspace
    g1: Subspace
    a: Subspace
    m: Subspace
    b: Subspace
    n: Subspace
    centralizer_a: Subspace
    regular_basis: tuple[Vector, ...]

    @property
    def k(self) -> int:
        return self.a.dim


def verify_decomposition(d: SymmetricDecomposition) -> CheckResult:
    L = d.algebra
    n = L.dim
    if d.g0.ambient != n or d.g1.ambient != n:
        return CheckResult("fail", "subspaces live in the wrong ambient dimension")
    if intersect(d.g0, d.g1).dim != 0:
        return CheckResult("fail", "g0 and g1 intersect nontrivially")
    if d.g0.dim + d.g1.dim != n:
        return CheckResult("fail", f"dim g0 + dim g1 = {d.g0.dim + d.g1.dim} != dim g = {n}")
    for label, S, T, target in (
        ("[g0,g0] in g0", d.g0, d.g0, d.g0),
        ("[g0,g1] in g1", d.g0, d.g1, d.g1),
        ("[g1,g1] in g0", d.g1, d.g1, d.g0),
    ):
        bad = bracket_subspaces_within(L, S, T, target)
        if bad is not None:
            i, j, v = bad
            return CheckResult(
                "fail",
                f"{label} violated by basis pair ({i + 1}, {j + 1}): bracket {[str(x) for x in v]}",
                {"relation": label},
            )
    return CheckResult("pass")


def check_maximal_abelian(d: SymmetricDecomposition, a: Subspace) -> CheckResult:
    """[a, a] = 0 and the centralizer of a in g1 is a itself."""
    L = d.algebra
    if not is_subspace(a, d.g1):
        raise CartanError("a is not contained in g1")
    vs = a.vectors
    for i, j in itertools.combinations(range(len(vs)), 2):
        v = bracket(L, vs[i], vs[j])
        if any(v):
            return CheckResult("fail", f"a is not abelian: [a{i + 1}, a{j + 1}] != 0",
                               {"witness": [str(x) for x in v]})
    z = centralizer(L, a, carrier=d.g1)
    if z.dim != a.dim:
        for x in z.vectors:
            if not contains(a, x):
                return CheckResult(
                    "fail",
                    f"a extends: {[str(c) for c in x]} in g1 commutes with a but is not in a",
                    {"witness": [str(c) for c in x], "centralizer_dim": z.dim},
                )
    return CheckResult("pass", None, {"k": a.dim})


def _ordered_ints(r: int) -> list[int]:
    out = [0]
    for t in range(1, r + 1):
        out += [t, -t]
    return out


def _small_combinations(basis: Sequence[Vector], bound: int):
    """Nonzero integer combinations of ``basis`` by increasing max-norm."""
    k = len(basis)
    n = len(basis[0]) if basis else 0
    for r in range(1, bound + 1):
        for coeffs in itertools.product(_ordered_ints(r), repeat=k):
            if max(abs(c) for c in coeffs) != r:
                continue
            yield coeffs, tuple(sum((c * v[q] for c, v in zip(coeffs, basis)), Fraction(0)) for q in range(n))


def find_maximal_abelian(d: SymmetricDecomposition, bound: int = 3) -> Subspace:
    """Centralizer in g1 of a small-integer element, accepted once it is maximal abelian."""
    L = d.algebra
    for _, X in _small_combinations(d.g1.vectors, bound):
        z = centralizer(L, Subspace(L.dim, [X]), carrier=d.g1)
        if check_maximal_abelian(d, z).passed:
            return z
    raise CartanError("no maximal abelian subspace found among small-integer centralizers")


def _maps_into_bijectively(L: LieAlgebra, A: Vector, source: Subspace, target: Subspace) -> bool:
    images = [bracket(L, A, x) for x in source.vectors]
    if any(not contains(target, v) for v in images):
        return False
    return rank_of_vectors(images, L.dim) == source.dim == target.dim


def is_regular(L: LieAlgebra, A: Sequence, m: Subspace, b: Subspace) -> bool:
    """ad_A : m -> b and ad_A : b -> m are both isomorphisms."""
    A = vector(A)
    return _maps_into_bijectively(L, A, m, b) and _maps_into_bijectively(L, A, b, m)


def cartan_data(d: SymmetricDecomposition, a: Subspace | None = None, bound: int = 25) -> CartanData:
    L = d.algebra
    check = verify_decomposition(d)
    if not check.passed:
        raise CartanError(f"not a symmetric decomposition: {check.witness}")
    if not is_semisimple(L):
        raise CartanError("Killing form is degenerate; the algebra is not semisimple")
    a = a if a is not None else (d.a if d.a is not None else find_maximal_abelian(d))
    ma = check_maximal_abelian(d, a)
    if not ma.passed:
        raise CartanError(f"a is not maximal abelian in g1: {ma.witness}", ma.details.get("witness"))
    B = killing_form(L)
    m = intersect(killing_orthogonal(L, a, B), d.g1)
    g0a = centralizer(L, a, carrier=d.g0)
    b = intersect(d.g0, killing_orthogonal(L, g0a, B))
    n = complement(b, d.g0)
    if subspace_sum(a, m).dim != d.g1.dim:
        raise CartanError("g1 != a + m; the Killing form restricted to g1 is degenerate")
    if m.dim != b.dim:
        raise CartanError(f"dim m = {m.dim} but dim b = {b.dim}")
    regular: list[Vector] = []
    if a.dim:
        for _, A in _small_combinations(a.vectors, bound):
            if is_regular(L, A, m, b) and rank_of_vectors(regular + [A], L.dim) == len(regular) + 1:
                regular.append(A)
                if len(regular) == a.dim:
                    break
        if len(regular) < a.dim:
            raise CartanError(f"no regular basis of a with integer coordinates up to {bound}")
    return CartanData(L, d.g0, d.g1, a, m, b, n, g0a, tuple(regular))


def build_cartan_tableau(d: SymmetricDecomposition, a: Subspace | None = None,
                         data: CartanData | None = None) -> TableauSpec:
    """m embedded in Hom(a, b) by X -> -ad_X, in a regular basis of a."""
    cd = data if data is not None else cartan_data(d, a)
    L = cd.algebra
    gens = []
    for X in cd.m.vectors:
        cols = [cd.b.coordinates(tuple(-c for c in bracket(L, X, A))) for A in cd.regular_basis]
        gens.append(RatMatrix.from_columns(cols, cd.b.dim) if cols else RatMatrix.zeros(cd.b.dim, 0))
    names = tuple(f"v{mu + 1}" for mu in range(cd.m.dim))
    try:
        return TableauSpec(
            algebra=L,
            a_basis=cd.regular_basis,
            b_basis=tuple(cd.b.vectors),
            generators=tuple(gens),
            param_names=names,
            complement_basis=tuple(cd.m.vectors) + tuple(cd.n.vectors),
            name=f"cartan({d.name})" if d.name else "cartan",
        )
    except TableauError as exc:
        raise CartanError(f"embedding m -> Hom(a, b) is not injective: {exc}") from exc


@dataclass(frozen=True)
class CartanTableauReport:
    conditions: ConditionReport
    character_report: CharacterReport
    dim_m: int
    regular_flag_dims: tuple[int, ...]
    mu_maps: tuple[RatMatrix, ...]
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.conditions.overall and all(self.checks.values())


def mu_map(cd: CartanData, X: Sequence) -> RatMatrix:
    """mu_X as an element of Hom(a, m) in generator coordinates: [mu_X(A_j), A_1] = [X, A_j]."""
    L = cd.algebra
    dm, k = cd.m.dim, cd.k
    if k == 0 or dm == 0:
        return RatMatrix.zeros(dm, k)
    A1 = cd.regular_basis[0]
    M = RatMatrix.from_columns([bracket(L, Y, A1) for Y in cd.m.vectors], L.dim)
    cols = []
    for Aj in cd.regular_basis:
        y = solve(M, bracket(L, X, Aj))
        if y is None:
            raise CartanError("[., A_1] does not reach [X, A_j]; A_1 is not regular")
        cols.append(y)
    return RatMatrix.from_columns(cols, dm)


def verify_cartan_tableau(d: SymmetricDecomposition, a: Subspace | None = None, **flag_kw) -> CartanTableauReport:
    cd = cartan_data(d, a)
    T = build_cartan_tableau(d, data=cd)
    rep = characters(T, **flag_kw)
    cond = is_tableau_over(T, report=rep)
    dm = cd.m.dim
    regular_dims = tuple(filtration_dims(T, [[1 if c == r else 0 for c in range(T.k)] for r in range(T.k)])) \
        if T.k else (T.m,)
    mus = tuple(mu_map(cd, X) for X in cd.m.vectors)
    prol = prolongation(T)
    mus_in_kernel = all(all(not any(v) for v in rho(T, F).values()) for F in mus)
    mu_rank = rank_of_vectors([F.flatten() for F in mus], dm * T.k) if mus and T.k else 0
    chars = rep.characters
    checks = {
        "s1_equals_dim_m": (chars[0] == dm) if chars else dm == 0,
        "higher_characters_zero": all(s == 0 for s in chars[1:]),
        "prolongation_equals_dim_m": prol.dim == dm,
        "regular_flag_is_generic": regular_dims == rep.filtration_dims,
        "mu_injective": mu_rank == dm,
        "mu_image_in_prolongation": mus_in_kernel,
        "mu_image_equals_prolongation": mu_rank == prol.dim == rep.bound,
    }
    return CartanTableauReport(cond, rep, dm, regular_dims, mus, checks)

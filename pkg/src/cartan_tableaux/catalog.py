"""Exactly entered instances: sl(4,R) with the Wilczynski-adapted coframe,
the Fubini-Cartan tableau and its subtableaux, the affine Weingarten-like
family, and small symmetric decompositions.

Golden values in ``expected`` are the reference values; the regression tests
recompute every one of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .cartan import SymmetricDecomposition
from .lie import LieAlgebra, Subspace, direct_sum
from .linalg import RatMatrix, inverse, solve, to_fraction, unit_vector
from .pfaffian import Coframe
from .tableau import TableauSpec


def _mat_mul(x, y):
    n = len(x)
    return [[sum((x[i][t] * y[t][j] for t in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]


def commutator(x, y):
    xy, yx = _mat_mul(x, y), _mat_mul(y, x)
    return [[a - b for a, b in zip(r, s)] for r, s in zip(xy, yx)]


def elementary(n: int, i: int, j: int) -> list[list[Fraction]]:
    return [[Fraction(1 if (r, c) == (i, j) else 0) for c in range(n)] for r in range(n)]


def lie_algebra_from_matrices(mats: Sequence, names: Sequence[str]) -> LieAlgebra:
    """Structure constants of the span of ``mats`` under the commutator.

    The matrices must be linearly independent and closed under brackets.
    """
    flat = [[to_fraction(x) for row in m for x in row] for m in mats]
    size = len(flat[0])
    M = RatMatrix.from_columns(flat, size)
    entries = []
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            c = commutator(mats[a], mats[b])
            coords = solve(M, [x for row in c for x in row])
            if coords is None:
                raise ValueError(f"span is not closed: [{names[a]}, {names[b]}] leaves it")
            entries += [(a, b, k, v) for k, v in enumerate(coords) if v != 0]
    return LieAlgebra.from_brackets(names, entries)


def sl_basis(n: int) -> tuple[list, list[str]]:
    """E_ij (i != j) followed by H_i = E_ii - E_{i+1,i+1}."""
    mats, names = [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                mats.append(elementary(n, i, j))
                names.append(f"E{i + 1}{j + 1}")
    for i in range(n - 1):
        h = elementary(n, i, i)
        h[i + 1][i + 1] = Fraction(-1)
        mats.append(h)
        names.append(f"H{i + 1}")
    return mats, names


def sl_n(n: int) -> LieAlgebra:
    mats, names = sl_basis(n)
    return lie_algebra_from_matrices(mats, names)


def sl2() -> LieAlgebra:
    """sl(2,R) in the basis (e, h, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    return LieAlgebra.from_brackets(("e", "h", "f"), [(1, 0, 0, 2), (1, 2, 2, -2), (0, 2, 1, 1)])


def heisenberg() -> LieAlgebra:
    return LieAlgebra.from_brackets(("x", "y", "z"), [(0, 1, 2, 1)])


# --- sl(4,R) and the Wilczynski coframe ---------------------------------------

# (label, expression, [(coefficient, row, col)]) with theta^i_j(X) = X[i][j]
_WILCZYNSKI_FORMS = [
    ("alpha1", "θ^1_0", [(1, 1, 0)]),
    ("alpha2", "θ^2_0", [(1, 2, 0)]),
    ("beta1", "θ^0_0", [(1, 0, 0)]),
    ("beta2", "θ^1_1", [(1, 1, 1)]),
    ("beta3", "θ^0_1", [(1, 0, 1)]),
    ("beta4", "θ^0_2", [(1, 0, 2)]),
    ("beta5", "θ^0_3", [(1, 0, 3)]),
    ("gamma1", "θ^3_0", [(1, 3, 0)]),
    ("gamma2", "θ^2_0 - θ^3_1", [(1, 2, 0), (-1, 3, 1)]),
    ("gamma3", "θ^1_0 - θ^3_2", [(1, 1, 0), (-1, 3, 2)]),
    ("gamma4", "θ^1_1 + θ^2_2", [(1, 1, 1), (1, 2, 2)]),
    ("gamma5", "θ^1_0 - θ^2_1", [(1, 1, 0), (-1, 2, 1)]),
    ("gamma6", "θ^2_0 - θ^1_2", [(1, 2, 0), (-1, 1, 2)]),
    ("gamma7", "θ^0_1 - θ^2_3", [(1, 0, 1), (-1, 2, 3)]),
    ("gamma8", "θ^0_2 - θ^1_3", [(1, 0, 2), (-1, 1, 3)]),
]

SL4_NAMES = ("A1", "A2", "B1", "B2", "B3", "B4", "B5") + tuple(f"C{i}" for i in range(1, 9))


def _form_value(spec, X) -> Fraction:
    return sum((Fraction(c) * X[i][j] for c, i, j in spec), Fraction(0))


def wilczynski_dual_basis() -> list[list[list[Fraction]]]:
    """Trace-free 4x4 matrices (A1, A2, B1..B5, C1..C8) dual to the coframe."""
    std, _ = sl_basis(4)
    F = RatMatrix([[_form_value(spec, S) for S in std] for _, _, spec in _WILCZYNSKI_FORMS], cols=15)
    G = inverse(F)  # column t holds the std-coordinates of the t-th dual vector
    dual = []
    for t in range(15):
        D = [[Fraction(0)] * 4 for _ in range(4)]
        for u, S in enumerate(std):
            c = G[u, t]
            if c:
                for i in range(4):
                    for j in range(4):
                        D[i][j] += c * S[i][j]
        dual.append(D)
    return dual


def sl4_wilczynski() -> tuple[LieAlgebra, Coframe]:
    """sl(4,R) written in the basis dual to the Wilczynski-adapted coframe.

    The ambient basis *is* the adapted basis, so A_i, B_j, C_a are unit vectors.
    """
    dual = wilczynski_dual_basis()
    L = lie_algebra_from_matrices(dual, SL4_NAMES)
    frame = tuple(unit_vector(15, i) for i in range(15))
    coframe = Coframe(
        alpha=("alpha1", "alpha2"),
        beta=tuple(f"beta{j}" for j in range(1, 6)),
        gamma=tuple(f"gamma{a}" for a in range(1, 9)),
        frame=frame,
        expressions={label: expr for label, expr, _ in _WILCZYNSKI_FORMS},
    )
    return L, coframe


# --- the Fubini-Cartan tableau and its relatives ------------------------------

FUBINI_PARAMS = ("q1", "q2", "p1", "p2", "r1", "r2")
_H = Fraction(1, 2)
_TH = Fraction(3, 2)


def _gen(entries: dict[tuple[int, int], Fraction]) -> RatMatrix:
    """5 x 2 generator from {(B index 1..5, alpha index 1..2): coefficient}."""
    rows = [[Fraction(0)] * 2 for _ in range(5)]
    for (j, i), c in entries.items():
        rows[j - 1][i - 1] = Fraction(c)
    return RatMatrix(rows, cols=2)


FUBINI_GENERATORS = {
    "q1": _gen({(1, 1): -_TH, (2, 1): _H}),
    "q2": _gen({(1, 2): _TH, (2, 2): _H}),
    "p1": _gen({(4, 1): 1}),
    "p2": _gen({(3, 2): 1}),
    "r1": _gen({(3, 1): 1, (5, 2): 1}),
    "r2": _gen({(4, 2): 1, (5, 1): 1}),
}

_DISPLAY = {
    "a": ["A1", "A2"],
    "b": ["B1", "B2", "B3", "B4", "B5"],
    "c": [f"C{i}" for i in range(1, 9)],
    "alpha_latex": [r"\theta^{1}_{0}", r"\theta^{2}_{0}"],
}


def _sl4_tableau(name: str, gens: dict[str, RatMatrix], affine_base: RatMatrix | None = None) -> TableauSpec:
    L, _ = sl4_wilczynski()
    basis = [unit_vector(15, i) for i in range(15)]
    return TableauSpec(
        algebra=L,
        a_basis=tuple(basis[0:2]),
        b_basis=tuple(basis[2:7]),
        generators=tuple(gens.values()),
        affine_base=affine_base,
        param_names=tuple(gens.keys()),
        complement_basis=tuple(basis[7:15]),
        name=name,
        display=dict(_DISPLAY),
    )


def _pick(*names: str) -> dict[str, RatMatrix]:
    return {n: FUBINI_GENERATORS[n] for n in names}


def fubini_cartan() -> TableauSpec:
    """The 6-dimensional Fubini-Cartan tableau W; generator order (q1, q2, p1, p2, r1, r2)."""
    return _sl4_tableau("fubini_cartan", _pick(*FUBINI_PARAMS))


def godeaux_rozet(side: str = "first") -> TableauSpec:
    """W_GR: r2 = 0 (first) or r1 = 0 (second)."""
    if side == "first":
        return _sl4_tableau("godeaux_rozet_first", _pick("q1", "q2", "p1", "p2", "r1"))
    if side == "second":
        return _sl4_tableau("godeaux_rozet_second", _pick("q1", "q2", "p1", "p2", "r2"))
    raise ValueError("side must be 'first' or 'second'")


def demoulin() -> TableauSpec:
    return _sl4_tableau("demoulin", _pick("q1", "q2", "p1", "p2"))


def asympt_isothermic() -> TableauSpec:
    """W_AI: p1 = p2 = t, merged into the single generator B4 (x) alpha^1 + B3 (x) alpha^2."""
    g = dict(_pick("q1", "q2"))
    g["t"] = FUBINI_GENERATORS["p1"] + FUBINI_GENERATORS["p2"]
    g.update(_pick("r1", "r2"))
    return _sl4_tableau("asympt_isothermic", g)


def _affine_family(name: str, direction: tuple, b1, b2) -> TableauSpec:
    c, s = (to_fraction(x) for x in direction)
    if c == 0 and s == 0:
        raise ValueError("direction must be nonzero")
    b1, b2 = to_fraction(b1), to_fraction(b2)
    g = dict(_pick("q1", "q2"))
    g["t"] = FUBINI_GENERATORS["p1"].scale(c) + FUBINI_GENERATORS["p2"].scale(s)
    g.update(_pick("r1", "r2"))
    base = FUBINI_GENERATORS["p1"].scale(b1) + FUBINI_GENERATORS["p2"].scale(b2)
    return _sl4_tableau(name, g, affine_base=base)


def affine_weingarten(cos_a, sin_a, b1, b2) -> TableauSpec:
    """Affine tableau p1 = t cos a + b1, p2 = t sin a + b2 at a rational point of the circle."""
    c, s = to_fraction(cos_a), to_fraction(sin_a)
    if c * c + s * s != 1:
        raise ValueError("(cos_a, sin_a) must lie on the unit circle")
    return _affine_family(f"affine_weingarten({c},{s},{b1},{b2})", (c, s), b1, b2)


def constant_curvature(c) -> TableauSpec:
    """Member of the affine family with p1 + p2 = 1 + c/2.

    The direction (1, -1)/sqrt(2) is irrational; the tableau only depends on
    the line it spans, so the unnormalized direction (1, -1) is used.
    """
    c = to_fraction(c)
    return _affine_family(f"constant_curvature({c})", (1, -1), 1 + c / 2, 0)


def corrupted_fubini_cartan(which: int) -> TableauSpec:
    """One of five documented single-entry corruptions of W's generators."""
    name, gen, (j, i), value = CORRUPTIONS[which]
    gens = dict(FUBINI_GENERATORS)
    rows = gens[gen].tolist()
    rows[j - 1][i - 1] = Fraction(value)
    gens[gen] = RatMatrix(rows, cols=2)
    return _sl4_tableau(f"corrupted_{which}:{name}", gens)


# (description, generator, (B index, alpha index), new value)
CORRUPTIONS = [
    ("r1: drop the B5(x)alpha^2 entry", "r1", (5, 2), 0),
    ("q1: B2 coefficient 1/2 -> 1", "q1", (2, 1), 1),
    ("p1: add B5(x)alpha^1", "p1", (5, 1), 1),
    ("r2: B4(x)alpha^2 -> 2", "r2", (4, 2), 2),
    ("q2: B1 coefficient 3/2 -> -3/2", "q2", (1, 2), Fraction(-3, 2)),
]


def swapped_r1_fubini_cartan() -> TableauSpec:
    """W with the B3/B5 coefficients of the r1 generator swapped: r1 -> B5(x)a1 + B3(x)a2."""
    gens = dict(FUBINI_GENERATORS)
    gens["r1"] = _gen({(5, 1): 1, (3, 2): 1})
    return _sl4_tableau("fubini_cartan_swapped_r1", gens)


# --- symmetric decompositions ---------------------------------------------------


def _sym(n, i, j):
    m = elementary(n, i, j)
    m[j][i] += 1
    return m


def _skew(n, i, j):
    m = elementary(n, i, j)
    m[j][i] -= 1
    return m


def _coords(mats, basis_mats):
    flat = [[x for row in m for x in row] for m in basis_mats]
    M = RatMatrix.from_columns(flat, len(flat[0]))
    out = []
    for m in mats:
        c = solve(M, [x for row in m for x in row])
        if c is None:
            raise ValueError("matrix outside the algebra")
        out.append(c)
    return out


def sl3_so3() -> SymmetricDecomposition:
    """sl(3,R) = so(3) + symmetric traceless, with a = traceless diagonal."""
    mats, names = sl_basis(3)
    L = lie_algebra_from_matrices(mats, names)
    g0 = _coords([_skew(3, 0, 1), _skew(3, 0, 2), _skew(3, 1, 2)], mats)
    diag = [mats[6], mats[7]]
    g1 = _coords(diag + [_sym(3, 0, 1), _sym(3, 0, 2), _sym(3, 1, 2)], mats)
    a = _coords(diag, mats)
    return SymmetricDecomposition(L, Subspace(8, g0), Subspace(8, g1), Subspace(8, a), name="sl3_so3")


def sl2_so2() -> SymmetricDecomposition:
    """sl(2,R) in (e, h, f): g0 = span{e - f}, g1 = span{h, e + f}, a = span{h}."""
    L = sl2()
    g0 = Subspace(3, [(1, 0, -1)])
    g1 = Subspace(3, [(0, 1, 0), (1, 0, 1)])
    a = Subspace(3, [(0, 1, 0)])
    return SymmetricDecomposition(L, g0, g1, a, name="sl2_so2")


def sl2_so2_squared() -> SymmetricDecomposition:
    """(sl(2) + sl(2)) / (so(2) + so(2)), rank 2."""
    d = sl2_so2()
    L = direct_sum(d.algebra, d.algebra)

    def lift(S: Subspace, offset: int):
        return [tuple([0] * offset + list(v) + [0] * (3 - offset)) for v in S.vectors]

    g0 = Subspace(6, lift(d.g0, 0) + lift(d.g0, 3))
    g1 = Subspace(6, lift(d.g1, 0) + lift(d.g1, 3))
    a = Subspace(6, lift(d.a, 0) + lift(d.a, 3))
    return SymmetricDecomposition(L, g0, g1, a, name="sl2_so2_squared")


# --- registry ----------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str  # "algebra" | "tableau" | "decomposition"
    builder: Callable
    expected: dict = field(default_factory=dict)
    description: str = ""


CATALOG: dict[str, CatalogEntry] = {}


def _register(entry: CatalogEntry):
    CATALOG[entry.name] = entry


_register(CatalogEntry("sl4_wilczynski", "algebra", lambda: sl4_wilczynski()[0],
                       {"dim": 15}, "sl(4,R) in the Wilczynski-adapted basis"))
_register(CatalogEntry("sl2", "algebra", sl2, {"dim": 3}, "sl(2,R) in the basis (e, h, f)"))
_register(CatalogEntry("sl3", "algebra", lambda: sl_n(3), {"dim": 8}, "sl(3,R), basis E_ij, H_i"))
# golden values: dimension, s0, characters and prolongation (reference values)
_register(CatalogEntry("fubini_cartan", "tableau", fubini_cartan,
                       {"dim": 6, "s0": 13, "characters": [5, 1], "prolongation_dim": 7, "involutive": True},
                       "Fubini-Cartan tableau W"))
_register(CatalogEntry("godeaux_rozet_first", "tableau", lambda: godeaux_rozet("first"),
                       {"dim": 5, "s0": 13, "characters": [5, 0], "prolongation_dim": 5, "involutive": True},
                       "Godeaux-Rozet tableau, r2 = 0"))
_register(CatalogEntry("godeaux_rozet_second", "tableau", lambda: godeaux_rozet("second"),
                       {"dim": 5, "s0": 13, "characters": [5, 0], "prolongation_dim": 5, "involutive": True},
                       "Godeaux-Rozet tableau, r1 = 0"))
_register(CatalogEntry("demoulin", "tableau", demoulin,
                       {"dim": 4, "s0": 13, "characters": [4, 0], "prolongation_dim": 4, "involutive": True},
                       "Demoulin tableau, r1 = r2 = 0"))
_register(CatalogEntry("asympt_isothermic", "tableau", asympt_isothermic,
                       {"dim": 5, "s0": 13, "characters": [5, 0], "involutive": True},
                       "asymptotically-isothermic tableau, p1 = p2"))
_register(CatalogEntry("affine_weingarten_3_4", "tableau", lambda: affine_weingarten("3/5", "4/5", "1/2", "-1/3"),
                       {"dim": 5, "s0": 13, "characters": [5, 0], "involutive": True},
                       "affine family at (cos a, sin a) = (3/5, 4/5), b = (1/2, -1/3)"))
_register(CatalogEntry("affine_weingarten_axis", "tableau", lambda: affine_weingarten(1, 0, 0, 0),
                       {"dim": 5, "s0": 13, "characters": [5, 0], "involutive": True},
                       "affine family at a = 0, b1 = b2 = 0 (a linear subtableau)"))
_register(CatalogEntry("constant_curvature_2", "tableau", lambda: constant_curvature(2),
                       {"dim": 5, "s0": 13, "characters": [5, 0], "involutive": True},
                       "affine family p1 + p2 = 1 + c/2 with c = 2"))
_register(CatalogEntry("sl3_so3", "decomposition", sl3_so3,
                       {"dim_g": 8, "dim_g0": 3, "dim_g1": 5, "rank": 2, "dim_m": 3, "dim_b": 3},
                       "SL(3,R)/SO(3)"))
_register(CatalogEntry("sl2_so2", "decomposition", sl2_so2,
                       {"dim_g": 3, "dim_g0": 1, "dim_g1": 2, "rank": 1, "dim_m": 1, "dim_b": 1},
                       "SL(2,R)/SO(2)"))
_register(CatalogEntry("sl2_so2_squared", "decomposition", sl2_so2_squared,
                       {"dim_g": 6, "dim_g0": 2, "dim_g1": 4, "rank": 2, "dim_m": 2, "dim_b": 2},
                       "product of two copies of SL(2,R)/SO(2)"))

CATALOG_TABLEAUX = [name for name, e in CATALOG.items() if e.kind == "tableau"]


def build(name: str):
    try:
        entry = CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; try `catalog list`") from None
    return entry.builder()

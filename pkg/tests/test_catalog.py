from fractions import Fraction

import pytest

from cartan_tableaux import catalog
from cartan_tableaux.cartan import cartan_data
from cartan_tableaux.lie import check_jacobi
from cartan_tableaux.serialize import (
    InputError,
    algebra_from_json,
    decomposition_from_json,
    object_to_json,
    tableau_from_json,
)
from cartan_tableaux.tableau import characters, is_tableau_over


def test_wilczynski_dual_basis_is_dual_and_trace_free():
    dual = catalog.wilczynski_dual_basis()
    assert len(dual) == 15
    for t, (_, _, spec) in enumerate(catalog._WILCZYNSKI_FORMS):
        for u, D in enumerate(dual):
            assert catalog._form_value(spec, D) == (1 if t == u else 0)
    assert all(sum(D[i][i] for i in range(4)) == 0 for D in dual)


def test_sl4_coframe_labels():
    L, cf = catalog.sl4_wilczynski()
    assert check_jacobi(L) == []
    assert (len(cf.alpha), len(cf.beta), len(cf.gamma)) == (2, 5, 8)


@pytest.mark.parametrize("name", catalog.CATALOG_TABLEAUX)
def test_tableau_golden_values(name):
    entry = catalog.CATALOG[name]
    T = entry.builder()
    rep = characters(T)
    got = {"dim": T.m, "s0": rep.s0, "characters": list(rep.characters),
           "prolongation_dim": rep.prolongation_dim, "involutive": rep.involutive}
    assert {k: got[k] for k in entry.expected} == entry.expected
    assert is_tableau_over(T, report=rep).overall


@pytest.mark.parametrize("name", ["sl3_so3", "sl2_so2", "sl2_so2_squared"])
def test_decomposition_golden_values(name):
    entry = catalog.CATALOG[name]
    d = entry.builder()
    cd = cartan_data(d)
    got = {"dim_g": d.algebra.dim, "dim_g0": d.g0.dim, "dim_g1": d.g1.dim,
           "rank": cd.k, "dim_m": cd.m.dim, "dim_b": cd.b.dim}
    assert got == entry.expected


def test_godeaux_rozet_sides_share_a_profile():
    a, b = characters(catalog.godeaux_rozet("first")), characters(catalog.godeaux_rozet("second"))
    assert (a.s0, a.characters, a.prolongation_dim) == (b.s0, b.characters, b.prolongation_dim)


def test_corruptions_are_distinct_single_entry_edits():
    W = catalog.fubini_cartan()
    seen = set()
    for which, (_, gen, (j, i), value) in enumerate(catalog.CORRUPTIONS):
        T = catalog.corrupted_fubini_cartan(which)
        diffs = [(e, r, c) for e, (g, h) in enumerate(zip(W.generators, T.generators))
                 for r in range(5) for c in range(2) if g[r, c] != h[r, c]]
        assert len(diffs) == 1
        assert diffs[0][1:] == (j - 1, i - 1) and T.generators[diffs[0][0]][j - 1, i - 1] == Fraction(value)
        seen.add(diffs[0])
    assert len(seen) == 5


def test_swapped_r1_is_rejected():
    assert not is_tableau_over(catalog.swapped_r1_fubini_cartan()).overall


def test_unknown_entry():
    with pytest.raises(KeyError, match="catalog list"):
        catalog.build("nope")


# --- JSON round trips ---------------------------------------------------------------


@pytest.mark.parametrize("name", ["sl2", "sl4_wilczynski"])
def test_algebra_round_trip(name):
    L = catalog.build(name)
    assert algebra_from_json(object_to_json(L)) == L
    assert algebra_from_json(f"catalog:{name}") == L


@pytest.mark.parametrize("name", ["fubini_cartan", "constant_curvature_2"])
def test_tableau_round_trip(name):
    T = catalog.build(name)
    T2 = tableau_from_json(object_to_json(T))
    assert T2.generators == T.generators and T2.param_names == T.param_names
    assert T2.affine_base == T.affine_base
    assert characters(T2).characters == characters(T).characters


def test_decomposition_round_trip():
    d = catalog.sl3_so3()
    d2 = decomposition_from_json(object_to_json(d))
    assert (d2.g0, d2.g1, d2.a) == (d.g0, d.g1, d.a)


@pytest.mark.parametrize("bad", [
    {"kind": "tableau"},
    {"kind": "tableau", "algebra": "catalog:nope", "a_basis": [], "b_basis": [], "generators": []},
    {"kind": "tableau", "algebra": "sl2", "a_basis": [], "b_basis": [], "generators": []},
    {"kind": "tableau", "algebra": "catalog:sl2", "a_basis": [[0.5, 0, 0]], "b_basis": [], "generators": []},
])
def test_malformed_tableau_json(bad):
    with pytest.raises((InputError, ValueError)):
        tableau_from_json(bad)

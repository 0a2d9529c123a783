import io
import json
import subprocess
import sys

import pytest

from cartan_tableaux import catalog
from cartan_tableaux.cli import SEED_ENV, run
from cartan_tableaux.serialize import object_to_json


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def dump(tmp_path):
    def write(obj, name=None):
        data = object_to_json(catalog.build(obj) if isinstance(obj, str) else obj)
        path = tmp_path / f"{name or obj}.json"
        path.write_text(json.dumps(data))
        return str(path)
    return write


@pytest.fixture
def write_json(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(path)
    return write


# --- check-lie -----------------------------------------------------------------------


def test_check_lie_passes_on_sl4(dump):
    code, out, _ = call("check-lie", dump("sl4_wilczynski"))
    assert code == 0 and "jacobi: pass" in out and "dim: 15" in out


def test_check_lie_reports_violating_triple(write_json):
    path = write_json("bad.json", {"dim": 3, "basis": ["a", "b", "c"],
                                   "brackets": [[0, 1, 2, "1"], [1, 2, 0, "1"], [0, 2, 2, "1"]]})
    code, out, _ = call("check-lie", path)
    assert code == 1 and "violating triple (a, b, c)" in out


def test_check_lie_reports_antisymmetry(write_json):
    path = write_json("anti.json", {"dim": 2, "basis": ["a", "b"], "brackets": [[0, 1, 1, "1"], [1, 0, 1, "1"]]})
    code, out, _ = call("check-lie", path, "--format", "json")
    assert code == 1
    assert json.loads(out)["antisymmetric"] is False


@pytest.mark.parametrize("content", ["{not json", json.dumps({"dim": 2, "basis": ["a"], "brackets": []}),
                                     json.dumps({"dim": 2, "basis": ["a", "b"], "brackets": [[0, 1, 1, 0.5]]})])
def test_check_lie_input_errors(write_json, content):
    code, _, err = call("check-lie", write_json("x.json", content))
    assert code == 2 and "input error" in err


def test_missing_file_and_bad_arguments():
    assert call("check-lie", "/nonexistent.json")[0] == 2
    assert call()[0] == 2
    assert call("tableau", "bogus", "x")[0] == 2


# --- tableau -------------------------------------------------------------------------


def test_tableau_characters_text(dump):
    code, out, _ = call("tableau", "characters", dump("fubini_cartan"))
    assert code == 0 and out == "s0=13 s1=5 s2=1\n"


def test_tableau_prolong_and_involution(dump):
    assert call("tableau", "prolong", dump("fubini_cartan"))[1] == "dim A^(1) = 7\n"
    code, out, _ = call("tableau", "involution", dump("demoulin"))
    assert code == 0 and out == "involutive: true (4 = 4)\n"


def test_tableau_check_on_corruption(dump):
    path = dump(catalog.corrupted_fubini_cartan(2), "corrupt")
    code, out, _ = call("tableau", "check", path)
    assert code == 1
    assert "condition 1 (R_Q = 0): fail" in out and "witness:" in out
    data = json.loads(call("tableau", "check", path, "--format", "json")[1])
    assert data["condition1"]["status"] == "fail" and data["passed"] is False


def test_seed_flag_and_environment(dump, monkeypatch):
    path = dump("fubini_cartan")
    data = json.loads(call("tableau", "characters", path, "--format", "json", "--seed", "3")[1])
    assert data["flag"]["certificate"]["seed"] == 3
    monkeypatch.setenv(SEED_ENV, "5")
    data = json.loads(call("tableau", "characters", path, "--format", "json")[1])
    assert data["flag"]["certificate"]["seed"] == 5
    monkeypatch.setenv(SEED_ENV, "five")
    assert call("tableau", "characters", path)[0] == 2
    monkeypatch.delenv(SEED_ENV)
    assert call("tableau", "characters", path, "--seed", "-1")[0] == 2


def test_out_option(dump, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = call("tableau", "characters", dump("demoulin"), "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["characters"] == [4, 0]


def test_exact_flags(dump):
    data = json.loads(call("tableau", "characters", dump("asympt_isothermic"), "--exact-flags",
                           "--format", "json")[1])
    assert data["characters"] == [5, 0]


# --- cartan --------------------------------------------------------------------------


def test_cartan_verify(dump):
    code, out, _ = call("cartan", "verify", dump("sl3_so3"))
    assert code == 0 and "dim m = 3" in out and out.rstrip().endswith("verdict: pass")


def test_cartan_build_rejects_non_maximal_a(tmp_path):
    data = object_to_json(catalog.sl3_so3())
    data["a"] = [[0, 0, 0, 0, 0, 0, 1, 0]]
    path = tmp_path / "small_a.json"
    path.write_text(json.dumps(data))
    code, _, err = call("cartan", "build", str(path))
    assert code == 1 and "witness:" in err


def test_cartan_build_output_is_a_tableau(dump, tmp_path):
    code, out, _ = call("cartan", "build", dump("sl2_so2"), "--format", "json")
    assert code == 0
    path = tmp_path / "built.json"
    path.write_text(out)
    assert call("tableau", "characters", str(path))[1] == "s0=2 s1=1\n"


def test_wrong_document_kind(dump):
    assert call("cartan", "build", dump("fubini_cartan"))[0] == 2
    assert call("tableau", "characters", dump("sl2"))[0] == 2


# --- pfaffian ------------------------------------------------------------------------


def test_pfaffian_emit_formats(dump):
    path = dump("fubini_cartan")
    code, out, _ = call("pfaffian", "emit", path)
    assert code == 0 and "generators: 13  dim Y = 21" in out
    latex = call("pfaffian", "emit", path, "--format", "latex")[1]
    assert latex.startswith(r"\begin{align*}") and r"\eta^{5}" in latex


def test_pfaffian_emit_refuses_corruption(dump):
    code, _, err = call("pfaffian", "emit", dump(catalog.corrupted_fubini_cartan(0), "c0"))
    assert code == 1 and "condition (1)" in err


def test_pfaffian_torsion_and_cartan_test(dump):
    code, out, _ = call("pfaffian", "torsion", dump("fubini_cartan"))
    assert code == 0 and "T^1_12 = -p1 + p2" in out and "residual torsion 0" in out
    code, out, _ = call("pfaffian", "cartan-test", dump("godeaux_rozet_first"))
    assert code == 0 and out.splitlines()[0] == "(5,0) = (5,0), fiber 5"


def test_pfaffian_on_decomposition_uses_cartan_tableau(dump):
    code, out, _ = call("pfaffian", "cartan-test", dump("sl3_so3"))
    assert code == 0 and out.splitlines()[0] == "(3,0) = (3,0), fiber 3"


def test_gg0_and_residual(dump, write_json):
    path = dump("sl3_so3")
    code, out, _ = call("pfaffian", "gg0", path)
    assert code == 0 and "theta_b = [theta_a, V]" in out
    n = 4
    axes = [[i / 3 for i in range(n)]] * 2
    zero = write_json("zero.json", {"axes": axes, "V": [[[0, 0, 0]] * n] * n})
    code, out, _ = call("pfaffian", "residual", path, "--grid", zero)
    assert code == 0 and "max residual: 0" in out
    const = write_json("const.json", {"axes": axes, "V": [[[1, 1, 1]] * n] * n})
    assert call("pfaffian", "residual", path, "--grid", const, "--tol", "1e-9")[0] == 1
    tiny = write_json("tiny.json", {"axes": [[0, 1]] * 2, "V": [[[0, 0, 0]] * 2] * 2})
    assert call("pfaffian", "residual", path, "--grid", tiny)[0] == 2
    assert call("pfaffian", "residual", path)[0] == 2


# --- catalog --------------------------------------------------------------------------


def test_catalog_commands():
    code, out, _ = call("catalog", "list", "--format", "json")
    assert code == 0 and set(json.loads(out)) == set(catalog.CATALOG)
    code, out, _ = call("catalog", "report")
    assert code == 0 and "MISMATCH" not in out
    assert call("catalog", "dump", "nope")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cartan_tableaux.cli", "catalog", "list"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "fubini_cartan" in proc.stdout

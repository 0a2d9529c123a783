"""JSON interchange for algebras, tableaux, decompositions and grids.

Rationals are always written as strings ("-3/2"); reading accepts strings
and integers but never floats, except in G/G0 grids.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .cartan import SymmetricDecomposition
from .lie import LieAlgebra, Subspace
from .linalg import RatMatrix, fraction_str, to_fraction
from .tableau import TableauSpec


class InputError(ValueError):
    """Malformed or schema-violating input."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _q(x) -> str:
    return fraction_str(to_fraction(x))


def _rat(x, where: str) -> Fraction:
    try:
        return to_fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: {x!r} is not an exact rational") from exc


def _vectors(raw, n: int, where: str) -> list[tuple[Fraction, ...]]:
    if not isinstance(raw, list):
        raise InputError(f"{where}: expected a list of vectors")
    out = []
    for r, v in enumerate(raw):
        if not isinstance(v, list) or len(v) != n:
            raise InputError(f"{where}[{r}]: expected a vector of length {n}")
        out.append(tuple(_rat(x, f"{where}[{r}]") for x in v))
    return out


def _matrix(raw, rows: int, cols: int, where: str) -> RatMatrix:
    if not isinstance(raw, list) or len(raw) != rows or any(not isinstance(r, list) or len(r) != cols for r in raw):
        raise InputError(f"{where}: expected a {rows} x {cols} matrix")
    return RatMatrix([[_rat(x, where) for x in r] for r in raw], cols=cols)


# --- Lie algebras ------------------------------------------------------------


def algebra_to_json(L: LieAlgebra) -> dict:
    return {
        "dim": L.dim,
        "basis": list(L.basis_names),
        "brackets": [[i, j, k, _q(c)] for i, j, k, c in L.structure],
    }


def raw_brackets(data: dict) -> tuple[list[str], list[tuple[int, int, int, Fraction]]]:
    """Basis names and bracket entries, validated for shape but not antisymmetry."""
    if not isinstance(data, dict):
        raise InputError("algebra: expected a JSON object")
    n = data.get("dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InputError("algebra.dim must be a non-negative integer")
    names = data.get("basis", [f"e{i + 1}" for i in range(n)])
    if not isinstance(names, list) or len(names) != n or len(set(names)) != n:
        raise InputError("algebra.basis must list dim distinct names")
    entries = []
    for r, e in enumerate(data.get("brackets", [])):
        if not isinstance(e, list) or len(e) != 4:
            raise InputError(f"algebra.brackets[{r}]: expected [i, j, k, coefficient]")
        i, j, k, c = e
        for idx in (i, j, k):
            if not isinstance(idx, int) or isinstance(idx, bool) or not 0 <= idx < n:
                raise InputError(f"algebra.brackets[{r}]: index {idx!r} out of range 0..{n - 1}")
        entries.append((i, j, k, _rat(c, f"algebra.brackets[{r}]")))
    return [str(x) for x in names], entries


def algebra_from_json(data) -> LieAlgebra:
    if isinstance(data, str):
        return _catalog_algebra(data)
    names, entries = raw_brackets(data)
    try:
        return LieAlgebra.from_brackets(names, entries)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _catalog_algebra(ref: str) -> LieAlgebra:
    from . import catalog

    if not ref.startswith("catalog:"):
        raise InputError(f"algebra reference {ref!r} must look like 'catalog:<name>'")
    name = ref.split(":", 1)[1]
    try:
        obj = catalog.build(name)
    except KeyError as exc:
        raise InputError(str(exc)) from exc
    if isinstance(obj, LieAlgebra):
        return obj
    return obj.algebra


# --- tableaux ----------------------------------------------------------------


def tableau_to_json(T: TableauSpec) -> dict:
    out = {
        "kind": "tableau",
        "name": T.name,
        "algebra": algebra_to_json(T.algebra),
        "a_basis": [[_q(x) for x in v] for v in T.a_basis],
        "b_basis": [[_q(x) for x in v] for v in T.b_basis],
        "complement_basis": [[_q(x) for x in v] for v in T.complement],
        "generators": [[[_q(x) for x in row] for row in g.tolist()] for g in T.generators],
        "param_names": list(T.param_names),
    }
    if T.affine_base is not None:
        out["affine_base"] = [[_q(x) for x in row] for row in T.affine_base.tolist()]
    if T.display:
        out["display"] = {key: list(v) for key, v in T.display.items()}
    return out


def tableau_from_json(data) -> TableauSpec:
    if not isinstance(data, dict):
        raise InputError("tableau: expected a JSON object")
    if data.get("kind", "tableau") != "tableau":
        raise InputError(f"expected a tableau, got kind {data.get('kind')!r}")
    if "algebra" not in data:
        raise InputError("tableau.algebra is required")
    L = algebra_from_json(data["algebra"])
    n = L.dim
    a = _vectors(data.get("a_basis", []), n, "a_basis")
    b = _vectors(data.get("b_basis", []), n, "b_basis")
    gens = data.get("generators", [])
    if not isinstance(gens, list):
        raise InputError("generators: expected a list of h x k matrices")
    Q = [_matrix(g, len(b), len(a), f"generators[{e}]") for e, g in enumerate(gens)]
    base = data.get("affine_base")
    comp = data.get("complement_basis")
    try:
        return TableauSpec(
            algebra=L,
            a_basis=tuple(a),
            b_basis=tuple(b),
            generators=tuple(Q),
            affine_base=_matrix(base, len(b), len(a), "affine_base") if base is not None else None,
            param_names=tuple(data["param_names"]) if data.get("param_names") is not None else None,
            complement_basis=tuple(_vectors(comp, n, "complement_basis")) if comp is not None else None,
            name=str(data.get("name", "")),
            display={key: list(v) for key, v in data.get("display", {}).items()},
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# --- decompositions and grids ----------------------------------------------------


def decomposition_to_json(d: SymmetricDecomposition) -> dict:
    out = {
        "kind": "decomposition",
        "name": d.name,
        "algebra": algebra_to_json(d.algebra),
        "g0": [[_q(x) for x in v] for v in d.g0.vectors],
        "g1": [[_q(x) for x in v] for v in d.g1.vectors],
    }
    if d.a is not None:
        out["a"] = [[_q(x) for x in v] for v in d.a.vectors]
    return out


def decomposition_from_json(data) -> SymmetricDecomposition:
    if not isinstance(data, dict) or "algebra" not in data:
        raise InputError("decomposition: expected an object with an algebra")
    if data.get("kind", "decomposition") != "decomposition":
        raise InputError(f"expected a decomposition, got kind {data.get('kind')!r}")
    L = algebra_from_json(data["algebra"])
    n = L.dim
    g0 = Subspace(n, _vectors(data.get("g0", []), n, "g0"))
    g1 = Subspace(n, _vectors(data.get("g1", []), n, "g1"))
    a = Subspace(n, _vectors(data["a"], n, "a")) if data.get("a") is not None else None
    return SymmetricDecomposition(L, g0, g1, a, name=str(data.get("name", "")))


def grid_from_json(data) -> tuple[list[list[float]], list]:
    if not isinstance(data, dict) or "axes" not in data or "V" not in data:
        raise InputError('grid: expected {"axes": [[...]], "V": [...]}')
    axes = data["axes"]
    if not isinstance(axes, list) or any(not isinstance(ax, list) for ax in axes):
        raise InputError("grid.axes must be a list of coordinate lists")
    try:
        axes = [[float(_rat(x, "axes")) if isinstance(x, str) else float(x) for x in ax] for ax in axes]
    except (TypeError, ValueError) as exc:
        raise InputError(f"grid.axes: {exc}") from exc
    return axes, data["V"]


def object_to_json(obj) -> dict:
    if isinstance(obj, LieAlgebra):
        return algebra_to_json(obj)
    if isinstance(obj, TableauSpec):
        return tableau_to_json(obj)
    if isinstance(obj, SymmetricDecomposition):
        return decomposition_to_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def load_json(path: str | Path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc

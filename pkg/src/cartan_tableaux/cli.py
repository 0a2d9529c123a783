"""Command-line interface: ``cartan-tableaux <command> ...``.

Exit codes: 0 when every check passes, 1 on a mathematical failure, 2 on
unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import catalog
from .cartan import CartanError, build_cartan_tableau, cartan_data, verify_cartan_tableau
from .lie import LieAlgebra, check_jacobi
from .linalg import fraction_str
from .pfaffian import (
    PfaffianError,
    AbsorptionError,
    absorb_torsion,
    cartan_test,
    emit_gg0,
    emit_system,
    gg0_residual,
    structure_equations,
)
from .serialize import (
    InputError,
    decomposition_from_json,
    dumps,
    grid_from_json,
    load_json,
    object_to_json,
    raw_brackets,
    tableau_from_json,
    tableau_to_json,
)
from .tableau import (
    CheckResult,
    GenericFlagError,
    TableauError,
    characters,
    involution_test,
    is_tableau_over,
    prolongation,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
SEED_ENV = "CARTAN_TABLEAUX_SEED"


@dataclass(frozen=True)
class RunConfig:
    command: str
    paths: tuple[str, ...]
    format: str = "text"
    seed: int = 0
    flag_mode: str = "randomized"
    trials: int = 32

    @property
    def flag_kw(self) -> dict:
        return {"mode": self.flag_mode, "seed": self.seed, "trials": self.trials}


@dataclass
class Outcome:
    ok: bool
    data: dict
    text: str
    latex: str | None = None


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        seed = int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV}={raw!r} is not an integer") from None
    if seed < 0:
        raise InputError(f"{SEED_ENV} must be non-negative")
    return seed


def _check_dict(c: CheckResult) -> dict:
    out = {"status": c.status}
    if c.witness:
        out["witness"] = c.witness
    return out


def _flag_dict(flag) -> dict:
    return {
        "basis": [[fraction_str(x) for x in row] for row in flag.basis],
        "certificate": {k: v for k, v in flag.certificate.items()},
    }


def _chars_text(rep) -> str:
    return " ".join([f"s0={rep.s0}"] + [f"s{j}={s}" for j, s in enumerate(rep.characters, start=1)])


# --- commands ----------------------------------------------------------------


def cmd_check_lie(cfg: RunConfig) -> Outcome:
    names, entries = raw_brackets(load_json(cfg.paths[0]))
    issues, seen = [], {}
    for i, j, k, c in entries:
        if i == j and c != 0:
            issues.append(f"[{names[i]}, {names[i]}] has component {c} on {names[k]}")
            continue
        key, val = ((i, j, k), c) if i < j else ((j, i, k), -c)
        if key in seen and seen[key] != val:
            issues.append(f"c^{names[k]}_({names[key[0]]},{names[key[1]]}) given inconsistently")
        seen[key] = val
    if issues:
        return Outcome(False, {"dim": len(names), "antisymmetric": False, "antisymmetry_violations": issues,
                               "passed": False}, "antisymmetry: fail\n" + "\n".join(issues))
    L = LieAlgebra.from_brackets(names, entries)
    bad = check_jacobi(L)
    lines = [f"dim: {L.dim}", "antisymmetry: pass", f"jacobi: {'pass' if not bad else 'fail'}"]
    lines += [f"  violating triple ({names[i]}, {names[j]}, {names[k]})" for i, j, k in bad]
    data = {"dim": L.dim, "antisymmetric": True, "jacobi_violations": [[i, j, k] for i, j, k in bad],
            "passed": not bad}
    return Outcome(not bad, data, "\n".join(lines))


def _load_tableau(path: str):
    """A tableau document, or the Cartan tableau of a decomposition document."""
    data = load_json(path)
    if isinstance(data, dict) and data.get("kind") == "decomposition":
        return build_cartan_tableau(decomposition_from_json(data))
    return tableau_from_json(data)


def cmd_tableau(cfg: RunConfig, sub: str) -> Outcome:
    T = _load_tableau(cfg.paths[0])
    base = {"name": T.name, "dim": T.m, "k": T.k, "h": T.h, "s0": T.s0}
    if sub == "characters":
        rep = characters(T, **cfg.flag_kw)
        data = dict(base, characters=list(rep.characters), filtration_dims=list(rep.filtration_dims),
                    flag=_flag_dict(rep.flag))
        return Outcome(True, data, _chars_text(rep))
    if sub == "prolong":
        pr = prolongation(T.linear_part())
        data = dict(base, prolongation_dim=pr.dim,
                    basis=[[[fraction_str(x) for x in row] for row in F.tolist()] for F in pr.basis])
        return Outcome(True, data, f"dim A^(1) = {pr.dim}")
    if sub == "involution":
        rep = characters(T, **cfg.flag_kw)
        res = involution_test(T, report=rep)
        data = dict(base, characters=list(rep.characters), prolongation_dim=res.prolongation_dim,
                    bound=res.bound, involutive=res.involutive, identity_holds=res.identity_holds)
        rel = "=" if res.involutive else "<"
        text = f"involutive: {str(res.involutive).lower()} ({res.prolongation_dim} {rel} {res.bound})"
        return Outcome(res.involutive, data, text)
    if sub == "check":
        rep = characters(T, **cfg.flag_kw)
        cond = is_tableau_over(T, report=rep)
        conds = {"condition1": cond.condition1, "condition2": cond.condition2, "condition3": cond.condition3}
        data = dict(base, characters=list(rep.characters), prolongation_dim=rep.prolongation_dim,
                    bound=rep.bound, passed=cond.overall, **{k: _check_dict(v) for k, v in conds.items()})
        lines = []
        for label, what, c in (("condition 1", "R_Q = 0", cond.condition1),
                               ("condition 2", "tau_Q in Im rho", cond.condition2),
                               ("condition 3", "involutive", cond.condition3)):
            lines.append(f"{label} ({what}): {c.status}" + (f"\n  witness: {c.witness}" if c.witness else ""))
        lines.append(f"tableau over g: {'pass' if cond.overall else 'fail'}")
        return Outcome(cond.overall, data, "\n".join(lines))
    raise InputError(f"unknown tableau subcommand {sub!r}")


def cmd_cartan(cfg: RunConfig, sub: str) -> Outcome:
    d = decomposition_from_json(load_json(cfg.paths[0]))
    if sub == "build":
        T = build_cartan_tableau(d)
        data = tableau_to_json(T)
        text = dumps(data).rstrip("\n")
        return Outcome(True, data, text)
    if sub == "verify":
        r = verify_cartan_tableau(d, **cfg.flag_kw)
        c = r.conditions
        data = {
            "dim_m": r.dim_m,
            "characters": list(r.character_report.characters),
            "prolongation_dim": r.character_report.prolongation_dim,
            "regular_flag_dims": list(r.regular_flag_dims),
            "checks": dict(r.checks),
            "condition1": _check_dict(c.condition1),
            "condition2": _check_dict(c.condition2),
            "condition3": _check_dict(c.condition3),
            "passed": r.passed,
        }
        lines = [f"dim m = {r.dim_m}", _chars_text(r.character_report),
                 f"dim m^(1) = {r.character_report.prolongation_dim}"]
        lines += [f"{name}: {'pass' if ok else 'fail'}" for name, ok in r.checks.items()]
        lines.append(f"conditions: {c.condition1.status}, {c.condition2.status}, {c.condition3.status}")
        lines.append(f"verdict: {'pass' if r.passed else 'fail'}")
        return Outcome(r.passed, data, "\n".join(lines))
    raise InputError(f"unknown cartan subcommand {sub!r}")


def cmd_pfaffian(cfg: RunConfig, sub: str, grid: str | None = None, tol: float | None = None) -> Outcome:
    if sub in ("gg0", "residual"):
        d = decomposition_from_json(load_json(cfg.paths[0]))
        cd = cartan_data(d)
        if sub == "gg0":
            g = emit_gg0(cd)
            return Outcome(True, g.to_dict(), g.to_text(), g.to_latex())
        if grid is None:
            raise InputError("residual needs --grid")
        axes, V = grid_from_json(load_json(grid))
        try:
            res = gg0_residual(cd, axes, V)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        worst = max(res.values(), default=0.0)
        ok = tol is None or worst <= tol
        data = {"residual": {f"{i + 1},{j + 1}": v for (i, j), v in res.items()}, "max": worst,
                "tolerance": tol, "passed": ok}
        lines = [f"pair ({i + 1},{j + 1}): {v:.6e}" for (i, j), v in res.items()] or ["no pairs (k < 2)"]
        lines.append(f"max residual: {worst:.6e}" if worst else "max residual: 0")
        return Outcome(ok, data, "\n".join(lines))
    T = _load_tableau(cfg.paths[0])
    if sub == "emit":
        s = emit_system(T)
        return Outcome(True, s.to_dict(), s.to_text(), s.to_latex())
    if sub == "torsion":
        sd = structure_equations(T)
        try:
            sd = absorb_torsion(sd)
        except AbsorptionError as exc:
            data = dict(sd.to_dict(), error=str(exc))
            return Outcome(False, data, _torsion_text(sd) + f"\nabsorption: fail ({exc})")
        return Outcome(True, sd.to_dict(), _torsion_text(sd) + "\nabsorption: residual torsion 0")
    if sub == "cartan-test":
        r = cartan_test(T, seed=cfg.seed, mode=cfg.flag_mode, trials=cfg.trials)
        text = "\n".join([
            r.summary(),
            f"dim A^(1) = {r.prolongation_dim}, bound {r.bound}, fiber mode {r.fiber_mode}",
            f"involutive: {str(r.involutive).lower()}",
        ])
        return Outcome(r.passed, r.to_dict(), text)
    raise InputError(f"unknown pfaffian subcommand {sub!r}")


def _torsion_text(sd) -> str:
    lines = [f"convention: {sd.sign_convention}"]
    lines += [f"{k} = {v}" for k, v in sd.to_dict()["torsion"].items()] or ["T = 0"]
    if sd.absorption is not None:
        lines += [f"{k} = {v}" for k, v in sd.to_dict()["absorption"].items()]
    return "\n".join(lines)


def cmd_catalog(cfg: RunConfig, sub: str, name: str | None = None) -> Outcome:
    if sub == "list":
        data = {n: {"kind": e.kind, "description": e.description} for n, e in catalog.CATALOG.items()}
        text = "\n".join(f"{n:24s} {e.kind:14s} {e.description}" for n, e in catalog.CATALOG.items())
        return Outcome(True, data, text)
    if sub == "dump":
        if name not in catalog.CATALOG:
            raise InputError(f"unknown catalog entry {name!r}")
        data = object_to_json(catalog.build(name))
        return Outcome(True, data, dumps(data).rstrip("\n"))
    if sub == "report":
        rows, ok = {}, True
        for n, e in catalog.CATALOG.items():
            obj = e.builder()
            if e.kind == "tableau":
                rep = characters(obj, **cfg.flag_kw)
                got = {"dim": obj.m, "s0": rep.s0, "characters": list(rep.characters),
                       "prolongation_dim": rep.prolongation_dim, "involutive": rep.involutive}
            elif e.kind == "decomposition":
                cd = cartan_data(obj)
                got = {"dim_g": obj.algebra.dim, "dim_g0": obj.g0.dim, "dim_g1": obj.g1.dim,
                       "rank": cd.k, "dim_m": cd.m.dim, "dim_b": cd.b.dim}
            else:
                got = {"dim": obj.dim}
            match = all(got.get(key) == val for key, val in e.expected.items())
            ok &= match
            rows[n] = {"expected": e.expected, "computed": {k: got[k] for k in e.expected}, "match": match}
        text = "\n".join(f"{n}: {'ok' if r['match'] else 'MISMATCH'} {r['computed']}" for n, r in rows.items())
        return Outcome(ok, {"entries": rows, "passed": ok}, text)
    raise InputError(f"unknown catalog subcommand {sub!r}")


# --- argument parsing --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")
    common.add_argument("--seed", type=int, default=None,
                        help=f"random seed (default 0, or ${SEED_ENV})")
    common.add_argument("--trials", type=int, default=32, help="random flags sampled before escalating")
    common.add_argument("--exact-flags", action="store_true", help="certify generic flags symbolically")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="cartan-tableaux", description="Tableaux over Lie algebras and their Pfaffian systems.")
    cmds = p.add_subparsers(dest="command", required=True)

    c = cmds.add_parser("check-lie", parents=[common], help="antisymmetry and Jacobi identity")
    c.add_argument("path")

    t = cmds.add_parser("tableau", help="tableau engine")
    tsub = t.add_subparsers(dest="sub", required=True)
    for name in ("check", "characters", "prolong", "involution"):
        tsub.add_parser(name, parents=[common]).add_argument("path")

    ca = cmds.add_parser("cartan", help="Cartan tableaux of symmetric decompositions")
    csub = ca.add_subparsers(dest="sub", required=True)
    for name in ("build", "verify"):
        csub.add_parser(name, parents=[common]).add_argument("path")

    pf = cmds.add_parser("pfaffian", help="Pfaffian systems")
    psub = pf.add_subparsers(dest="sub", required=True)
    for name in ("emit", "torsion", "cartan-test", "gg0", "residual"):
        sp = psub.add_parser(name, parents=[common])
        sp.add_argument("path")
        if name == "residual":
            sp.add_argument("--grid", required=True, help='JSON {"axes": [[...]], "V": [...]}')
            sp.add_argument("--tol", type=float, default=None, help="fail when the max residual exceeds this")

    cat = cmds.add_parser("catalog", help="built-in examples")
    catsub = cat.add_subparsers(dest="sub", required=True)
    catsub.add_parser("list", parents=[common])
    catsub.add_parser("dump", parents=[common]).add_argument("name")
    catsub.add_parser("report", parents=[common])
    return p


def _render(out: Outcome, fmt: str) -> str:
    if fmt == "json":
        return dumps(out.data)
    if fmt == "latex" and out.latex is not None:
        return out.latex + "\n"
    return out.text + "\n"


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        seed = args.seed if args.seed is not None else _default_seed()
        if seed < 0:
            raise InputError("--seed must be non-negative")
        if args.trials < 1:
            raise InputError("--trials must be at least 1")
        paths = tuple(x for x in (getattr(args, "path", None),) if x)
        cfg = RunConfig(args.command, paths, args.format, seed,
                        "exact" if args.exact_flags else "randomized", args.trials)
        sub = getattr(args, "sub", None)
        if args.command == "check-lie":
            out = cmd_check_lie(cfg)
        elif args.command == "tableau":
            out = cmd_tableau(cfg, sub)
        elif args.command == "cartan":
            out = cmd_cartan(cfg, sub)
        elif args.command == "pfaffian":
            out = cmd_pfaffian(cfg, sub, getattr(args, "grid", None), getattr(args, "tol", None))
        else:
            out = cmd_catalog(cfg, sub, getattr(args, "name", None))
    except (InputError, TableauError) as exc:
        print(f"input error: {exc}", file=stderr)
        return EXIT_INPUT
    except (CartanError, PfaffianError) as exc:
        print(f"failed: {exc}", file=stderr)
        if exc.witness is not None:
            print(f"witness: {exc.witness}", file=stderr)
        return EXIT_FAIL
    except GenericFlagError as exc:
        print(f"failed: {exc}", file=stderr)
        return EXIT_FAIL
    text = _render(out, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return EXIT_OK if out.ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

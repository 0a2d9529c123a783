"""The linear Pfaffian system on G x A attached to a tableau.

Forms live over a fixed global coframe: indices 0..n-1 are the left-invariant
forms dual to the adapted basis (alpha, beta, gamma in that order) and index
n + eps is dp^eps (or pi^eps after torsion absorption).  A 1-form is a dict
index -> Poly, a 2-form a dict (u, v) -> Poly with u < v.

Sign convention: the Maurer-Cartan form satisfies d(theta) + 1/2 [theta ^ theta] = 0,
so d(omega^c) = -sum_{a<b} c^c_ab omega^a ^ omega^b.  With this convention the
torsion coefficient T^j_il of alpha^i ^ alpha^l (i < l) in d(eta^j) equals
-tau_Q(A_i, A_l)^j, which ``structure_equations`` asserts.
"""

from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .cartan import CartanData
from .lie import adjoint, bracket
from .linalg import RatMatrix, rank, rank_of_vectors, solve
from .poly import Poly, coefficient_vectors
from .tableau import (
    ConsistencyError,
    TableauSpec,
    _label,
    characters,
    curvature_condition,
    bracket_expansion,
    pairs,
    prolongation,
    torsion,
    torsion_condition,
)

SIGN_CONVENTION = "d(theta) + 1/2 [theta ^ theta] = 0; T^j_il = -tau_Q(A_i, A_l)^j"


class PfaffianError(ValueError):
    """A mathematical obstruction on the system side; ``witness`` names it."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class AbsorptionError(PfaffianError):
    pass


@dataclass(frozen=True)
class Coframe:
    alpha: tuple[str, ...]
    beta: tuple[str, ...]
    gamma: tuple[str, ...]
    frame: tuple
    expressions: dict = field(default_factory=dict)

    def __post_init__(self):
        labels = self.labels
        if len(labels) != len(self.frame):
            raise ValueError(f"{len(labels)} coframe labels for a frame of {len(self.frame)} vectors")
        if len(set(labels)) != len(labels):
            raise ValueError("coframe labels must be distinct")

    @property
    def labels(self) -> tuple[str, ...]:
        return self.alpha + self.beta + self.gamma


def coframe_for(T: TableauSpec) -> Coframe:
    """Coframe dual to the adapted basis (A, B, C) of ``T``."""
    alpha = tuple(f"alpha{i + 1}" for i in range(T.k))
    beta = tuple(f"beta{j + 1}" for j in range(T.h))
    gamma = tuple(f"gamma{a + 1}" for a in range(T.s))
    duals = [_label(T, "a", i) for i in range(T.k)] + [_label(T, "b", j) for j in range(T.h)] \
        + [_label(T, "c", a) for a in range(T.s)]
    labels = alpha + beta + gamma
    return Coframe(alpha, beta, gamma, tuple(T.adapted_matrix.row_list()),
                   {lab: f"dual to {d}" for lab, d in zip(labels, duals)})


# --- rendering ---------------------------------------------------------------


def _term_text(c: Poly, form: str, first: bool) -> str:
    if len(c.terms) == 1:
        neg = next(iter(c.terms.values())) < 0
        body = str(-c if neg else c)
        body = form if body == "1" else f"{body}*{form}"
        sign = "-" if neg else "+"
    else:
        body, sign = f"({c})*{form}", "+"
    if first:
        return body if sign == "+" else f"-{body}"
    return f" {sign} {body}"


def _term_latex(c: Poly, form: str) -> str:
    if len(c.terms) == 1:
        neg = next(iter(c.terms.values())) < 0
        body = (-c if neg else c).to_latex()
        body = form if body == "1" else rf"{body}\,{form}"
        return f" {'-' if neg else '+'} {body}"
    return rf" + \left({c.to_latex()}\right){form}"


def _latex_label(label: str) -> str:
    head = label.rstrip("0123456789")
    return rf"\{head}^{{{label[len(head):]}}}"


@dataclass(frozen=True)
class PfaffianSystem:
    """Generators eta^j = beta^j - Q^j_i(p) alpha^i and gamma^a, with omega = alpha^1 ^ ... ^ alpha^k."""

    tableau: TableauSpec
    coframe: Coframe
    eta: tuple[tuple[Poly, ...], ...]  # eta[j][i]: coefficient of alpha^i

    @property
    def config_dim(self) -> int:
        return self.tableau.n + self.tableau.m

    @property
    def generator_count(self) -> int:
        return len(self.eta) + len(self.coframe.gamma)

    def eta_text(self) -> list[str]:
        out = []
        for j, row in enumerate(self.eta):
            s = f"eta{j + 1} = {self.coframe.beta[j]}"
            for i, c in enumerate(row):
                if not c.is_zero():
                    s += _term_text(c, self.coframe.alpha[i], False)
            out.append(s)
        return out

    def eta_latex(self) -> list[str]:
        alpha_tex = self.tableau.display.get("alpha_latex") or [_latex_label(a) for a in self.coframe.alpha]
        out = []
        for j, row in enumerate(self.eta):
            s = rf"\eta^{{{j + 1}}} = {_latex_label(self.coframe.beta[j])}"
            for i, c in enumerate(row):
                if not c.is_zero():
                    s += _term_latex(c, alpha_tex[i])
            out.append(s)
        return out

    def to_text(self) -> str:
        lines = self.eta_text()
        lines += [f"{g} = 0" for g in self.coframe.gamma] if self.coframe.gamma else []
        lines.append("independence: " + " ^ ".join(self.coframe.alpha) + " != 0" if self.coframe.alpha
                     else "independence: none (k = 0)")
        lines.append(f"generators: {self.generator_count}  dim Y = {self.config_dim}")
        return "\n".join(lines)

    def to_latex(self) -> str:
        alpha_tex = self.tableau.display.get("alpha_latex") or [_latex_label(a) for a in self.coframe.alpha]
        lines = [r"\begin{align*}"]
        lines += [f"  {e} \\\\" for e in self.eta_latex()]
        if self.coframe.gamma:
            lines.append(rf"  \gamma^{{1}} = \cdots = \gamma^{{{len(self.coframe.gamma)}}} = 0 \\")
        lines.append("  " + r" \wedge ".join(alpha_tex) + r" \neq 0")
        lines.append(r"\end{align*}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "config_dim": self.config_dim,
            "eta": self.eta_text(),
            "gamma": list(self.coframe.gamma),
            "independence": list(self.coframe.alpha),
            "generator_count": self.generator_count,
        }


def emit_system(T: TableauSpec, coframe: Coframe | None = None, check: bool = True) -> PfaffianSystem:
    """The Pfaffian system of ``T``; by default refuses tableaux failing conditions (1) or (2)."""
    if check:
        ex = bracket_expansion(T)
        for label, res in (("condition (1)", curvature_condition(T, ex)), ("condition (2)", torsion_condition(T, ex))):
            if not res.passed:
                raise PfaffianError(f"{label} fails: {res.witness}", res.witness)
    cf = coframe if coframe is not None else coframe_for(T)
    if (len(cf.alpha), len(cf.beta), len(cf.gamma)) != (T.k, T.h, T.s):
        raise ValueError("coframe does not match the tableau dimensions")
    Q = T.symbolic_q()
    eta = tuple(tuple(-Q[j][i] for i in range(T.k)) for j in range(T.h))
    return PfaffianSystem(T, cf, eta)


# --- 2-form algebra over the global coframe ----------------------------------


def _wedge(f: Mapping[int, Poly], g: Mapping[int, Poly], zero: Poly) -> dict:
    out: dict = {}
    for u, a in f.items():
        for v, b in g.items():
            if u == v:
                continue
            key, sign = ((u, v), 1) if u < v else ((v, u), -1)
            prod = a * b
            out[key] = out.get(key, zero) + (prod if sign > 0 else -prod)
    return {kk: c for kk, c in out.items() if not c.is_zero()}


def _add_into(acc: dict, form: Mapping, scale=1) -> None:
    for key, c in form.items():
        acc[key] = acc[key] + c * scale if key in acc else c * scale


def _clean(form: dict) -> dict:
    return {kk: c for kk, c in sorted(form.items()) if not c.is_zero()}


def _substitute(form: Mapping, sub: Mapping[int, Mapping[int, Poly]], zero: Poly) -> dict:
    """Replace every basis 1-form e_u by sub[u] (identity when absent) in a 2-form."""
    out: dict = {}
    for (u, v), c in form.items():
        fu = sub.get(u, {u: zero + 1})
        fv = sub.get(v, {v: zero + 1})
        for kk, w in _wedge(fu, fv, zero).items():
            out[kk] = out.get(kk, zero) + c * w
    return _clean(out)


def _adapted_structure(T: TableauSpec) -> dict[int, dict[tuple[int, int], Fraction]]:
    """c^c_ab (a < b) of the adapted basis, grouped by c."""
    E = T.adapted_matrix.row_list()
    out: dict[int, dict] = {}
    for a in range(T.n):
        for b in range(a + 1, T.n):
            br = bracket(T.algebra, E[a], E[b])
            if not any(br):
                continue
            for c, v in enumerate(T.adapted_coordinates(br)):
                if v:
                    out.setdefault(c, {})[(a, b)] = v
    return out


def _d_basis(c: int, structure, zero: Poly) -> dict:
    return {key: zero - v for key, v in structure.get(c, {}).items()}


def _reduction(T: TableauSpec, Q, zero: Poly) -> dict[int, dict[int, Poly]]:
    """beta^j -> Q^j_i alpha^i and gamma^a -> 0, i.e. reduction modulo {I}."""
    sub = {}
    for j in range(T.h):
        sub[T.k + j] = {i: Q[j][i] for i in range(T.k) if not Q[j][i].is_zero()}
    for a in range(T.s):
        sub[T.k + T.h + a] = {}
    return sub


def _form_text(T: TableauSpec, form: Mapping, cf: Coframe) -> str:
    names = list(cf.labels) + [f"dp_{p}" for p in T.param_names]
    if not form:
        return "0"
    return " + ".join(f"({c})*{names[u]}^{names[v]}" for (u, v), c in form.items())


@dataclass(frozen=True)
class StructureData:
    system: PfaffianSystem
    d_eta: tuple[dict, ...]          # reduced mod {I}, in dp and alpha
    torsion: tuple[tuple[Poly, ...], ...]  # torsion[j][pair index], pairs i < l
    pi: tuple[tuple[tuple[Fraction, ...], ...], ...]  # pi[j][i][eps]: pi^j_i = sum_eps pi[j][i][eps] dp^eps
    absorption: tuple[tuple[Poly, ...], ...] | None = None  # x[eps][i]
    absorbed: bool = False
    sign_convention: str = SIGN_CONVENTION

    @property
    def tableau(self) -> TableauSpec:
        return self.system.tableau

    def torsion_component(self, j: int, i: int, l: int) -> Poly:
        T = self.tableau
        if i == l:
            return Poly.zero(T.param_names)
        if i > l:
            return -self.torsion_component(j, l, i)
        return self.torsion[j][pairs(T.k).index((i, l))]

    def to_dict(self) -> dict:
        T = self.tableau
        tor = {}
        for p, (i, l) in enumerate(pairs(T.k)):
            for j in range(T.h):
                if not self.torsion[j][p].is_zero():
                    tor[f"T^{j + 1}_{i + 1}{l + 1}"] = str(self.torsion[j][p])
        out = {"sign_convention": self.sign_convention, "torsion": tor, "absorbed": self.absorbed}
        if self.absorption is not None:
            out["absorption"] = {
                f"x^{e + 1}_{i + 1}": str(x)
                for e, row in enumerate(self.absorption) for i, x in enumerate(row) if not x.is_zero()
            }
        return out


def structure_equations(T: TableauSpec, system: PfaffianSystem | None = None) -> StructureData:
    """d(eta^j) and d(gamma^a) reduced modulo {I}; torsion read off and cross-checked."""
    system = system if system is not None else emit_system(T, check=False)
    vars_ = T.param_names
    zero = Poly.zero(vars_)
    n, k, h, m = T.n, T.k, T.h, T.m
    Q = T.symbolic_q()
    structure = _adapted_structure(T)
    sub = _reduction(T, Q, zero)

    for a in range(T.s):
        red = _substitute(_d_basis(k + h + a, structure, zero), sub, zero)
        if red:
            w = f"d{system.coframe.gamma[a]} = {_form_text(T, red, system.coframe)} mod {{I}}"
            raise PfaffianError(f"condition (1) fails on the system side: {w}", w)

    d_eta = []
    for j in range(h):
        form = _d_basis(k + j, structure, zero)
        for i in range(k):
            q = Q[j][i]
            for e, name in enumerate(vars_):
                dq = q.diff(name)
                if not dq.is_zero():
                    _add_into(form, _wedge({n + e: dq}, {i: zero + 1}, zero), -1)
            if not q.is_zero():
                _add_into(form, _d_basis(i, structure, zero), -q)
        d_eta.append(_substitute(_clean(form), sub, zero))

    prs = pairs(k)
    tors, pi = [], []
    for j, form in enumerate(d_eta):
        row = [zero] * len(prs)
        pij = [[Fraction(0)] * m for _ in range(k)]
        for (u, v), c in form.items():
            if v < k:
                row[prs.index((u, v))] = c
            elif u < k <= n <= v:
                # c * alpha^u ^ dp^eps = -c * dp^eps ^ alpha^u, and pi^j_u = -Q^j_{eps u} dp^eps
                if not c.is_constant():
                    raise ConsistencyError(f"dp ^ alpha coefficient {c} depends on p")
                pij[u][v - n] = -c.constant_term()
            else:
                raise ConsistencyError(f"unexpected term on ({u}, {v}) in reduced d eta{j + 1}")
        tors.append(tuple(row))
        pi.append(tuple(tuple(r) for r in pij))
        for i in range(k):
            for e, g in enumerate(T.generators):
                if pi[j][i][e] != -g[j, i]:
                    raise ConsistencyError(f"dp coefficient mismatch in d eta{j + 1}")

    # the system-side torsion must be minus the algebraic torsion tau_Q
    tau = torsion(T)
    for p, pr in enumerate(prs):
        for j in range(h):
            if tors[j][p] != -tau[pr][j]:
                raise ConsistencyError(f"T^{j + 1}_{pr[0] + 1}{pr[1] + 1} != -tau; sign convention broken")
    return StructureData(system, tuple(d_eta), tuple(tors), tuple(pi))


def _absorption_matrix(sd: StructureData) -> RatMatrix:
    """Linear map x -> (Q^j_{eps i} x^eps_l - Q^j_{eps l} x^eps_i) over rows (pair, j)."""
    T = sd.tableau
    k, h, m = T.k, T.h, T.m
    prs = pairs(k)
    rows = [[Fraction(0)] * (m * k) for _ in range(len(prs) * h)]
    for p, (i, l) in enumerate(prs):
        for j in range(h):
            r = rows[p * h + j]
            for e in range(m):
                # pi[j][i][e] = -Q^j_{e i}
                r[e * k + l] -= sd.pi[j][i][e]
                r[e * k + i] += sd.pi[j][l][e]
    return RatMatrix(rows, cols=m * k)


def absorb_torsion(sd: StructureData) -> StructureData:
    """Solve T + Q x - Q x = 0 coefficientwise in p, substitute dp = pi + x alpha, verify."""
    T = sd.tableau
    k, h, m, n = T.k, T.h, T.m, T.n
    vars_ = T.param_names
    zero = Poly.zero(vars_)
    prs = pairs(k)
    M = _absorption_matrix(sd)
    rhs = [-sd.torsion[j][p] for p in range(len(prs)) for j in range(h)]
    x = [[zero] * k for _ in range(m)]
    for mono, vec in coefficient_vectors(rhs).items():
        sol = solve(M, vec)
        if sol is None:
            raise AbsorptionError("torsion cannot be absorbed: condition (2) fails", mono)
        monomial = Poly(vars_, {mono: 1})
        for e in range(m):
            for i in range(k):
                if sol[e * k + i]:
                    x[e][i] = x[e][i] + monomial * sol[e * k + i]
    sub = {n + e: {n + e: zero + 1, **{i: x[e][i] for i in range(k) if not x[e][i].is_zero()}} for e in range(m)}
    for j, form in enumerate(sd.d_eta):
        new = _substitute(form, sub, zero)
        for (u, v), c in new.items():
            if v < k:
                raise ConsistencyError(f"residual torsion {c} on alpha{u + 1}^alpha{v + 1} in d eta{j + 1}")
    return dataclasses.replace(sd, absorption=tuple(tuple(r) for r in x), absorbed=True)


def _flag_columns(sd: StructureData, flag_basis) -> list[list[tuple[Fraction, ...]]]:
    """pi'^j_t = sum_i V[t][i] pi^j_i for the flag basis V, grouped by column t."""
    T = sd.tableau
    cols = []
    for row in flag_basis:
        col = []
        for j in range(T.h):
            col.append(tuple(sum((row[i] * sd.pi[j][i][e] for i in range(T.k)), Fraction(0)) for e in range(T.m)))
        cols.append(col)
    return cols


def reduced_characters(sd: StructureData, flag=None, **flag_kw) -> tuple[int, ...]:
    """s_j from the number of independent pi^j_i in the first j columns of the tableau matrix."""
    T = sd.tableau
    if T.k == 0:
        return ()
    if flag is None:
        flag = characters(T, **flag_kw).flag
    cols = _flag_columns(sd, flag.basis)
    out, prev, acc = [], 0, []
    for col in cols:
        acc += list(col)
        r = rank_of_vectors(acc, T.m) if T.m else 0
        out.append(r - prev)
        prev = r
    return tuple(out)


def integral_element_dim(sd: StructureData, point: Sequence) -> int | None:
    """Dimension of the integral elements over p = point (None when there are none)."""
    T = sd.tableau
    k, h, m, n = T.k, T.h, T.m, T.n
    prs = pairs(k)
    rows = [[Fraction(0)] * (m * k) for _ in range(len(prs) * h)]
    const = [Fraction(0)] * (len(prs) * h)
    for j, form in enumerate(sd.d_eta):
        for (u, v), c in form.items():
            val = c.evaluate(point) if T.m else c.constant_term()
            if val == 0:
                continue
            if v < k:
                const[prs.index((u, v)) * h + j] += val
            elif u < k <= n <= v:
                e = v - n
                for l in range(k):
                    if l == u:
                        continue
                    if u < l:
                        rows[prs.index((u, l)) * h + j][e * k + l] += val
                    else:
                        rows[prs.index((l, u)) * h + j][e * k + l] -= val
            else:
                raise ConsistencyError("reduced d eta is not linear in dp")
    M = RatMatrix(rows, cols=m * k)
    if not rows:
        return m * k
    if solve(M, [-c for c in const]) is None:
        return None
    return m * k - rank(M)


@dataclass(frozen=True)
class CartanTestReport:
    s0: int
    tableau_characters: tuple[int, ...]
    reduced_characters: tuple[int, ...]
    prolongation_dim: int
    bound: int
    fiber_dims: tuple[int | None, ...]
    fiber_dim: int | None
    fiber_mode: str
    absorbed: bool
    points: tuple[tuple[str, ...], ...]

    @property
    def characters_agree(self) -> bool:
        return self.tableau_characters == self.reduced_characters

    @property
    def fiber_agrees(self) -> bool:
        return self.fiber_dim == self.prolongation_dim

    @property
    def involutive(self) -> bool:
        return self.fiber_dim == self.bound

    @property
    def passed(self) -> bool:
        return self.characters_agree and self.fiber_agrees and self.involutive and self.absorbed

    @property
    def last_nonzero_character(self) -> int:
        return max((j for j, s in enumerate(self.reduced_characters, start=1) if s), default=0)

    def summary(self) -> str:
        t = ",".join(map(str, self.tableau_characters))
        r = ",".join(map(str, self.reduced_characters))
        rel = "=" if self.characters_agree else "!="
        return f"({t}) {rel} ({r}), fiber {self.fiber_dim}"

    def to_dict(self) -> dict:
        return {
            "s0": self.s0,
            "tableau_characters": list(self.tableau_characters),
            "reduced_characters": list(self.reduced_characters),
            "prolongation_dim": self.prolongation_dim,
            "bound": self.bound,
            "fiber_dims": list(self.fiber_dims),
            "fiber_dim": self.fiber_dim,
            "fiber_mode": self.fiber_mode,
            "absorbed": self.absorbed,
            "characters_agree": self.characters_agree,
            "involutive": self.involutive,
            "last_nonzero_character": self.last_nonzero_character,
            "points": [list(p) for p in self.points],
            "passed": self.passed,
        }


def _random_point(rng: random.Random, m: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(m))


def cartan_test(T: TableauSpec, seed: int = 0, points: int = 10, **flag_kw) -> CartanTestReport:
    """Cartan's test from the system side, compared against the tableau side."""
    rep = characters(T, seed=seed, **flag_kw)
    sd = structure_equations(T)
    try:
        sd = absorb_torsion(sd)
    except AbsorptionError:
        pass
    reduced = reduced_characters(sd, flag=rep.flag)
    rng = random.Random(seed)
    pts = [_random_point(rng, T.m) for _ in range(points)]
    dims = tuple(integral_element_dim(sd, p) for p in pts)
    if len(set(dims)) == 1 and dims[0] is not None:
        fiber, mode = dims[0], "sampled"
    else:
        # fiber dimension is p-independent once the torsion is absorbed
        mode = "symbolic"
        fiber = T.m * T.k - (rank(_absorption_matrix(sd)) if T.k >= 2 else 0) if sd.absorbed else None
    return CartanTestReport(
        s0=rep.s0,
        tableau_characters=rep.characters,
        reduced_characters=reduced,
        prolongation_dim=prolongation(T.linear_part()).dim,
        bound=rep.bound,
        fiber_dims=dims,
        fiber_dim=fiber,
        fiber_mode=mode,
        absorbed=sd.absorbed,
        points=tuple(tuple(str(c) for c in p) for p in pts),
    )


# --- the G/G0-system -----------------------------------------------------------


@dataclass(frozen=True)
class GG0System:
    """[A_i, V_xj] - [A_j, V_xi] - [[A_i, V], [A_j, V]] = 0 for V = sum v^mu X_mu in m."""

    data: CartanData
    variables: tuple[str, ...]
    pde: dict  # (i, j) -> ambient components, polynomials in v and v_x

    @property
    def unknowns(self) -> int:
        return self.data.m.dim

    def frame_equations(self) -> list[str]:
        k = self.data.k
        return [
            "theta_b = [theta_a, V]",
            "theta_m = 0",
            "theta_n = 0",
            "independence: " + " ^ ".join(f"theta_a^{i + 1}" for i in range(k)) + " != 0",
        ]

    def to_text(self) -> str:
        names = self.data.algebra.basis_names
        lines = self.frame_equations()
        for (i, j), comps in self.pde.items():
            lines.append(f"[A{i + 1}, V_x{j + 1}] - [A{j + 1}, V_x{i + 1}] = [[A{i + 1}, V], [A{j + 1}, V]]:")
            for c, p in enumerate(comps):
                if not p.is_zero():
                    lines.append(f"  {names[c]}: {p} = 0")
        return "\n".join(lines)

    def to_latex(self) -> str:
        names = self.data.algebra.basis_names
        lines = [r"\begin{align*}",
                 r"  \theta_{\mathfrak b} &= [\theta_{\mathfrak a}, V], \quad \theta_{\mathfrak m} = \theta_{\mathfrak n} = 0 \\"]
        for (i, j), comps in self.pde.items():
            for c, p in enumerate(comps):
                if not p.is_zero():
                    lines.append(rf"  0 &= {p.to_latex()} && ({names[c]},\ A_{i + 1}, A_{j + 1}) \\")
        lines.append(r"\end{align*}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        names = self.data.algebra.basis_names
        return {
            "frame_equations": self.frame_equations(),
            "unknowns": self.unknowns,
            "regular_basis": [[str(c) for c in A] for A in self.data.regular_basis],
            "m_basis": [[str(c) for c in X] for X in self.data.m.vectors],
            "pde": {
                f"{i + 1},{j + 1}": {names[c]: str(p) for c, p in enumerate(comps) if not p.is_zero()}
                for (i, j), comps in self.pde.items()
            },
        }


def gg0_variables(cd: CartanData) -> tuple[str, ...]:
    d, k = cd.m.dim, cd.k
    return tuple(f"v{mu + 1}" for mu in range(d)) + tuple(
        f"v{mu + 1}_x{i + 1}" for mu in range(d) for i in range(k))


def emit_gg0(cd: CartanData) -> GG0System:
    L = cd.algebra
    d, k, n = cd.m.dim, cd.k, L.dim
    vars_ = gg0_variables(cd)
    zero = Poly.zero(vars_)
    gens = Poly.gens(vars_)
    X = cd.m.vectors

    def combo(coeffs):
        return tuple(sum((coeffs[mu] * X[mu][q] for mu in range(d)), zero) for q in range(n))

    V = combo(gens[:d])
    Vx = [combo([gens[d + mu * k + i] for mu in range(d)]) for i in range(k)]
    A = [tuple(zero + c for c in a) for a in cd.regular_basis]
    pde = {}
    for i, j in pairs(k):
        lhs1 = bracket(L, A[i], Vx[j], zero=zero)
        lhs2 = bracket(L, A[j], Vx[i], zero=zero)
        rhs = bracket(L, bracket(L, A[i], V, zero=zero), bracket(L, A[j], V, zero=zero), zero=zero)
        pde[(i, j)] = tuple(a - b - c for a, b, c in zip(lhs1, lhs2, rhs))
    return GG0System(cd, vars_, pde)


def _structure_tensor(L) -> np.ndarray:
    n = L.dim
    C = np.zeros((n, n, n))
    for (i, j), comps in L.nonzero_pairs():
        for c, v in comps.items():
            C[i, j, c] = float(v)
            C[j, i, c] = -float(v)
    return C


def gg0_residual(cd: CartanData, axes: Sequence[Sequence[float]], V) -> dict[tuple[int, int], float]:
    """Max-norm of LHS - RHS over interior lattice points, per pair i < j.

    ``V`` has shape (len(axes[0]), ..., len(axes[k-1]), dim m) and holds the
    m-coordinates of V at each lattice point; derivatives are central
    differences.  Floating point is confined to this function.
    """
    L = cd.algebra
    k, d = cd.k, cd.m.dim
    if len(axes) != k:
        raise ValueError(f"expected {k} axes, got {len(axes)}")
    xs = [np.asarray(ax, dtype=float) for ax in axes]
    if any(len(x) < 3 for x in xs):
        raise ValueError("need at least 3 grid points per axis")
    V = np.asarray(V, dtype=float)
    if V.shape != tuple(len(x) for x in xs) + (d,):
        raise ValueError(f"V has shape {V.shape}, expected {tuple(len(x) for x in xs) + (d,)}")
    X = np.array([[float(c) for c in v] for v in cd.m.vectors]).reshape(d, L.dim)
    amb = V @ X
    ads = [np.array([[float(c) for c in r] for r in adjoint(L, A).tolist()]) for A in cd.regular_basis]
    C = _structure_tensor(L)
    interior = tuple(slice(1, -1) for _ in range(k))

    def deriv(i):
        lo = [slice(1, -1)] * k
        hi = [slice(1, -1)] * k
        lo[i], hi[i] = slice(None, -2), slice(2, None)
        shape = [1] * k + [1]
        shape[i] = len(xs[i]) - 2
        step = (xs[i][2:] - xs[i][:-2]).reshape(shape)
        return (amb[tuple(hi)] - amb[tuple(lo)]) / step

    Vi = amb[interior]
    D = [deriv(i) for i in range(k)]
    out = {}
    for i, j in pairs(k):
        lhs = D[j] @ ads[i].T - D[i] @ ads[j].T
        u, w = Vi @ ads[i].T, Vi @ ads[j].T
        rhs = np.einsum("...a,...b,abc->...c", u, w, C)
        out[(i, j)] = float(np.max(np.abs(lhs - rhs))) if lhs.size else 0.0
    return out

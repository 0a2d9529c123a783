"""Tableaux A in Hom(a, b) over a Lie algebra g.

Conventions used throughout:

* ``a_basis`` = (A_1..A_k) and ``b_basis`` = (B_1..B_h) are ambient vectors.
* A generator Q_eps is an h x k matrix with Q_eps(A_i) = sum_j Q_eps[j, i] B_j.
* Elements F of Hom(a, A) are m x k coefficient matrices, F(A_i) = sum_eps F[eps, i] Q_eps.
* 2-forms on a are stored over pairs (i, l) with i < l in lexicographic
  order; b-valued 2-forms are flattened as ``pair_index * h + j``.
* A flag is an ordered basis of a written in a_basis coordinates; its prefixes
  give the nested subspaces.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .lie import (
    LieAlgebra,
    Subspace,
    bracket,
    check_jacobi,
    complement_vectors,
    intersect,
    subspace_sum,
)
from .linalg import (
    RatMatrix,
    Vector,
    determinant,
    inverse,
    kernel_vectors,
    rank,
    rank_of_vectors,
    to_fraction,
    vector,
)
from .poly import Poly, PolyMatrix, linear_combination, poly_rank


class TableauError(ValueError):
    """Structurally invalid tableau input."""


class ConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagree."""


class GenericFlagError(RuntimeError):
    """Exact mode certified the generic dims but found no small witness flag."""

    def __init__(self, message: str, generic_dims: list[int]):
        super().__init__(message)
        self.generic_dims = generic_dims


def pairs(k: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(k), 2))


@dataclass(frozen=True, eq=False)
class TableauSpec:
    algebra: LieAlgebra
    a_basis: tuple[Vector, ...]
    b_basis: tuple[Vector, ...]
    generators: tuple[RatMatrix, ...]
    affine_base: RatMatrix | None = None
    param_names: tuple[str, ...] | None = None
    complement_basis: tuple[Vector, ...] | None = None
    name: str = ""
    display: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "a_basis", tuple(vector(v) for v in self.a_basis))
        object.__setattr__(self, "b_basis", tuple(vector(v) for v in self.b_basis))
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.param_names is None:
            object.__setattr__(self, "param_names", tuple(f"p{e + 1}" for e in range(len(self.generators))))
        else:
            object.__setattr__(self, "param_names", tuple(self.param_names))
        if self.complement_basis is not None:
            object.__setattr__(self, "complement_basis", tuple(vector(v) for v in self.complement_basis))
        self.validate()

    # sizes

    @property
    def n(self) -> int:
        return self.algebra.dim

    @property
    def k(self) -> int:
        return len(self.a_basis)

    @property
    def h(self) -> int:
        return len(self.b_basis)

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def s(self) -> int:
        return self.n - self.k - self.h

    @property
    def s0(self) -> int:
        """Generator count h + s of the associated Pfaffian system."""
        return self.h + self.s

    @property
    def a(self) -> Subspace:
        return Subspace(self.n, self.a_basis)

    @property
    def b(self) -> Subspace:
        return Subspace(self.n, self.b_basis)

    @property
    def is_affine(self) -> bool:
        return self.affine_base is not None and not self.affine_base.is_zero()

    def validate(self) -> None:
        n, k, h = self.n, self.k, self.h
        for v in self.a_basis + self.b_basis:
            if len(v) != n:
                raise TableauError(f"basis vector of length {len(v)} in a {n}-dimensional algebra")
        if self.a.dim != k:
            raise TableauError("a_basis is not linearly independent")
        if self.b.dim != h:
            raise TableauError("b_basis is not linearly independent")
        if intersect(self.a, self.b).dim != 0:
            raise TableauError("a and b intersect nontrivially")
        for q in self.generators:
            if q.shape != (h, k):
                raise TableauError(f"generator of shape {q.shape}, expected {(h, k)}")
        if self.affine_base is not None and self.affine_base.shape != (h, k):
            raise TableauError("affine base point has the wrong shape")
        if self.generators and rank_of_vectors([q.flatten() for q in self.generators], h * k) != self.m:
            raise TableauError("tableau generators are linearly dependent")
        if len(self.param_names) != self.m or len(set(self.param_names)) != self.m:
            raise TableauError("need one distinct parameter name per generator")
        if self.complement_basis is not None:
            if len(self.complement_basis) != self.s:
                raise TableauError("complement basis has the wrong size")
            full = Subspace(n, self.a_basis + self.b_basis + self.complement_basis)
            if full.dim != n:
                raise TableauError("complement basis does not complete a + b to g")

    # adapted basis

    @cached_property
    def complement(self) -> tuple[Vector, ...]:
        if self.complement_basis is not None:
            return self.complement_basis
        ab = subspace_sum(self.a, self.b)
        return tuple(complement_vectors(ab, Subspace.full(self.n)))

    @cached_property
    def adapted_matrix(self) -> RatMatrix:
        """Rows (A_1..A_k, B_1..B_h, C_1..C_s)."""
        rows = list(self.a_basis) + list(self.b_basis) + list(self.complement)
        return RatMatrix(rows, cols=self.n)

    @cached_property
    def _to_adapted(self) -> RatMatrix:
        return inverse(self.adapted_matrix)

    def adapted_coordinates(self, v: Sequence) -> Vector:
        """Coordinates of an ambient vector in (A, B, C)."""
        Pinv = self._to_adapted
        return tuple(sum((v[q] * Pinv[q, t] for q in range(self.n)), Fraction(0)) for t in range(self.n))

    def adapted_coordinates_poly(self, v: Sequence[Poly]) -> tuple[Poly, ...]:
        Pinv = self._to_adapted
        return tuple(linear_combination(Pinv.column(t), v, self.param_names) for t in range(self.n))

    def with_generators(self, generators, **kw) -> TableauSpec:
        fields = dict(
            algebra=self.algebra,
            a_basis=self.a_basis,
            b_basis=self.b_basis,
            generators=tuple(generators),
            affine_base=self.affine_base,
            param_names=None,
            complement_basis=self.complement_basis,
            name=self.name,
            display=self.display,
        )
        fields.update(kw)
        return TableauSpec(**fields)

    def linear_part(self) -> TableauSpec:
        if self.affine_base is None:
            return self
        return self.with_generators(self.generators, affine_base=None, param_names=self.param_names)

    def symbolic_q(self) -> list[list[Poly]]:
        """Q = Q_0 + sum p_eps Q_eps as an h x k matrix of polynomials."""
        vars_ = self.param_names
        ps = Poly.gens(vars_)
        out = []
        for j in range(self.h):
            row = []
            for i in range(self.k):
                c = self.affine_base[j, i] if self.affine_base is not None else 0
                terms = Poly.const(c, vars_)
                for e, q in enumerate(self.generators):
                    if q[j, i] != 0:
                        terms = terms + ps[e] * q[j, i]
                row.append(terms)
            out.append(row)
        return out


@dataclass(frozen=True)
class Flag:
    basis: tuple[tuple[Fraction, ...], ...]
    certificate: dict

    def ambient_basis(self, T: TableauSpec) -> list[Vector]:
        return [
            tuple(sum((c * A[q] for c, A in zip(row, T.a_basis)), Fraction(0)) for q in range(T.n))
            for row in self.basis
        ]


@dataclass(frozen=True)
class ProlongationResult:
    basis: tuple[RatMatrix, ...]
    dim: int


@dataclass(frozen=True)
class CharacterReport:
    s0: int
    characters: tuple[int, ...]
    filtration_dims: tuple[int, ...]
    prolongation_dim: int
    bound: int
    involutive: bool
    top_filtration_zero: bool
    flag: Flag


@dataclass(frozen=True)
class InvolutionResult:
    prolongation_dim: int
    bound: int
    involutive: bool
    identity_holds: bool


@dataclass(frozen=True)
class CheckResult:
    status: str  # "pass" | "fail" | "precondition-failed"
    witness: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass(frozen=True)
class ConditionReport:
    condition1: CheckResult
    condition2: CheckResult
    condition3: CheckResult

    @property
    def overall(self) -> bool:
        return self.condition1.passed and self.condition2.passed and self.condition3.passed


# --- the map rho and the first prolongation ---------------------------------


def rho_matrix(T: TableauSpec) -> RatMatrix:
    """Matrix of rho : Hom(a, A) -> b (x) Lambda^2 a*, columns indexed eps * k + i."""
    k, h, m = T.k, T.h, T.m
    prs = pairs(k)
    rows = [[Fraction(0)] * (m * k) for _ in range(len(prs) * h)]
    half = Fraction(1, 2)
    for e, q in enumerate(T.generators):
        for i in range(k):
            col = e * k + i
            for p, (u, w) in enumerate(prs):
                # F(A_u)(A_w) - F(A_w)(A_u) with F(A_i) = Q_e
                for j in range(h):
                    val = Fraction(0)
                    if u == i:
                        val += q[j, w]
                    if w == i:
                        val -= q[j, u]
                    if val:
                        rows[p * h + j][col] = half * val
    return RatMatrix(rows, cols=m * k)


def rho(T: TableauSpec, F: RatMatrix) -> dict[tuple[int, int], Vector]:
    """rho(F) as {(i, l): b-coordinates} over pairs i < l."""
    if F.shape != (T.m, T.k):
        raise TableauError(f"F must be {T.m} x {T.k}, got {F.shape}")
    flat = rho_matrix(T) @ F.flatten() if T.k >= 2 else ()
    return {pr: tuple(flat[p * T.h:(p + 1) * T.h]) for p, pr in enumerate(pairs(T.k))}


def image_of_rho(T: TableauSpec) -> Subspace:
    R = rho_matrix(T)
    dim = len(pairs(T.k)) * T.h
    return Subspace(dim, R.column_list()) if R.cols else Subspace.zero(dim)


def _symmetric_route_dim(T: TableauSpec) -> int:
    """dim of (A (x) a*) cap (b (x) S^2 a*) inside b (x) a* (x) a*."""
    k, h = T.k, T.h
    size = h * k * k

    def idx(j, i, l):
        return (j * k + i) * k + l

    images = []
    for e, q in enumerate(T.generators):
        for l in range(k):
            # F = Q_e (x) alpha^l, tensor entry (j, i, l) = Q_e[j, i]
            v = [Fraction(0)] * size
            for j in range(h):
                for i in range(k):
                    v[idx(j, i, l)] = q[j, i]
            images.append(v)
    sym = []
    for j in range(h):
        for i in range(k):
            for l in range(i, k):
                v = [Fraction(0)] * size
                v[idx(j, i, l)] += 1
                if l != i:
                    v[idx(j, l, i)] += 1
                sym.append(v)
    d1 = rank_of_vectors(images, size)
    d2 = rank_of_vectors(sym, size)
    d12 = rank_of_vectors(images + sym, size)
    return d1 + d2 - d12


def prolongation(T: TableauSpec) -> ProlongationResult:
    """Kernel of rho, cross-checked against the symmetric-tensor intersection."""
    T = T.linear_part()
    k, m = T.k, T.m
    if m == 0 or k == 0:
        basis: list[RatMatrix] = []
    elif k == 1:
        basis = [RatMatrix([[1 if r == e else 0] for r in range(m)], cols=1) for e in range(m)]
    else:
        vecs = kernel_vectors(rho_matrix(T))
        basis = [RatMatrix([v[e * k:(e + 1) * k] for e in range(m)], cols=k) for v in vecs]
    other = _symmetric_route_dim(T)
    if other != len(basis):
        raise ConsistencyError(f"prolongation: ker rho has dim {len(basis)}, symmetric route gives {other}")
    return ProlongationResult(tuple(basis), len(basis))


# --- filtrations, flags and characters ---------------------------------------


def _restriction_rows(T: TableauSpec, flag_vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    """Linear conditions on generator coefficients for Q to vanish on the given vectors of a."""
    rows = []
    for v in flag_vectors:
        images = [q @ v for q in T.generators]  # each an h-vector
        for j in range(T.h):
            rows.append([img[j] for img in images])
    return rows


def filtration_dims(T: TableauSpec, flag_basis: Sequence[Sequence]) -> list[int]:
    """[dim A_0, dim A_1, ..., dim A_k] for the flag spanned by prefixes of flag_basis."""
    T = T.linear_part()
    fb = [vector(v) for v in flag_basis]
    if len(fb) != T.k or (T.k and rank_of_vectors(fb, T.k) != T.k):
        raise TableauError("flag basis must be k independent vectors in a_basis coordinates")
    dims = [T.m]
    rows: list[list[Fraction]] = []
    for v in fb:
        rows += _restriction_rows(T, [v])
        dims.append(T.m - (rank(RatMatrix(rows, cols=T.m)) if T.m else 0))
    return dims


def _random_invertible(rng: random.Random, k: int, lo: int = -9, hi: int = 9) -> tuple[tuple[Fraction, ...], ...]:
    while True:
        M = tuple(tuple(Fraction(rng.randint(lo, hi)) for _ in range(k)) for _ in range(k))
        if determinant(RatMatrix(M, cols=k)) != 0:
            return M


def certified_generic_dims(T: TableauSpec) -> list[int]:
    """Generic filtration dims from ranks over a rational function field.

    For each j the subspace a_j is parametrized by the chart of row spaces
    [I_j | X] with X a j x (k - j) matrix of indeterminates; the rank over
    Q(X) equals the maximal rank over all specializations.
    """
    T = T.linear_part()
    k, m, h = T.k, T.m, T.h
    dims = [m]
    for j in range(1, k + 1):
        names = [f"x{r}_{c}" for r in range(j) for c in range(j, k)]
        xs = dict(zip(names, Poly.gens(names)))
        rows = []
        for r in range(j):
            v = [Poly.const(1 if c == r else 0, names) for c in range(j)]
            v += [xs[f"x{r}_{c}"] for c in range(j, k)]
            for jj in range(h):
                row = []
                for q in T.generators:
                    entry = Poly.zero(names)
                    for i in range(k):
                        if q[jj, i] != 0:
                            entry = entry + v[i] * q[jj, i]
                    row.append(entry)
                rows.append(row)
        rk = poly_rank(PolyMatrix(rows, names, cols=m)) if m else 0
        dims.append(m - rk)
    return dims


def _integer_flags(k: int, bound: int):
    for r in range(1, bound + 1):
        for entries in itertools.product(range(-r, r + 1), repeat=k * k):
            if max(abs(x) for x in entries) != r:
                continue
            M = tuple(tuple(Fraction(entries[i * k + c]) for c in range(k)) for i in range(k))
            if determinant(RatMatrix(M, cols=k)) != 0:
                yield M


def _exact_flag(T: TableauSpec, seed: int, trials: int, candidates, escalated: bool,
                search_bound: int = 3, search_limit: int = 20000) -> Flag:
    target = certified_generic_dims(T)
    cert = {
        "mode": "exact",
        "generic_dims": target,
        "escalated": escalated,
        "seed": seed,
        "trials": trials,
    }
    for V in sorted(candidates):
        if filtration_dims(T, V) == target:
            return Flag(V, {**cert, "witness": "trial"})
    for count, V in enumerate(_integer_flags(T.k, search_bound)):
        if count >= search_limit:
            break
        if filtration_dims(T, V) == target:
            return Flag(V, {**cert, "witness": "search"})
    raise GenericFlagError(
        f"no integer flag with entries in [-{search_bound}, {search_bound}] attains the generic dims {target}; "
        "retry with another seed",
        target,
    )


def generic_flag(T: TableauSpec, mode: str = "randomized", seed: int = 0, trials: int = 32,
                 strict: bool = False) -> Flag:
    """A flag of a minimizing every filtration dimension.

    Randomized mode samples ``trials`` integer flags with entries in [-9, 9]
    and escalates to exact mode whenever two samples disagree; exact mode
    certifies the generic dims symbolically and then looks for a witness.
    Among flags attaining the minimum the lexicographically smallest basis wins.
    """
    T = T.linear_part()
    k = T.k
    if mode not in ("randomized", "exact"):
        raise ValueError(f"unknown flag mode {mode!r}")
    if trials < 1:
        raise ValueError("trials must be positive")
    if k == 0:
        return Flag((), {"mode": "trivial", "dims": [T.m]})
    if k == 1:
        V = ((Fraction(1),),)
        return Flag(V, {"mode": "trivial", "dims": filtration_dims(T, V)})
    if mode == "exact" or strict:
        return _exact_flag(T, seed, trials, [], escalated=False)
    rng = random.Random(seed)
    samples = []
    for _ in range(trials):
        V = _random_invertible(rng, k)
        samples.append((V, tuple(filtration_dims(T, V))))
    distinct = {d for _, d in samples}
    if len(distinct) == 1:
        best = min(V for V, _ in samples)
        return Flag(best, {"mode": "randomized", "seed": seed, "trials": trials,
                           "dims": list(samples[0][1])})
    return _exact_flag(T, seed, trials, [V for V, _ in samples], escalated=True)


def characters(T: TableauSpec, mode: str = "randomized", seed: int = 0, trials: int = 32,
               strict: bool = False, flag: Flag | None = None) -> CharacterReport:
    """Characters s'_1..s'_k from a generic flag, plus the involutivity verdict.

    Affine tableaux are analysed through their linear part.
    """
    L = T.linear_part()
    flag = flag if flag is not None else generic_flag(L, mode=mode, seed=seed, trials=trials, strict=strict)
    dims = filtration_dims(L, flag.basis) if L.k else [L.m]
    chars = tuple(dims[j - 1] - dims[j] for j in range(1, L.k + 1))
    prol = prolongation(L).dim
    bound = sum(j * s for j, s in enumerate(chars, start=1))
    return CharacterReport(
        s0=T.s0,
        characters=chars,
        filtration_dims=tuple(dims),
        prolongation_dim=prol,
        bound=bound,
        involutive=prol == bound,
        top_filtration_zero=dims[-1] == 0,
        flag=flag,
    )


def involution_test(T: TableauSpec, report: CharacterReport | None = None, **flag_kw) -> InvolutionResult:
    """Both sides of dim A^(1) <= s'_1 + 2 s'_2 + ... + k s'_k."""
    rep = report if report is not None else characters(T, **flag_kw)
    dims = rep.filtration_dims
    identity = rep.bound == sum(dims[:-1]) if len(dims) > 1 else rep.bound == 0
    if rep.prolongation_dim > rep.bound:
        raise ConsistencyError(
            f"inequality violated: dim A^(1) = {rep.prolongation_dim} > {rep.bound}; flag was not generic?"
        )
    return InvolutionResult(rep.prolongation_dim, rep.bound, rep.involutive, identity)


# --- conditions (1) and (2) --------------------------------------------------


@dataclass(frozen=True)
class BracketExpansion:
    """[A_i + Q(A_i), A_l + Q(A_l)] split along a + b + complement, per pair i < l."""

    variables: tuple[str, ...]
    a_part: dict
    b_part: dict
    c_part: dict


def bracket_expansion(T: TableauSpec) -> BracketExpansion:
    vars_ = T.param_names
    zero = Poly.zero(vars_)
    Q = T.symbolic_q()
    n = T.n
    X = []
    for i in range(T.k):
        comp = [Poly.const(T.a_basis[i][q], vars_) for q in range(n)]
        for j in range(T.h):
            Bj = T.b_basis[j]
            qji = Q[j][i]
            if qji.is_zero():
                continue
            for q in range(n):
                if Bj[q] != 0:
                    comp[q] = comp[q] + qji * Bj[q]
        X.append(tuple(comp))
    a_part, b_part, c_part = {}, {}, {}
    for i, l in pairs(T.k):
        amb = bracket(T.algebra, X[i], X[l], zero=zero)
        coords = T.adapted_coordinates_poly(amb)
        a_part[(i, l)] = coords[: T.k]
        b_part[(i, l)] = coords[T.k: T.k + T.h]
        c_part[(i, l)] = coords[T.k + T.h:]
    return BracketExpansion(vars_, a_part, b_part, c_part)


def _label(T: TableauSpec, kind: str, idx: int) -> str:
    names = T.display.get(kind)
    if names:
        return names[idx]
    return {"a": "A", "b": "B", "c": "C"}[kind] + str(idx + 1)


def curvature_condition(T: TableauSpec, expansion: BracketExpansion | None = None) -> CheckResult:
    """R_Q = 0 for all Q in the (affine) family, checked as polynomial identities."""
    ex = expansion if expansion is not None else bracket_expansion(T)
    for (i, l), comps in ex.c_part.items():
        for a, poly in enumerate(comps):
            if not poly.is_zero():
                w = f"R(A{i + 1},A{l + 1}) has component {poly} along {_label(T, 'c', a)}"
                return CheckResult("fail", w, {"pair": [i + 1, l + 1], "direction": a + 1, "polynomial": str(poly)})
    return CheckResult("pass")


def torsion(T: TableauSpec, expansion: BracketExpansion | None = None) -> dict[tuple[int, int], tuple[Poly, ...]]:
    """tau_Q(A_i, A_l) = [X_i, X_l]_b - Q([X_i, X_l]_a) with X_i = A_i + Q(A_i)."""
    ex = expansion if expansion is not None else bracket_expansion(T)
    Q = T.symbolic_q()
    out = {}
    for pr in pairs(T.k):
        ap, bp = ex.a_part[pr], ex.b_part[pr]
        vec = []
        for j in range(T.h):
            t = bp[j]
            for mm in range(T.k):
                if not ap[mm].is_zero() and not Q[j][mm].is_zero():
                    t = t - ap[mm] * Q[j][mm]
            vec.append(t)
        out[pr] = tuple(vec)
    return out


def torsion_condition(T: TableauSpec, expansion: BracketExpansion | None = None) -> CheckResult:
    """tau_Q in Im(rho) for all Q, reduced coefficientwise (Im rho does not depend on p)."""
    ex = expansion if expansion is not None else bracket_expansion(T)
    if not curvature_condition(T, ex).passed:
        return CheckResult("precondition-failed", "R_Q does not vanish, so tau_Q is undefined")
    tau = torsion(T, ex)
    flat = [tau[pr][j] for pr in pairs(T.k) for j in range(T.h)]
    if not flat:
        return CheckResult("pass")
    L = T.linear_part()
    R = rho_matrix(L)
    size = len(flat)
    annihilators = kernel_vectors(R.transpose()) if R.cols else [
        tuple(Fraction(1) if t == r else Fraction(0) for t in range(size)) for r in range(size)
    ]
    for y in annihilators:
        residue = linear_combination(y, flat, T.param_names)
        if not residue.is_zero():
            terms = [f"{c}*tau[{_pair_label(r, T)}]" for r, c in enumerate(y) if c]
            w = f"{' + '.join(terms)} = {residue} is not identically zero"
            return CheckResult("fail", w, {"annihilator": [str(c) for c in y], "polynomial": str(residue)})
    return CheckResult("pass", None, {"image_dim": rank(R) if R.cols else 0, "target_dim": size})


def _pair_label(r: int, T: TableauSpec) -> str:
    p, j = divmod(r, T.h)
    i, l = pairs(T.k)[p]
    return f"A{i + 1}^A{l + 1},{_label(T, 'b', j)}"


def is_tableau_over(T: TableauSpec, report: CharacterReport | None = None, **flag_kw) -> ConditionReport:
    """Run conditions (1) R_Q = 0, (2) tau_Q in Im rho, (3) involutivity."""
    if check_jacobi(T.algebra):
        raise TableauError("algebra fails the Jacobi identity")
    ex = bracket_expansion(T)
    c1 = curvature_condition(T, ex)
    c2 = torsion_condition(T, ex)
    rep = report if report is not None else characters(T, **flag_kw)
    c3_details = {"prolongation_dim": rep.prolongation_dim, "bound": rep.bound}
    if rep.involutive:
        c3 = CheckResult("pass", None, c3_details)
    else:
        c3 = CheckResult(
            "fail", f"dim A^(1) = {rep.prolongation_dim} < {rep.bound} = sum j s'_j", c3_details
        )
    return ConditionReport(c1, c2, c3)


def mix_generators(T: TableauSpec, mixing: Sequence[Sequence]) -> TableauSpec:
    """Same tableau with generators replaced by sum_f mixing[e][f] Q_f (mixing invertible)."""
    M = RatMatrix(mixing, cols=T.m)
    if determinant(M) == 0:
        raise ValueError("mixing matrix is singular")
    new = []
    for e in range(T.m):
        acc = RatMatrix.zeros(T.h, T.k)
        for f, q in enumerate(T.generators):
            if M[e, f]:
                acc = acc + q.scale(M[e, f])
        new.append(acc)
    return T.with_generators(new, param_names=T.param_names)


def parse_rational_matrix(rows) -> RatMatrix:
    rows = [[to_fraction(x) for x in r] for r in rows]
    return RatMatrix(rows, cols=len(rows[0]) if rows else 0)

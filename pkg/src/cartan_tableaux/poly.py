"""Sparse multivariate polynomials with rational coefficients.

A :class:`Poly` is a map from exponent tuples to nonzero Fractions over a
fixed, ordered list of variable names.  Arithmetic between polynomials
requires identical variable lists; plain ints and Fractions are promoted.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import to_fraction


class Poly:
    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, object] | None = None):
        object.__setattr__(self, "variables", tuple(variables))
        n = len(self.variables)
        clean: dict[tuple, Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError("exponent vector length does not match variable count")
            c = to_fraction(c)
            if c != 0:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if clean[exps] == 0:
                    del clean[exps]
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # construction helpers

    @classmethod
    def zero(cls, variables: Sequence[str]) -> Poly:
        return cls(variables)

    @classmethod
    def const(cls, c, variables: Sequence[str]) -> Poly:
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> Poly:
        variables = tuple(variables)
        i = variables.index(name)
        exps = tuple(1 if t == i else 0 for t in range(len(variables)))
        return cls(variables, {exps: 1})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> list[Poly]:
        return [cls.var(v, variables) for v in variables]

    # inspection

    @property
    def terms(self) -> dict[tuple, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * len(self.variables), Fraction(0))

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def leading(self) -> tuple[tuple, Fraction]:
        """Leading (exponents, coefficient) in lex order."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms)
        return e, self._terms[e]

    # arithmetic

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        return Poly.const(to_fraction(other), self.variables)

    def __add__(self, other) -> Poly:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return Poly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> Poly:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            try:
                c = to_fraction(other)
            except TypeError:
                return NotImplemented
            if c == 0:
                return Poly(self.variables)
            return Poly(self.variables, {e: c * v for e, v in self._terms.items()})
        other = self._coerce(other)
        terms: dict[tuple, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return Poly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.variables == other.variables and self._terms == other._terms
        try:
            c = to_fraction(other)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_term() == c

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.variables, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def divexact(self, divisor: Poly) -> Poly:
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if divisor.is_constant():
            return self * (1 / divisor.constant_term())
        lead_e, lead_c = divisor.leading()
        remainder = dict(self._terms)
        quotient: dict[tuple, Fraction] = {}
        while remainder:
            e = max(remainder)
            shift = tuple(a - b for a, b in zip(e, lead_e))
            if any(s < 0 for s in shift):
                raise ArithmeticError("division is not exact")
            c = remainder[e] / lead_c
            quotient[shift] = c
            for de, dc in divisor._terms.items():
                t = tuple(a + b for a, b in zip(de, shift))
                v = remainder.get(t, Fraction(0)) - c * dc
                if v == 0:
                    remainder.pop(t, None)
                else:
                    remainder[t] = v
        return Poly(self.variables, quotient)

    def diff(self, name: str) -> Poly:
        i = self.variables.index(name)
        terms = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[ne] = c * e[i]
        return Poly(self.variables, terms)

    def evaluate(self, point: Mapping[str, object] | Sequence) -> Fraction:
        if isinstance(point, Mapping):
            values = [to_fraction(point[v]) for v in self.variables]
        else:
            values = [to_fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            t = c
            for x, k in zip(values, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def evaluate_float(self, values: Sequence[float]) -> float:
        total = 0.0
        for e, c in self._terms.items():
            t = float(c)
            for x, k in zip(values, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def linear_coefficients(self) -> tuple[Fraction, list[Fraction]]:
        """(constant, [coefficient of each variable]) for a degree <= 1 poly."""
        if self.degree() > 1:
            raise ValueError("polynomial is not affine-linear")
        n = len(self.variables)
        lin = [self.coefficient(tuple(1 if t == i else 0 for t in range(n))) for i in range(n)]
        return self.constant_term(), lin

    def to_str(self, unicode: bool = False) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e in sorted(self._terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self._terms[e]
            mono = []
            for name, k in zip(self.variables, e):
                if k == 1:
                    mono.append(name)
                elif k > 1:
                    mono.append(f"{name}^{k}")
            mono_s = "*".join(mono)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono_s:
                body = mono_s if a == 1 else f"{a}*{mono_s}"
            else:
                body = str(a)
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_latex(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for e in sorted(self._terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self._terms[e]
            mono = " ".join(
                _latex_var(name) + (f"^{{{k}}}" if k > 1 else "")
                for name, k in zip(self.variables, e)
                if k
            )
            a = abs(c)
            coeff = _latex_fraction(a) if (a != 1 or not mono) else ""
            pieces.append(("-" if c < 0 else "+", (coeff + " " + mono).strip()))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Poly({self.to_str()!r}, vars={self.variables})"


def _latex_fraction(a: Fraction) -> str:
    if a.denominator == 1:
        return str(a.numerator)
    return rf"\frac{{{a.numerator}}}{{{a.denominator}}}"


def _latex_var(name: str) -> str:
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    if tail and head:
        return f"{head}_{{{tail}}}"
    return name


def poly_vector_zero(variables: Sequence[str], n: int) -> tuple[Poly, ...]:
    z = Poly.zero(variables)
    return (z,) * n


def linear_combination(coeffs: Sequence, polys: Sequence[Poly], variables: Sequence[str]) -> Poly:
    """sum_i coeffs[i] * polys[i] with rational coefficients."""
    terms: dict[tuple, Fraction] = {}
    for c, p in zip(coeffs, polys):
        c = to_fraction(c)
        if c == 0:
            continue
        for e, v in p.items():
            terms[e] = terms.get(e, Fraction(0)) + c * v
    return Poly(variables, terms)


def coefficient_vectors(polys: Sequence[Poly]) -> dict[tuple, list[Fraction]]:
    """Split a vector of polynomials into one rational vector per monomial."""
    out: dict[tuple, list[Fraction]] = {}
    n = len(polys)
    for idx, p in enumerate(polys):
        for e, c in p.items():
            out.setdefault(e, [Fraction(0)] * n)[idx] = c
    return dict(sorted(out.items()))


class PolyMatrix:
    """Immutable rows x cols matrix of Polys sharing one variable list."""

    __slots__ = ("rows", "cols", "variables", "_data")

    def __init__(self, data: Iterable[Iterable], variables: Sequence[str], cols: int | None = None):
        variables = tuple(variables)
        rows = []
        for row in data:
            rows.append(
                tuple(
                    x if isinstance(x, Poly) else Poly.const(to_fraction(x), variables) for x in row
                )
            )
        rows = tuple(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        for r in rows:
            for x in r:
                if x.variables != variables:
                    raise ValueError("entry variable list differs from matrix variables")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "_data", rows)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    def __getitem__(self, idx) -> Poly:
        i, j = idx
        return self._data[i][j]

    def row_list(self) -> list[tuple[Poly, ...]]:
        return list(self._data)

    def specialize(self, point) -> list[list[Fraction]]:
        return [[p.evaluate(point) for p in r] for r in self._data]


def poly_rank(m: PolyMatrix) -> int:
    """Rank over the rational function field by fraction-free elimination.

    Bareiss' update keeps every intermediate entry a polynomial: each new
    entry is a minor of the original matrix, so the division by the previous
    pivot is exact.  Row and column swaps only permute those minors.
    """
    a = [list(r) for r in m.row_list()]
    nrows, ncols = m.rows, m.cols
    one = Poly.const(1, m.variables)
    prev = one
    r = 0
    while r < nrows and r < ncols:
        pivot = None
        best = None
        for i in range(r, nrows):
            for j in range(r, ncols):
                p = a[i][j]
                if not p.is_zero():
                    # cheapest pivot keeps intermediate degrees low
                    key = (p.degree(), len(p.terms))
                    if best is None or key < best:
                        best, pivot = key, (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[r], a[pi] = a[pi], a[r]
        if pj != r:
            for row in a:
                row[r], row[pj] = row[pj], row[r]
        piv = a[r][r]
        for i in range(r + 1, nrows):
            ai_r = a[i][r]
            for j in range(r + 1, ncols):
                num = piv * a[i][j] - ai_r * a[r][j]
                a[i][j] = num.divexact(prev) if not num.is_zero() else num
            a[i][r] = Poly.zero(m.variables)
        prev = piv
        r += 1
    return r

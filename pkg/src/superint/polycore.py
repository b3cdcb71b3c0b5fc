"""Exact sparse multivariate polynomials over the rationals.

Scalars are :class:`fractions.Fraction`; every polynomial carries an ordered
tuple of variable names and a term map ``exponents -> coefficient`` with no
zero coefficients, so equality of polynomials is equality of term maps.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Mapping, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "MultiPoly",
    "as_rational",
    "parse_rational",
    "laguerre",
    "jacobi",
    "gbinom",
]


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to a Fraction.

    Floats are rejected: exact code paths must never see them.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational 'num/den' literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def gbinom(top: Fraction, k: int) -> Fraction:
    """Generalized binomial coefficient C(top, k) for rational ``top``."""
    if k < 0:
        return Fraction(0)
    out = Fraction(1)
    for i in range(k):
        out = out * (top - i) / (i + 1)
    return out


class MultiPoly:
    """Immutable sparse polynomial in a fixed, ordered set of variables."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, object] | None = None):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"duplicate variable names: {vars}")
        clean: dict[tuple, Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(vars) or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps} for variables {vars}")
            c = as_rational(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, vars: Sequence[str]) -> "MultiPoly":
        return cls(vars)

    @classmethod
    def const(cls, c, vars: Sequence[str]) -> "MultiPoly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, name: str, vars: Sequence[str]) -> "MultiPoly":
        vars = tuple(vars)
        if name not in vars:
            raise ValueError(f"unknown variable {name!r}; have {vars}")
        exps = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {exps: 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], vars: Sequence[str], c=1) -> "MultiPoly":
        return cls(vars, {tuple(exps): c})

    # -- basic queries ------------------------------------------------
    @property
    def arity(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.arity, Fraction(0))

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``. The zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self._index(var)
        return max(e[i] for e in self.terms)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise ValueError(f"unknown variable {var!r}; have {self.vars}") from None

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError(
                    f"arity mismatch: variables {self.vars} vs {other.vars}; embed explicitly"
                )
            return other
        return MultiPoly.const(as_rational(other), self.vars)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return MultiPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                c = as_rational(other)
            except TypeError:
                return NotImplemented
            return MultiPoly(self.vars, {k: v * c for k, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[tuple, Fraction] = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                out[k] = out.get(k, Fraction(0)) + va * vb
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = as_rational(other)
        if c == 0:
            raise ZeroDivisionError("polynomial divided by zero")
        return self * (1 / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        out = MultiPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        try:
            c = as_rational(other)
        except TypeError:
            return NotImplemented
        return self.terms == ({(0,) * self.arity: c} if c else {})

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- calculus / evaluation -----------------------------------------
    def diff(self, var: str, times: int = 1) -> "MultiPoly":
        i = self._index(var)
        out = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e < times:
                continue
            factor = math.perm(e, times)
            new = list(exps)
            new[i] = e - times
            out[tuple(new)] = c * factor
        return MultiPoly(self.vars, out)

    def diff_multi(self, alpha: Sequence[int]) -> "MultiPoly":
        """Mixed partial derivative with multi-index ``alpha``."""
        out = {}
        for exps, c in self.terms.items():
            if any(e < a for e, a in zip(exps, alpha)):
                continue
            factor = 1
            for e, a in zip(exps, alpha):
                factor *= math.perm(e, a)
            out[tuple(e - a for e, a in zip(exps, alpha))] = c * factor
        return MultiPoly(self.vars, out)

    def eval(self, point):
        """Evaluate at ``point`` (sequence aligned with ``vars`` or a name mapping).

        Works for any scalar type supporting ``+``, ``*`` and ``**`` with ints,
        including :class:`~superint.taylor.Jet`.
        """
        if isinstance(point, Mapping):
            values = [point[v] for v in self.vars]
        else:
            values = list(point)
            if len(values) != self.arity:
                raise ValueError(f"arity mismatch: point of length {len(values)} for {self.vars}")
        values = [as_rational(v) if isinstance(v, (int, str)) and not isinstance(v, bool) else v
                  for v in values]
        return horner(self, values)

    __call__ = eval

    # -- variable management ------------------------------------------
    def embed(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-express in a superset (or reordering) of the current variables."""
        vars = tuple(vars)
        missing = [v for v in self.vars if v not in vars]
        if missing:
            present = {v for exps in self.terms for v, e in zip(self.vars, exps) if e}
            if present & set(missing):
                raise ValueError(f"cannot embed: variables {missing} used but absent from {vars}")
        pos = [vars.index(v) if v in vars else None for v in self.vars]
        out = {}
        for exps, c in self.terms.items():
            new = [0] * len(vars)
            for e, j in zip(exps, pos):
                if e:
                    new[j] = e
            out[tuple(new)] = c
        return MultiPoly(vars, out)

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        return MultiPoly(tuple(mapping.get(v, v) for v in self.vars), self.terms)

    def substitute(self, values: Mapping[str, "MultiPoly"], vars: Sequence[str]) -> "MultiPoly":
        """Compose: replace each variable by a polynomial in ``vars``."""
        vars = tuple(vars)
        subs = []
        for v in self.vars:
            if v in values:
                subs.append(values[v])
            else:
                subs.append(MultiPoly.var(v, vars))
        return horner(self, subs, zero=MultiPoly.zero(vars), one=MultiPoly.const(1, vars))

    # -- text form --------------------------------------------------------
    def sorted_terms(self):
        """Terms in display order: ascending total degree, then descending exponent tuple."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), tuple(-e for e in kv[0])))

    def to_text(self) -> str:
        """Serialize as ``coeff * x1^a1*x2^a2`` terms joined by ``" + "``."""
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, exps) if e
            )
            parts.append(f"{c} * {mono}" if mono else f"{c}")
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str, vars: Sequence[str]) -> "MultiPoly":
        vars = tuple(vars)
        text = text.strip()
        if text == "0":
            return cls(vars)
        terms: dict[tuple, Fraction] = {}
        for part in text.split(" + "):
            if " * " in part:
                coef, mono = part.split(" * ", 1)
            else:
                coef, mono = part, ""
            exps = [0] * len(vars)
            for factor in filter(None, mono.split("*")):
                name, _, power = factor.partition("^")
                exps[vars.index(name)] += int(power) if power else 1
            key = tuple(exps)
            terms[key] = terms.get(key, Fraction(0)) + parse_rational(coef)
        return cls(vars, terms)

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r}, vars={self.vars})"

    __str__ = to_text


def horner(poly: MultiPoly, values: list, zero=None, one=None):
    """Evaluate ``poly`` at ``values`` by nested Horner in the first variable.

    ``values`` may be any ring elements; ``zero``/``one`` default to the rational
    constants, which mix fine with jets and floats.
    """
    if zero is None:
        zero = Fraction(0)
    if one is None:
        one = Fraction(1)

    def rec(terms: dict, i: int):
        if i == len(values):
            c = next(iter(terms.values()), Fraction(0))
            return c
        groups: dict[int, dict] = {}
        for exps, c in terms.items():
            groups.setdefault(exps[i], {})[exps] = c
        acc = None
        top = max(groups)
        for e in range(top, -1, -1):
            inner = rec(groups[e], i + 1) if e in groups else None
            if acc is None:
                acc = inner
            else:
                acc = acc * values[i]
                if inner is not None:
                    acc = acc + inner
        return acc

    if not poly.terms:
        return zero
    out = rec(poly.terms, 0)
    if isinstance(out, Fraction) and not isinstance(zero, Fraction):
        return zero + out
    return out


# ---------------------------------------------------------------------------
# classical orthogonal polynomials


def laguerre(N: int, alpha, var: str = "x") -> MultiPoly:
    """Generalized Laguerre polynomial L_N^alpha by the three-term recurrence.

    ``laguerre(-1, alpha)`` is the zero polynomial.
    """
    alpha = as_rational(alpha)
    vars = (var,)
    if N < -1:
        raise ValueError(f"Laguerre degree must be >= -1, got {N}")
    if N == -1:
        return MultiPoly.zero(vars)
    x = MultiPoly.var(var, vars)
    prev = MultiPoly.zero(vars)
    cur = MultiPoly.const(1, vars)
    # (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}
    for k in range(N):
        nxt = ((2 * k + 1 + alpha) - x) * cur - (k + alpha) * prev
        prev, cur = cur, nxt / (k + 1)
    return cur


def _jacobi_sum_form(J: int, a: Fraction, b: Fraction, var: str) -> MultiPoly:
    # sum_k C(J+a, J-k) C(J+b, k) ((z-1)/2)^k ((z+1)/2)^(J-k)
    vars = (var,)
    z = MultiPoly.var(var, vars)
    zm = (z - 1) / 2
    zp = (z + 1) / 2
    out = MultiPoly.zero(vars)
    for k in range(J + 1):
        out = out + gbinom(J + a, J - k) * gbinom(J + b, k) * zm ** k * zp ** (J - k)
    return out


def jacobi(J: int, alpha, beta, var: str = "z") -> MultiPoly:
    """Jacobi polynomial P_J^(alpha,beta) by the three-term recurrence.

    The recurrence divides by 2k(k+a+b)(2k+a+b-2); for the rational parameter
    pairs where one of those factors vanishes the explicit binomial sum is used
    instead. ``jacobi(-1, ...)`` is the zero polynomial.
    """
    a = as_rational(alpha)
    b = as_rational(beta)
    vars = (var,)
    if J < -1:
        raise ValueError(f"Jacobi degree must be >= -1, got {J}")
    if J == -1:
        return MultiPoly.zero(vars)
    one = MultiPoly.const(1, vars)
    if J == 0:
        return one
    z = MultiPoly.var(var, vars)
    s = a + b
    if any((k + s) == 0 or (2 * k + s - 2) == 0 for k in range(2, J + 1)):
        return _jacobi_sum_form(J, a, b, var)
    prev = one
    cur = (a + 1) + (s + 2) * (z - 1) / 2
    for k in range(2, J + 1):
        c = 2 * k + s
        lead = (c - 1) * (c * (c - 2) * z + (a * a - b * b))
        nxt = lead * cur - 2 * (k + a - 1) * (k + b - 1) * c * prev
        prev, cur = cur, nxt / (2 * k * (k + s) * (c - 2))
    return cur


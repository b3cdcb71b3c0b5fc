"""Truncated multivariate Taylor expansions (jets).

A :class:`Jet` of order ``k`` in ``d`` variables stores the coefficients of
``prod (x_i - x0_i)**a_i`` for all multi-indices with ``|a| <= k`` (derivative
divided by ``a!``).  Coefficients live in a numpy array, either ``float64``
or ``object`` holding :class:`~fractions.Fraction` values ("exact mode").

Exact mode has two extra devices so that wavefunctions with exponential and
irrational-power factors can still be checked with zero tolerance:

* :class:`Prefactor` -- a positive constant ``exp(a) * prod b_i**e_i`` kept
  symbolically and multiplied out of the rational coefficients;
* :class:`ExactAngle` -- an angle known through a rational (cos, sin) pair,
  allowed only in the constant slot of an angle variable's jet.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

__all__ = [
    "Jet",
    "Prefactor",
    "ExactAngle",
    "JetDomainError",
    "SingularPointError",
    "monomials",
    "exp",
    "log",
    "sqrt",
    "power",
    "reciprocal",
    "sin",
    "cos",
]


class JetDomainError(ValueError):
    """Elementary function evaluated outside its domain."""


class SingularPointError(JetDomainError):
    """A coefficient or factor is singular at the base point."""


# ---------------------------------------------------------------------------
# monomial tables


class _Table:
    def __init__(self, nvars: int, order: int):
        self.nvars = nvars
        self.order = order
        monos = [()]
        if nvars:
            monos = []
            for deg in range(order + 1):
                monos.extend(_compositions(deg, nvars))
        self.monos = monos
        self.size = len(monos)
        self.index = {m: i for i, m in enumerate(monos)}
        self.degrees = np.array([sum(m) for m in monos], dtype=np.int64)
        self.factorials = [math.prod(math.factorial(e) for e in m) for m in monos]
        ii, jj, ll = [], [], []
        for i, a in enumerate(monos):
            da = sum(a)
            for j, b in enumerate(monos):
                if da + sum(b) <= order:
                    ii.append(i)
                    jj.append(j)
                    ll.append(self.index[tuple(x + y for x, y in zip(a, b))])
        self.mul_i = np.array(ii, dtype=np.int64)
        self.mul_j = np.array(jj, dtype=np.int64)
        self.mul_l = np.array(ll, dtype=np.int64)
        self._deriv: dict[tuple, tuple] = {}

    def deriv_map(self, alpha: tuple):
        """Source indices and integer factors for the derivative of multi-index alpha."""
        got = self._deriv.get(alpha)
        if got is None:
            out_order = self.order - sum(alpha)
            src, fac = [], []
            for beta in self.monos:
                if sum(beta) > out_order:
                    break
                gamma = tuple(b + a for b, a in zip(beta, alpha))
                src.append(self.index[gamma])
                f = 1
                for g, a in zip(gamma, alpha):
                    f *= math.perm(g, a)
                fac.append(f)
            got = (np.array(src, dtype=np.int64), fac)
            self._deriv[alpha] = got
        return got


def _compositions(total: int, parts: int):
    """Exponent tuples of given total degree, first variable descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _table(nvars: int, order: int) -> _Table:
    return _Table(nvars, order)


def monomials(nvars: int, order: int) -> list[tuple]:
    """Multi-indices of total degree <= order in jet storage order."""
    return list(_table(nvars, order).monos)


# ---------------------------------------------------------------------------
# exact-mode helpers


def _int_root(n: int, q: int):
    """Exact q-th root of a non-negative int, or None."""
    if n < 0:
        return None
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / q)) if n.bit_length() < 1000 else None
    if r is None:
        lo, hi = 0, 1 << (n.bit_length() // q + 1)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid ** q < n:
                lo = mid + 1
            else:
                hi = mid
        r = lo
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** q == n:
            return cand
    return None


def rational_power(base: Fraction, expo: Fraction):
    """base**expo as a Fraction when it is rational, else None (base > 0)."""
    if expo.denominator == 1:
        return base ** int(expo)
    q = expo.denominator
    rn = _int_root(base.numerator, q)
    rd = _int_root(base.denominator, q)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd) ** expo.numerator


class Prefactor:
    """Positive constant ``exp(exp_arg) * prod(base**expo)`` held symbolically.

    Exponents are kept in (0, 1); integer parts are returned to the caller as
    a rational multiplier, so two prefactors that compare equal differ by no
    hidden rational factor.
    """

    __slots__ = ("exp_arg", "powers")

    def __init__(self, exp_arg: Fraction = Fraction(0), powers: tuple = ()):
        self.exp_arg = Fraction(exp_arg)
        self.powers = tuple(sorted(powers))

    ONE: "Prefactor"

    @classmethod
    def make(cls, exp_arg=Fraction(0), powers=()) -> tuple["Prefactor", Fraction]:
        """Normalize; returns ``(prefactor, rational_multiplier)``."""
        mult = Fraction(1)
        merged: dict[Fraction, Fraction] = {}
        for base, expo in powers:
            merged[base] = merged.get(base, Fraction(0)) + expo
        out = []
        for base, expo in merged.items():
            if base <= 0:
                raise JetDomainError(f"non-positive base {base} in prefactor")
            whole = math.floor(expo)
            frac = expo - whole
            mult *= base ** whole
            if frac:
                exact = rational_power(base, frac)
                if exact is not None:
                    mult *= exact
                elif base != 1:
                    out.append((base, frac))
        return cls(exp_arg, tuple(out)), mult

    def is_one(self) -> bool:
        return self.exp_arg == 0 and not self.powers

    def __mul__(self, other: "Prefactor") -> tuple["Prefactor", Fraction]:
        return Prefactor.make(self.exp_arg + other.exp_arg, self.powers + other.powers)

    def pow(self, q: Fraction) -> tuple["Prefactor", Fraction]:
        return Prefactor.make(self.exp_arg * q, tuple((b, e * q) for b, e in self.powers))

    def __eq__(self, other):
        return (
            isinstance(other, Prefactor)
            and self.exp_arg == other.exp_arg
            and self.powers == other.powers
        )

    def __hash__(self):
        return hash((self.exp_arg, self.powers))

    def __float__(self):
        out = math.exp(self.exp_arg)
        for b, e in self.powers:
            out *= float(b) ** float(e)
        return out

    def __repr__(self):
        parts = []
        if self.exp_arg:
            parts.append(f"exp({self.exp_arg})")
        parts.extend(f"({b})^({e})" for b, e in self.powers)
        return "Prefactor(" + (" * ".join(parts) or "1") + ")"


Prefactor.ONE = Prefactor()


class ExactAngle:
    """An angle represented by exact rational cosine and sine."""

    __slots__ = ("cos", "sin")

    def __init__(self, cos, sin):
        cos, sin = Fraction(cos), Fraction(sin)
        if cos * cos + sin * sin != 1:
            raise ValueError(f"cos^2 + sin^2 != 1 for ({cos}, {sin})")
        self.cos = cos
        self.sin = sin

    @classmethod
    def from_triple(cls, a: int, b: int) -> "ExactAngle":
        """Angle with tan(theta/2) = b/a, i.e. cos = (a^2-b^2)/(a^2+b^2)."""
        h = a * a + b * b
        return cls(Fraction(a * a - b * b, h), Fraction(2 * a * b, h))

    def __float__(self):
        return math.atan2(self.sin, self.cos)

    def __add__(self, other):
        if isinstance(other, ExactAngle):
            return ExactAngle(
                self.cos * other.cos - self.sin * other.sin,
                self.sin * other.cos + self.cos * other.sin,
            )
        if other == 0:
            return self
        raise JetDomainError("cannot add a rational to an exact angle")

    __radd__ = __add__

    def __neg__(self):
        return ExactAngle(self.cos, -self.sin)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        if isinstance(k, Fraction) and k.denominator == 1:
            k = int(k)
        if not isinstance(k, int):
            raise JetDomainError("exact angles can only be scaled by integers")
        if k == 0:
            return Fraction(0)
        if k < 0:
            return (-self) * (-k)
        out = self
        for _ in range(k - 1):
            out = out + self
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, ExactAngle):
            return self.cos == other.cos and self.sin == other.sin
        return False

    def __hash__(self):
        return hash((self.cos, self.sin))

    def __repr__(self):
        return f"ExactAngle(cos={self.cos}, sin={self.sin})"


# ---------------------------------------------------------------------------
# the jet


def _is_exact_scalar(x) -> bool:
    return isinstance(x, (Fraction, int, ExactAngle)) and not isinstance(x, bool)


class Jet:
    """Truncated Taylor expansion at a point; immutable by convention."""

    __slots__ = ("nvars", "order", "c", "scale")

    def __init__(self, nvars: int, order: int, coeffs, scale: Prefactor | None = None):
        self.nvars = nvars
        self.order = order
        c = np.asarray(coeffs)
        if c.shape != (_table(nvars, order).size,):
            raise ValueError(f"expected {_table(nvars, order).size} coefficients, got {c.shape}")
        self.c = c
        if c.dtype == object:
            self.scale = scale if scale is not None else Prefactor.ONE
        else:
            if scale is not None and not scale.is_one():
                raise ValueError("prefactors are only used in exact mode")
            self.scale = None

    # -- construction ---------------------------------------------------
    @property
    def exact(self) -> bool:
        return self.c.dtype == object

    @staticmethod
    def _zeros(nvars: int, order: int, exact: bool):
        size = _table(nvars, order).size
        if exact:
            return np.array([Fraction(0)] * size, dtype=object)
        return np.zeros(size)

    @classmethod
    def constant(cls, value, nvars: int, order: int, exact: bool | None = None) -> "Jet":
        if exact is None:
            exact = _is_exact_scalar(value)
        c = cls._zeros(nvars, order, exact)
        if not exact:
            c[0] = float(value)
        elif isinstance(value, ExactAngle):
            c[0] = value
        elif isinstance(value, float):
            raise TypeError("float value for an exact jet")
        else:
            c[0] = Fraction(value)
        return cls(nvars, order, c)

    @classmethod
    def variable(cls, i: int, value, nvars: int, order: int, exact: bool | None = None) -> "Jet":
        """Jet of the coordinate function x_i at base value ``value``."""
        out = cls.constant(value, nvars, order, exact)
        if order >= 1:
            e = tuple(1 if j == i else 0 for j in range(nvars))
            out.c[_table(nvars, order).index[e]] = Fraction(1) if out.exact else 1.0
        return out

    @classmethod
    def coordinates(cls, point: Sequence, order: int, exact: bool | None = None) -> list["Jet"]:
        if exact is None:
            exact = all(_is_exact_scalar(v) for v in point)
        d = len(point)
        return [cls.variable(i, v, d, order, exact) for i, v in enumerate(point)]

    def _like(self, coeffs, scale=None) -> "Jet":
        return Jet(self.nvars, self.order, coeffs, scale if self.exact else None)

    # -- inspection -----------------------------------------------------
    def coefficient(self, idx: Sequence[int]):
        """Taylor coefficient of the monomial ``idx`` (prefactor not applied)."""
        idx = tuple(idx)
        if sum(idx) > self.order:
            raise ValueError(f"index {idx} beyond jet order {self.order}")
        return self.c[_table(self.nvars, self.order).index[idx]]

    def derivative(self, idx: Sequence[int]):
        """Partial derivative ``d^idx f`` at the base point (prefactor not applied)."""
        idx = tuple(idx)
        return self.coefficient(idx) * math.prod(math.factorial(e) for e in idx)

    def coefficients(self) -> dict:
        t = _table(self.nvars, self.order)
        return {m: self.c[i] for i, m in enumerate(t.monos)}

    @property
    def value(self):
        """Function value at the base point (prefactor not applied)."""
        return self.c[0]

    def full_value(self) -> float:
        """Function value including the prefactor, as a float."""
        v = float(self.c[0])
        if self.exact and not self.scale.is_one():
            v *= float(self.scale)
        return v

    def is_zero(self) -> bool:
        return not any(self.c[i] != 0 for i in range(len(self.c)))

    def to_float(self) -> "Jet":
        if not self.exact:
            return self
        f = float(self.scale)
        return Jet(self.nvars, self.order, np.array([float(v) * f for v in self.c], dtype=float))

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise ValueError(f"cannot raise jet order {self.order} to {order}")
        size = _table(self.nvars, order).size
        return Jet(self.nvars, order, self.c[:size].copy(), self.scale)

    def __repr__(self):
        scale = f", scale={self.scale!r}" if self.exact and not self.scale.is_one() else ""
        return f"Jet(order={self.order}, coeffs={list(self.c)}{scale})"

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "Jet"):
        if other.nvars != self.nvars:
            raise ValueError(f"jet arity mismatch: {self.nvars} vs {other.nvars}")

    def _lift_scalar(self, x) -> "Jet":
        if self.exact and isinstance(x, float):
            raise TypeError("float scalar combined with an exact jet")
        return Jet.constant(x, self.nvars, self.order, self.exact)

    def _align(self, other: "Jet"):
        """Common order and dtype for a binary operation."""
        self._check(other)
        a, b = self, other
        order = min(a.order, b.order)
        if a.order != order:
            a = a.truncate(order)
        if b.order != order:
            b = b.truncate(order)
        if a.exact != b.exact:
            a, b = a.to_float(), b.to_float()
        return a, b

    def __add__(self, other):
        if not isinstance(other, Jet):
            if isinstance(other, (int, float, Fraction, ExactAngle)):
                other = self._lift_scalar(other)
            else:
                return NotImplemented
        a, b = self._align(other)
        if a.exact and a.scale != b.scale:
            if b.is_zero():
                return a
            if a.is_zero():
                return b
            raise JetDomainError(f"cannot add jets with different prefactors {a.scale} and {b.scale}")
        return a._like(a.c + b.c, a.scale)

    __radd__ = __add__

    def __neg__(self):
        return self._like(-self.c, self.scale)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            if isinstance(other, (int, float, Fraction)):
                if self.exact and isinstance(other, float):
                    raise TypeError("float scalar combined with an exact jet")
                other = Fraction(other) if self.exact else float(other)
                return self._like(self.c * other, self.scale)
            return NotImplemented
        a, b = self._align(other)
        t = _table(a.nvars, a.order)
        out = Jet._zeros(a.nvars, a.order, a.exact)
        np.add.at(out, t.mul_l, a.c[t.mul_i] * b.c[t.mul_j])
        scale = None
        if a.exact:
            scale, mult = a.scale * b.scale
            if mult != 1:
                out = out * mult
        return a._like(out, scale)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * reciprocal(other)
        if isinstance(other, (int, Fraction)) and self.exact:
            return self * (1 / Fraction(other))
        if isinstance(other, (int, float, Fraction)):
            return self * (1.0 / other)
        return NotImplemented

    def __rtruediv__(self, other):
        return reciprocal(self) * other

    def __pow__(self, q):
        if isinstance(q, int) and q >= 0:
            out = Jet.constant(1, self.nvars, self.order, self.exact)
            base = self
            while q:
                if q & 1:
                    out = out * base
                base = base * base
                q >>= 1
            return out
        return power(self, q)

    # -- differentiation ----------------------------------------------
    def diff(self, alpha: Sequence[int]) -> "Jet":
        """Jet of ``d^alpha f`` at the same point, of order ``order - |alpha|``."""
        alpha = tuple(alpha)
        k = sum(alpha)
        if k > self.order:
            raise ValueError(f"insufficient jet order: need {k}, have {self.order}")
        if k == 0:
            return self
        src, fac = _table(self.nvars, self.order).deriv_map(alpha)
        vals = self.c[src]
        if self.exact:
            out = np.array([v * f for v, f in zip(vals, fac)], dtype=object)
        else:
            out = vals * np.asarray(fac, dtype=float)
        return Jet(self.nvars, self.order - k, out, self.scale)


# ---------------------------------------------------------------------------
# univariate composition


def _nilpotent(j: Jet) -> Jet:
    c = j.c.copy()
    c[0] = Fraction(0) if j.exact else 0.0
    return Jet(j.nvars, j.order, c, None if not j.exact else Prefactor.ONE)


def _compose(j: Jet, series: list, scale: Prefactor | None = None) -> Jet:
    """sum_m series[m] * (j - j0)**m, truncated at the jet order."""
    d = _nilpotent(j)
    k = j.order
    acc = Jet.constant(series[k] if k < len(series) else 0, j.nvars, k, j.exact)
    for m in range(min(k, len(series)) - 1, -1, -1):
        acc = acc * d + Jet.constant(series[m], j.nvars, k, j.exact)
    if j.exact and scale is not None:
        acc = Jet(j.nvars, k, acc.c, scale)
    return acc


def _require_plain(j: Jet, what: str):
    if j.exact and not j.scale.is_one():
        raise JetDomainError(f"{what} of a jet carrying a symbolic prefactor")
    if isinstance(j.c[0], ExactAngle) and what not in ("sin", "cos"):
        raise JetDomainError(f"{what} of an exact angle")


def exp(j: Jet) -> Jet:
    _require_plain(j, "exp")
    u0 = j.c[0]
    k = j.order
    if j.exact:
        series = [Fraction(1, math.factorial(m)) for m in range(k + 1)]
        scale, mult = Prefactor.make(exp_arg=u0)
        series = [s * mult for s in series]
        return _compose(j, series, scale)
    e0 = math.exp(u0)
    return _compose(j, [e0 / math.factorial(m) for m in range(k + 1)])


def log(j: Jet) -> Jet:
    _require_plain(j, "log")
    u0 = j.c[0]
    if u0 <= 0:
        raise JetDomainError(f"log of non-positive value {u0}")
    k = j.order
    if j.exact:
        if u0 != 1:
            raise JetDomainError("log of a rational other than 1 is not exact; use float mode")
        head = Fraction(0)
    else:
        head = math.log(u0)
    series = [head] + [(-1) ** (m + 1) / (m * u0 ** m) for m in range(1, k + 1)]
    return _compose(j, series)


def power(j: Jet, q) -> Jet:
    """j**q for rational (exact mode) or real q."""
    if isinstance(q, int):
        q = Fraction(q)
    if isinstance(j.c[0], ExactAngle):
        raise JetDomainError("power of an exact angle")
    u0 = j.c[0]
    k = j.order
    if j.exact:
        q = Fraction(q)
        if q.denominator == 1 and q >= 0:
            return j ** int(q)
        if u0 == 0:
            raise SingularPointError(f"power {q} of a jet vanishing at the base point")
        if q.denominator != 1 and u0 < 0:
            raise JetDomainError(f"non-integer power {q} of negative value {u0}")
        ratio = [_binom(q, m) / u0 ** m for m in range(k + 1)]
        if q.denominator == 1:
            head = u0 ** int(q)
            scale, mult = Prefactor.ONE, head
        elif u0 > 0:
            scale, mult = Prefactor.make(powers=((u0, q),))
        series = [r * mult for r in ratio]
        out = _compose(j, series, Prefactor.ONE)
        if not j.scale.is_one():
            s2, m2 = j.scale.pow(q)
            scale, m3 = scale * s2
            out = out * (m2 * m3)
        return Jet(j.nvars, k, out.c, scale)
    q = float(q)
    if u0 == 0 and (q < 0 or q != int(q)):
        raise SingularPointError(f"power {q} of a jet vanishing at the base point")
    if u0 < 0 and q != int(q):
        raise JetDomainError(f"non-integer power {q} of negative value {u0}")
    head = u0 ** q
    series = [head * _binom_float(q, m) / u0 ** m for m in range(k + 1)]
    return _compose(j, series)


def _binom(q: Fraction, m: int) -> Fraction:
    out = Fraction(1)
    for i in range(m):
        out = out * (q - i) / (i + 1)
    return out


def _binom_float(q: float, m: int) -> float:
    out = 1.0
    for i in range(m):
        out = out * (q - i) / (i + 1)
    return out


def sqrt(j: Jet) -> Jet:
    return power(j, Fraction(1, 2)) if j.exact else power(j, 0.5)


def reciprocal(j: Jet) -> Jet:
    if j.c[0] == 0:
        raise SingularPointError("reciprocal of a jet vanishing at the base point")
    return power(j, Fraction(-1) if j.exact else -1.0)


def _trig_values(j: Jet):
    u0 = j.c[0]
    if isinstance(u0, ExactAngle):
        return u0.sin, u0.cos
    if j.exact:
        if u0 != 0:
            raise JetDomainError("sin/cos of a rational angle is irrational; use ExactAngle or float mode")
        return Fraction(0), Fraction(1)
    return math.sin(u0), math.cos(u0)


def _trig_series(s0, c0, k: int, start: int, exact: bool) -> list:
    # derivatives of sin cycle (sin, cos, -sin, -cos); cos starts one step later
    cycle = [s0, c0, -s0, -c0]
    fact = (lambda m: Fraction(1, math.factorial(m))) if exact else (lambda m: 1.0 / math.factorial(m))
    return [cycle[(m + start) % 4] * fact(m) for m in range(k + 1)]


def sin(j: Jet) -> Jet:
    _require_plain(j, "sin")
    s0, c0 = _trig_values(j)
    return _compose(j, _trig_series(s0, c0, j.order, 0, j.exact))


def cos(j: Jet) -> Jet:
    _require_plain(j, "cos")
    s0, c0 = _trig_values(j)
    return _compose(j, _trig_series(s0, c0, j.order, 1, j.exact))

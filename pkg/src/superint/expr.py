"""Scalar-field expressions used as differential-operator coefficients.

Small immutable expression trees over named variables.  They evaluate to
floats and lift to :class:`~superint.taylor.Jet` objects at a point, which is
how curvilinear operators get applied numerically.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Sequence

from . import taylor
from .polycore import MultiPoly, as_rational, horner
from .taylor import ExactAngle, Jet, SingularPointError

__all__ = [
    "FieldCoef",
    "Const",
    "Var",
    "const",
    "var",
    "poly",
    "sin",
    "cos",
    "tan",
    "cot",
    "sqrt",
    "exp",
    "log",
    "lift",
    "jet_lift",
]


class FieldCoef:
    """Base node. Subclasses set ``key`` (a structural tuple) in ``__init__``."""

    __slots__ = ("key", "_hash")

    def _init_key(self, key):
        self.key = key
        self._hash = hash(key)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, FieldCoef) and self.key == other.key

    # -- operator sugar with constant folding --------------------------
    def __add__(self, other):
        other = _wrap(other)
        if isinstance(self, Const) and isinstance(other, Const):
            return Const(self.value + other.value)
        if isinstance(other, Const) and other.value == 0:
            return self
        if isinstance(self, Const) and self.value == 0:
            return other
        terms = []
        for t in (self, other):
            terms.extend(t.terms if isinstance(t, Add) else (t,))
        return Add(tuple(terms))

    def __radd__(self, other):
        return _wrap(other) + self

    def __neg__(self):
        return Const(-1) * self

    def __sub__(self, other):
        return self + (-_wrap(other))

    def __rsub__(self, other):
        return _wrap(other) + (-self)

    def __mul__(self, other):
        other = _wrap(other)
        if isinstance(self, Const) and isinstance(other, Const):
            return Const(self.value * other.value)
        for a, b in ((self, other), (other, self)):
            if isinstance(a, Const):
                if a.value == 0:
                    return Const(0)
                if a.value == 1:
                    return b
        factors = []
        for t in (self, other):
            factors.extend(t.factors if isinstance(t, Mul) else (t,))
        consts = [f for f in factors if isinstance(f, Const)]
        rest = [f for f in factors if not isinstance(f, Const)]
        if len(consts) > 1:
            c = Fraction(1)
            for f in consts:
                c *= f.value
            consts = [Const(c)] if c != 1 else []
        return Mul(tuple(consts + rest)) if len(consts + rest) > 1 else (consts + rest)[0]

    def __rmul__(self, other):
        return _wrap(other) * self

    def __truediv__(self, other):
        other = _wrap(other)
        if isinstance(other, Const):
            if other.value == 0:
                raise ZeroDivisionError("field expression divided by constant zero")
            return self * Const(1 / other.value)
        return Div(self, other)

    def __rtruediv__(self, other):
        return Div(_wrap(other), self)

    def __pow__(self, q):
        q = as_rational(q)
        if q == 0:
            return Const(1)
        if q == 1:
            return self
        if isinstance(self, Const) and q.denominator == 1 and (self.value != 0 or q > 0):
            return Const(self.value ** int(q))
        return Pow(self, q)

    # -- evaluation -------------------------------------------------------
    def evaluate(self, env: Mapping[str, float]) -> float:
        return float(self._eval({k: float(v) for k, v in env.items()}))

    def __repr__(self):
        return f"FieldCoef({self.to_text()})"

    def __str__(self):
        return self.to_text()

    def variables(self) -> set[str]:
        out: set[str] = set()
        self._collect(out)
        return out

    def _collect(self, out: set):
        for child in self._children():
            child._collect(out)

    def _children(self):
        return ()


def _wrap(x) -> FieldCoef:
    if isinstance(x, FieldCoef):
        return x
    if isinstance(x, MultiPoly):
        return poly(x)
    return Const(as_rational(x))


class Const(FieldCoef):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = as_rational(value)
        self._init_key(("const", self.value))

    def _eval(self, env):
        return float(self.value)

    def _lift(self, ctx):
        return ctx.constant(self.value)

    def to_text(self):
        v = self.value
        return str(v) if v.denominator == 1 and v >= 0 else f"({v})"


class Var(FieldCoef):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._init_key(("var", name))

    def _eval(self, env):
        return env[self.name]

    def _lift(self, ctx):
        return ctx.variable(self.name)

    def _collect(self, out):
        out.add(self.name)

    def to_text(self):
        return self.name


class Add(FieldCoef):
    __slots__ = ("terms",)

    def __init__(self, terms: tuple):
        self.terms = tuple(terms)
        self._init_key(("add",) + tuple(t.key for t in self.terms))

    def _children(self):
        return self.terms

    def _eval(self, env):
        return sum(t._eval(env) for t in self.terms)

    def _lift(self, ctx):
        out = ctx.lift(self.terms[0])
        for t in self.terms[1:]:
            out = out + ctx.lift(t)
        return out

    def to_text(self):
        return "(" + " + ".join(t.to_text() for t in self.terms) + ")"


class Mul(FieldCoef):
    __slots__ = ("factors",)

    def __init__(self, factors: tuple):
        self.factors = tuple(factors)
        self._init_key(("mul",) + tuple(f.key for f in self.factors))

    def _children(self):
        return self.factors

    def _eval(self, env):
        return math.prod(f._eval(env) for f in self.factors)

    def _lift(self, ctx):
        out = ctx.lift(self.factors[0])
        for f in self.factors[1:]:
            out = out * ctx.lift(f)
        return out

    def to_text(self):
        return "*".join(f.to_text() for f in self.factors)


class Div(FieldCoef):
    __slots__ = ("num", "den")

    def __init__(self, num: FieldCoef, den: FieldCoef):
        self.num = num
        self.den = den
        self._init_key(("div", num.key, den.key))

    def _children(self):
        return (self.num, self.den)

    def _eval(self, env):
        d = self.den._eval(env)
        if d == 0:
            raise SingularPointError(f"singular point: denominator {self.den.to_text()} vanishes")
        return self.num._eval(env) / d

    def _lift(self, ctx):
        d = ctx.lift(self.den)
        if d.value == 0:
            raise SingularPointError(
                f"singular point: denominator {self.den.to_text()} vanishes at {ctx.describe()}"
            )
        return ctx.lift(self.num) * taylor.reciprocal(d)

    def to_text(self):
        return f"{_paren(self.num)}/{_paren(self.den)}"


class Pow(FieldCoef):
    __slots__ = ("base", "expo")

    def __init__(self, base: FieldCoef, expo):
        self.base = base
        self.expo = as_rational(expo)
        self._init_key(("pow", base.key, self.expo))

    def _children(self):
        return (self.base,)

    def _eval(self, env):
        b = self.base._eval(env)
        if b == 0 and self.expo < 0:
            raise SingularPointError(f"singular point: {self.base.to_text()} vanishes")
        return b ** float(self.expo) if self.expo.denominator != 1 else b ** int(self.expo)

    def _lift(self, ctx):
        b = ctx.lift(self.base)
        if b.value == 0 and (self.expo < 0 or self.expo.denominator != 1):
            raise SingularPointError(
                f"singular point: {self.base.to_text()} vanishes at {ctx.describe()}"
            )
        if self.expo.denominator == 1 and self.expo >= 0:
            return b ** int(self.expo)
        return taylor.power(b, self.expo if b.exact else float(self.expo))

    def to_text(self):
        e = self.expo
        return f"{_paren(self.base)}^{e if e.denominator == 1 and e > 0 else f'({e})'}"


class _Unary(FieldCoef):
    __slots__ = ("arg",)
    name = ""

    def __init__(self, arg: FieldCoef):
        self.arg = arg
        self._init_key((self.name, arg.key))

    def _children(self):
        return (self.arg,)

    def to_text(self):
        return f"{self.name}({self.arg.to_text()})"


class Exp(_Unary):
    __slots__ = ()
    name = "exp"

    def _eval(self, env):
        return math.exp(self.arg._eval(env))

    def _lift(self, ctx):
        return taylor.exp(ctx.lift(self.arg))


class Log(_Unary):
    __slots__ = ()
    name = "log"

    def _eval(self, env):
        return math.log(self.arg._eval(env))

    def _lift(self, ctx):
        a = ctx.lift(self.arg)
        if a.value == 0:
            raise SingularPointError(f"singular point: log argument {self.arg.to_text()} vanishes")
        return taylor.log(a)


class Sqrt(_Unary):
    __slots__ = ()
    name = "sqrt"

    def _eval(self, env):
        return math.sqrt(self.arg._eval(env))

    def _lift(self, ctx):
        a = ctx.lift(self.arg)
        if a.value == 0:
            raise SingularPointError(
                f"singular point: sqrt argument {self.arg.to_text()} vanishes at {ctx.describe()}"
            )
        return taylor.sqrt(a)


class Sin(_Unary):
    __slots__ = ()
    name = "sin"

    def _eval(self, env):
        return math.sin(self.arg._eval(env))

    def _lift(self, ctx):
        return taylor.sin(ctx.lift(self.arg))


class Cos(_Unary):
    __slots__ = ()
    name = "cos"

    def _eval(self, env):
        return math.cos(self.arg._eval(env))

    def _lift(self, ctx):
        return taylor.cos(ctx.lift(self.arg))


class PolyOf(FieldCoef):
    """A MultiPoly evaluated at sub-expressions (one per polynomial variable)."""

    __slots__ = ("poly", "args")

    def __init__(self, poly: MultiPoly, args: Sequence[FieldCoef]):
        if len(args) != poly.arity:
            raise ValueError(f"arity mismatch: {poly.arity} variables, {len(args)} arguments")
        self.poly = poly
        self.args = tuple(args)
        self._init_key(("poly", poly, tuple(a.key for a in self.args)))

    def _children(self):
        return self.args

    def _eval(self, env):
        return float(horner(self.poly, [a._eval(env) for a in self.args], zero=0.0, one=1.0))

    def _lift(self, ctx):
        vals = [ctx.lift(a) for a in self.args]
        out = horner(self.poly, vals)
        if not isinstance(out, Jet):
            out = ctx.constant(out)
        return out

    def to_text(self):
        plain = all(isinstance(a, Var) and a.name == v for a, v in zip(self.args, self.poly.vars))
        if plain:
            return f"[{self.poly.to_text()}]"
        subs = ", ".join(f"{v}={a.to_text()}" for v, a in zip(self.poly.vars, self.args))
        return f"[{self.poly.to_text()}]({subs})"


def _paren(e: FieldCoef) -> str:
    t = e.to_text()
    if isinstance(e, (Var, Const, _Unary, PolyOf)) or t.startswith("("):
        return t
    return f"({t})"


# -- constructors --------------------------------------------------------


def const(c) -> Const:
    return Const(c)


def var(name: str) -> Var:
    return Var(name)


def poly(p: MultiPoly) -> FieldCoef:
    if p.is_constant():
        return Const(p.constant_term())
    return PolyOf(p, [Var(v) for v in p.vars])


def sin(e) -> FieldCoef:
    return Sin(_wrap(e))


def cos(e) -> FieldCoef:
    return Cos(_wrap(e))


def tan(e) -> FieldCoef:
    return sin(e) / cos(e)


def cot(e) -> FieldCoef:
    return cos(e) / sin(e)


def sqrt(e) -> FieldCoef:
    return Sqrt(_wrap(e))


def exp(e) -> FieldCoef:
    e = _wrap(e)
    if isinstance(e, Const) and e.value == 0:
        return Const(1)
    return Exp(e)


def log(e) -> FieldCoef:
    return Log(_wrap(e))


# -- lifting ---------------------------------------------------------------


class LiftContext:
    """Memoized lifting of many expressions at one point and order."""

    def __init__(self, variables: Sequence[str], point: Sequence, order: int, exact: bool | None = None):
        self.variables = tuple(variables)
        if len(point) != len(self.variables):
            raise ValueError(
                f"arity mismatch: {len(point)} point coordinates for variables {self.variables}"
            )
        if exact is None:
            exact = all(
                isinstance(v, (int, Fraction, ExactAngle)) and not isinstance(v, bool) for v in point
            )
        self.exact = exact
        self.point = tuple(point)
        self.order = order
        self._index = {v: i for i, v in enumerate(self.variables)}
        self._memo: dict[FieldCoef, Jet] = {}

    def describe(self) -> str:
        return ", ".join(f"{v}={p}" for v, p in zip(self.variables, self.point))

    def constant(self, value) -> Jet:
        return Jet.constant(value, len(self.variables), self.order, self.exact)

    def variable(self, name: str) -> Jet:
        try:
            i = self._index[name]
        except KeyError:
            raise ValueError(f"expression variable {name!r} not among {self.variables}") from None
        return Jet.variable(i, self.point[i], len(self.variables), self.order, self.exact)

    def lift(self, expr: FieldCoef) -> Jet:
        got = self._memo.get(expr)
        if got is None:
            got = expr._lift(self)
            self._memo[expr] = got
        return got

    def at_order(self, order: int) -> "LiftContext":
        return LiftContext(self.variables, self.point, order, self.exact)


def lift(expr, variables: Sequence[str], point: Sequence, order: int, exact: bool | None = None) -> Jet:
    """Taylor expansion of ``expr`` at ``point`` through ``order``.

    ``point`` holds Fractions/ExactAngles (exact mode) or floats.  Raises
    :class:`SingularPointError` naming the offending factor when the
    expression is singular there.
    """
    return LiftContext(variables, point, order, exact).lift(_wrap(expr))


jet_lift = lift

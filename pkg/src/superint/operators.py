"""Linear differential operators.

``PolyDiffOp``  -- polynomial coefficients, exact; closed under composition
                   and commutators, acts on :class:`MultiPoly`.
``FieldDiffOp`` -- :class:`FieldCoef` coefficients; acts on jets at a point.

Both keep terms as ``{derivative multi-index: coefficient}`` with every
coefficient to the left of its derivative.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Sequence

from .expr import Const, FieldCoef, LiftContext, _wrap
from .expr import poly as poly_coef
from .polycore import MultiPoly, as_rational
from .taylor import Jet

__all__ = [
    "PolyDiffOp",
    "FieldDiffOp",
    "PointEvaluator",
    "op_apply_poly",
    "op_compose",
    "op_commutator",
    "op_apply_jet",
    "op_commutator_numeric",
    "graded_lex_key",
]


def graded_lex_key(alpha: Sequence[int]):
    return (sum(alpha), tuple(-a for a in alpha))


def _unit(i: int, d: int) -> tuple:
    return tuple(1 if j == i else 0 for j in range(d))


def _d_string(alpha) -> str:
    return "D[" + ",".join(str(a) for a in alpha) + "]"


class PolyDiffOp:
    """Sum of ``coef(x) * d^alpha`` with MultiPoly coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, MultiPoly] | None = None):
        vars = tuple(vars)
        clean: dict[tuple, MultiPoly] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != len(vars):
                raise ValueError(f"derivative {alpha} does not match variables {vars}")
            if not isinstance(c, MultiPoly):
                c = MultiPoly.const(as_rational(c), vars)
            if c.vars != vars:
                raise ValueError(f"arity mismatch: coefficient in {c.vars}, operator in {vars}")
            if alpha in clean:
                c = clean[alpha] + c
            clean[alpha] = c
        self.vars = vars
        self.terms = {a: c for a, c in sorted(clean.items(), key=lambda kv: graded_lex_key(kv[0])) if not c.is_zero()}
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, vars) -> "PolyDiffOp":
        return cls(vars)

    @classmethod
    def identity(cls, vars) -> "PolyDiffOp":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): MultiPoly.const(1, vars)})

    @classmethod
    def mult(cls, p: MultiPoly) -> "PolyDiffOp":
        """Multiplication by the polynomial ``p``."""
        return cls(p.vars, {(0,) * p.arity: p})

    @classmethod
    def d(cls, var: str, vars, times: int = 1) -> "PolyDiffOp":
        vars = tuple(vars)
        i = vars.index(var)
        alpha = tuple(times if j == i else 0 for j in range(len(vars)))
        return cls(vars, {alpha: MultiPoly.const(1, vars)})

    # -- queries -----------------------------------------------------------
    @property
    def arity(self) -> int:
        return len(self.vars)

    @property
    def order(self) -> int:
        return max((sum(a) for a in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, PolyDiffOp) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- algebra -------------------------------------------------------
    def _same(self, other: "PolyDiffOp"):
        if not isinstance(other, PolyDiffOp):
            raise TypeError(f"expected PolyDiffOp, got {type(other).__name__}")
        if other.vars != self.vars:
            raise ValueError(f"arity mismatch: operator variables {self.vars} vs {other.vars}")

    def __add__(self, other):
        if not isinstance(other, PolyDiffOp):
            other = PolyDiffOp.identity(self.vars) * other
        self._same(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out[a] + c if a in out else c
        return PolyDiffOp(self.vars, out)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return PolyDiffOp(self.vars, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PolyDiffOp):
            return self.compose(other)
        if isinstance(other, MultiPoly):
            return self.compose(PolyDiffOp.mult(other))
        c = as_rational(other)
        return PolyDiffOp(self.vars, {a: p * c for a, p in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, MultiPoly):
            return PolyDiffOp.mult(other).compose(self)
        return self * other

    def __pow__(self, k: int):
        out = PolyDiffOp.identity(self.vars)
        for _ in range(k):
            out = out.compose(self)
        return out

    def compose(self, other: "PolyDiffOp") -> "PolyDiffOp":
        """``self o other`` brought to normal form by the Leibniz rule."""
        self._same(other)
        out: dict[tuple, MultiPoly] = {}
        for alpha, a in self.terms.items():
            for beta, b in other.terms.items():
                for gamma in _sub_indices(alpha):
                    db = b.diff_multi(gamma)
                    if db.is_zero():
                        continue
                    mult = math.prod(math.comb(al, g) for al, g in zip(alpha, gamma))
                    key = tuple(al - g + be for al, g, be in zip(alpha, gamma, beta))
                    term = a * db * mult
                    out[key] = out[key] + term if key in out else term
        return PolyDiffOp(self.vars, out)

    def commutator(self, other: "PolyDiffOp") -> "PolyDiffOp":
        return self.compose(other) - other.compose(self)

    def apply(self, p: MultiPoly) -> MultiPoly:
        if p.vars != self.vars:
            raise ValueError(f"arity mismatch: operator in {self.vars}, polynomial in {p.vars}")
        out = MultiPoly.zero(self.vars)
        for alpha, c in self.terms.items():
            dp = p.diff_multi(alpha)
            if not dp.is_zero():
                out = out + c * dp
        return out

    __call__ = apply

    def embed(self, vars: Sequence[str]) -> "PolyDiffOp":
        vars = tuple(vars)
        pos = [vars.index(v) for v in self.vars]
        out = {}
        for alpha, c in self.terms.items():
            new = [0] * len(vars)
            for a, j in zip(alpha, pos):
                new[j] = a
            out[tuple(new)] = c.embed(vars)
        return PolyDiffOp(vars, out)

    def to_field(self) -> "FieldDiffOp":
        return FieldDiffOp(self.vars, {a: poly_coef(c) for a, c in self.terms.items()})

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c.to_text()}) · {_d_string(a)}" for a, c in self.terms.items())

    def __repr__(self):
        return f"PolyDiffOp({self.to_text()}, vars={self.vars})"

    __str__ = to_text


def _sub_indices(alpha: tuple):
    if not alpha:
        yield ()
        return
    for g in range(alpha[0] + 1):
        for rest in _sub_indices(alpha[1:]):
            yield (g,) + rest


class FieldDiffOp:
    """Sum of ``coef(x) * d^alpha`` with symbolic field coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, object] | None = None):
        vars = tuple(vars)
        clean: dict[tuple, FieldCoef] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != len(vars):
                raise ValueError(f"derivative {alpha} does not match variables {vars}")
            c = _wrap(c)
            clean[alpha] = clean[alpha] + c if alpha in clean else c
        self.vars = vars
        self.terms = {
            a: c
            for a, c in sorted(clean.items(), key=lambda kv: graded_lex_key(kv[0]))
            if not (isinstance(c, Const) and c.value == 0)
        }

    @classmethod
    def scalar(cls, coef, vars) -> "FieldDiffOp":
        """Multiplication by a scalar field."""
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): coef})

    @classmethod
    def d(cls, var: str, vars, times: int = 1) -> "FieldDiffOp":
        return PolyDiffOp.d(var, vars, times).to_field()

    @property
    def arity(self) -> int:
        return len(self.vars)

    @property
    def order(self) -> int:
        return max((sum(a) for a in self.terms), default=0)

    def __add__(self, other):
        if isinstance(other, PolyDiffOp):
            other = other.to_field()
        if not isinstance(other, FieldDiffOp):
            other = FieldDiffOp.scalar(other, self.vars)
        if other.vars != self.vars:
            raise ValueError(f"arity mismatch: operator variables {self.vars} vs {other.vars}")
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out[a] + c if a in out else c
        return FieldDiffOp(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return self.scaled(Const(-1))

    def __sub__(self, other):
        if isinstance(other, PolyDiffOp):
            other = other.to_field()
        if not isinstance(other, FieldDiffOp):
            other = FieldDiffOp.scalar(other, self.vars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scaled(self, coef) -> "FieldDiffOp":
        """Left multiplication by a scalar field: ``coef * self``."""
        coef = _wrap(coef)
        return FieldDiffOp(self.vars, {a: coef * c for a, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (FieldDiffOp, PolyDiffOp)):
            raise TypeError("field operators are composed by sequential application, not symbolically")
        return self.scaled(other)

    __rmul__ = __mul__

    def embed(self, vars: Sequence[str]) -> "FieldDiffOp":
        vars = tuple(vars)
        pos = [vars.index(v) for v in self.vars]
        out = {}
        for alpha, c in self.terms.items():
            new = [0] * len(vars)
            for a, j in zip(alpha, pos):
                new[j] = a
            out[tuple(new)] = c
        return FieldDiffOp(vars, out)

    def coefficient(self, alpha: Sequence[int]) -> FieldCoef:
        return self.terms.get(tuple(alpha), Const(0))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c.to_text()} · {_d_string(a)}" for a, c in self.terms.items())

    def __repr__(self):
        return f"FieldDiffOp({self.to_text()}, vars={self.vars})"

    __str__ = to_text


class PointEvaluator:
    """Applies field operators to jets based at one fixed point.

    Coefficient lifts are memoized per output order, so applying many
    operators (or one operator many times) at the same point is cheap.
    """

    def __init__(self, variables: Sequence[str], point: Sequence, exact: bool | None = None):
        self.variables = tuple(variables)
        self._base = LiftContext(self.variables, point, 0, exact)
        self.exact = self._base.exact
        self.point = self._base.point
        self._ctx: dict[int, LiftContext] = {}

    def context(self, order: int) -> LiftContext:
        ctx = self._ctx.get(order)
        if ctx is None:
            ctx = self._base.at_order(order)
            self._ctx[order] = ctx
        return ctx

    def lift(self, expr, order: int) -> Jet:
        return self.context(order).lift(_wrap(expr))

    def coordinates(self, order: int) -> list[Jet]:
        ctx = self.context(order)
        return [ctx.variable(v) for v in self.variables]

    def apply(self, op, f: Jet, out_order: int | None = None) -> Jet:
        if isinstance(op, PolyDiffOp):
            op = op.to_field()
        if op.vars != self.variables:
            raise ValueError(f"arity mismatch: operator in {op.vars}, point in {self.variables}")
        k = f.order - op.order
        if k < 0:
            raise ValueError(f"insufficient jet order: operator order {op.order}, jet order {f.order}")
        if out_order is not None:
            if out_order > k:
                raise ValueError(f"insufficient jet order for output order {out_order}")
            k = out_order
        out = None
        for alpha, coef in op.terms.items():
            term = self.lift(coef, k) * f.diff(alpha).truncate(k)
            out = term if out is None else out + term
        if out is None:
            out = f.truncate(k) * 0
        return out

    def apply_word(self, ops: Iterable, f: Jet) -> Jet:
        """``ops[0](ops[1](...ops[-1](f)))``."""
        out = f
        for op in reversed(list(ops)):
            out = self.apply(op, out)
        return out

    def commutator(self, a, b, f: Jet) -> Jet:
        need = _order(a) + _order(b)
        if f.order < need:
            raise ValueError(f"insufficient test order: need {need}, have {f.order}")
        return self.apply_word([a, b], f) - self.apply_word([b, a], f)


def _order(op) -> int:
    return op.order


# -- functional spellings of the operations -----------------------------------


def op_apply_poly(op: PolyDiffOp, p: MultiPoly) -> MultiPoly:
    return op.apply(p)


def op_compose(a: PolyDiffOp, b: PolyDiffOp) -> PolyDiffOp:
    return a.compose(b)


def op_commutator(a: PolyDiffOp, b: PolyDiffOp) -> PolyDiffOp:
    return a.commutator(b)


def op_apply_jet(op, f: Jet, point: Sequence, exact: bool | None = None) -> Jet:
    """Apply ``op`` to the jet ``f`` based at ``point`` (aligned with ``op.vars``)."""
    return PointEvaluator(op.vars, point, exact).apply(op, f)


def op_commutator_numeric(a, b, f: Jet, point: Sequence, exact: bool | None = None) -> Jet:
    """Jet of ``a(b(f)) - b(a(f))`` at ``point``."""
    return PointEvaluator(a.vars, point, exact).commutator(a, b, f)

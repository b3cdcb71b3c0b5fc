"""Separated eigenfunctions: a gauge factor times an exact polynomial."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .. import expr as E
from ..expr import FieldCoef
from ..polycore import MultiPoly, jacobi, laguerre
from .coords import cartesian_vars, parabolic_blocks, parabolic_vars, spherical_blocks, spherical_vars
from .params import EigenvalueRecord, ModelParams, Parabolic, QuantumNumbers, Spherical
from .spectrum import spectrum


def parabolic_gauge_vars(n: int) -> tuple:
    """s = omega mu^2, t = omega nu^2 and z_l = cos(2 theta_{n-l-1}) for l = 1..n-2."""
    return ("s", "t") + tuple(f"z{l}" for l in range(1, n - 1))


def spherical_gauge_vars(n: int) -> tuple:
    """rho = 2 omega r and z_l = cos(2 theta_l) for l = 1..n-1."""
    return ("rho",) + tuple(f"z{l}" for l in range(1, n))


def _power(base: FieldCoef, e: Fraction):
    if e == 0:
        return None
    return base if e == 1 else base ** e


@dataclass
class Eigenfunction:
    """psi = (product of gauge factors) * poly(gauge variables).

    ``factors`` lists ``(description, base, exponent)`` in curvilinear
    variables, except the exponential factor whose base is its argument
    and exponent is the string ``"exp"``.  ``args`` gives each gauge
    variable as a function of the curvilinear coordinates.
    """

    params: ModelParams
    qn: QuantumNumbers
    record: EigenvalueRecord
    system: str
    vars: tuple
    poly: MultiPoly
    args: tuple
    factors: tuple
    cartesian_args: tuple
    cartesian_factors: tuple

    @property
    def gauge_vars(self) -> tuple:
        return self.poly.vars

    @staticmethod
    def _gauge(factors) -> FieldCoef:
        out = E.const(1)
        for _, base, e in factors:
            if e == "exp":
                out = out * E.exp(base)
            else:
                f = _power(base, e)
                if f is not None:
                    out = out * f
        return out

    def gauge(self) -> FieldCoef:
        """The gauge factor alone, in the curvilinear variables."""
        return self._gauge(self.factors)

    def psi(self) -> FieldCoef:
        """psi in the curvilinear variables ``self.vars``."""
        return self._gauge(self.factors) * E.PolyOf(self.poly, self.args)

    def psi_cartesian(self) -> FieldCoef:
        """psi as a function of x_1..x_n, valid in the open positive orthant."""
        return self._gauge(self.cartesian_factors) * E.PolyOf(self.poly, self.cartesian_args)

    def describe_gauge(self) -> str:
        parts = []
        for text, _, e in self.factors:
            if e == "exp":
                parts.append(text)
            elif e != 0:
                parts.append(f"({text})^({e})")
        return " * ".join(parts) if parts else "1"

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "quantum_numbers": list(self.qn.as_tuple()),
            "gauge": self.describe_gauge(),
            "gauge_variables": list(self.gauge_vars),
            "polynomial": self.poly.to_text(),
            "eigenvalues": self.record.to_json(),
        }


def _parabolic(params: ModelParams, qn: Parabolic, rec: EigenvalueRecord) -> Eigenfunction:
    n = params.n
    m = rec.m
    w = rec.sqrt_minus_2E
    G = parabolic_gauge_vars(n)
    mtop = m[n - 2]
    poly = laguerre(qn.N1, mtop, "s").embed(G) * laguerre(qn.N2, mtop, "t").embed(G)
    for l in range(1, n - 1):
        poly = poly * jacobi(qn.J[l - 1], params.p_at(l + 1) - Fraction(1, 2), m[l - 1], f"z{l}").embed(G)
    sigma = 2 * sum(qn.J) + sum(params.p)

    mu, nu = E.var("mu"), E.var("nu")
    args = [E.const(w) * mu * mu, E.const(w) * nu * nu]
    factors = [("mu*nu", mu * nu, sigma), (f"exp(-({w / 2})*(mu^2+nu^2))", -E.const(w / 2) * (mu * mu + nu * nu), "exp")]
    B = parabolic_blocks(n)
    cargs = [E.const(w) * B["mu2"], E.const(w) * B["nu2"]]
    cfactors = [("mu*nu", B["munu"], sigma), ("exp", -E.const(w / 2) * (B["mu2"] + B["nu2"]), "exp")]
    for l in range(1, n - 1):
        i = n - l - 1
        th = E.var(f"theta{i}")
        args.append(E.cos(2 * th))
        cargs.append(B[f"cos2_{i}"])
        es = params.p_at(l + 1)
        ec = m[l - 1] + 1 - Fraction(l, 2)
        factors += [(f"sin(theta{i})", E.sin(th), es), (f"cos(theta{i})", E.cos(th), ec)]
        cfactors += [("sin", B[f"sin{i}"], es), ("cos", B[f"cos{i}"], ec)]
    return Eigenfunction(
        params, qn, rec, "parabolic", parabolic_vars(n), poly,
        tuple(args), tuple(factors), tuple(cargs), tuple(cfactors),
    )


def _spherical(params: ModelParams, qn: Spherical, rec: EigenvalueRecord) -> Eigenfunction:
    n = params.n
    m = rec.m
    w = rec.sqrt_minus_2E
    G = spherical_gauge_vars(n)
    poly = laguerre(qn.Nr, 2 * m[1], "rho").embed(G)
    for l in range(1, n):
        poly = poly * jacobi(qn.J[l - 1], m[l + 1], params.p_at(l) - Fraction(1, 2), f"z{l}").embed(G)

    r = E.var("r")
    B = spherical_blocks(n)
    er = m[1] - Fraction(n - 2, 2)
    args = [2 * E.const(w) * r]
    cargs = [2 * E.const(w) * B["r"]]
    factors = [("r", r, er), (f"exp(-({w})*r)", -E.const(w) * r, "exp")]
    cfactors = [("r", B["r"], er), ("exp", -E.const(w) * B["r"], "exp")]
    for l in range(1, n):
        th = E.var(f"theta{l}")
        args.append(E.cos(2 * th))
        cargs.append(B[f"cos2_{l}"])
        es = m[l + 1] + 1 - Fraction(n - l, 2)
        ec = params.p_at(l)
        factors += [(f"sin(theta{l})", E.sin(th), es), (f"cos(theta{l})", E.cos(th), ec)]
        cfactors += [("sin", B[f"sin{l}"], es), ("cos", B[f"cos{l}"], ec)]
    return Eigenfunction(
        params, qn, rec, "spherical", spherical_vars(n), poly,
        tuple(args), tuple(factors), tuple(cargs), tuple(cfactors),
    )


def eigenfunction(params: ModelParams, qn: QuantumNumbers) -> Eigenfunction:
    """Gauge factor and polynomial part of the separated state ``qn``."""
    rec = spectrum(params, qn)
    if isinstance(qn, Parabolic):
        return _parabolic(params, qn, rec)
    return _spherical(params, qn, rec)


__all__ = [
    "Eigenfunction",
    "eigenfunction",
    "parabolic_gauge_vars",
    "spherical_gauge_vars",
    "cartesian_vars",
]

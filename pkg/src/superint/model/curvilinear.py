"""Separated operators in parabolic and spherical coordinates.

Angular operators come in two forms.  The chain form nests the full
lower-level operator; the resolved form replaces it by the separation
constant of a chosen state, which is what the separated ODEs use.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .. import expr as E
from ..operators import FieldDiffOp
from .coords import parabolic_vars, spherical_vars
from .params import EigenvalueRecord, ModelError, ModelParams


def _d(v, V, times=1) -> FieldDiffOp:
    return FieldDiffOp.d(v, V, times)


# -- parabolic ------------------------------------------------------------


def _parabolic_angle(n: int, l: int) -> str:
    """Name of the angle eliminated at chain level l: theta_{n-l-1}."""
    return f"theta{n - l - 1}"


def _lambda_step(params: ModelParams, l: int, inner, V) -> FieldDiffOp:
    """d^2 - (l-1) tan d + inner / cos^2 - p_{l+1}(p_{l+1}-1) / sin^2 in theta_{n-l-1}."""
    name = _parabolic_angle(params.n, l)
    th = E.var(name)
    p = params.p_at(l + 1)
    out = _d(name, V, 2)
    if l != 1:
        out = out + _d(name, V).scaled(-(l - 1) * E.tan(th))
    if isinstance(inner, FieldDiffOp):
        out = out + inner.scaled(1 / E.cos(th) ** 2)
    elif inner:
        out = out + E.const(inner) / E.cos(th) ** 2
    if p * (p - 1):
        out = out - E.const(p * (p - 1)) / E.sin(th) ** 2
    return out


def parabolic_angular_chain(params: ModelParams) -> dict:
    """Lambda_0 (a constant) and the operators Lambda_1..Lambda_{n-2}."""
    n = params.n
    V = parabolic_vars(n)
    p1 = params.p_at(1)
    chain = {0: FieldDiffOp.scalar(-p1 * (p1 - 1), V)}
    for l in range(1, n - 1):
        chain[l] = _lambda_step(params, l, chain[l - 1], V)
    return chain


def parabolic_hamiltonian(params: ModelParams, top: FieldDiffOp) -> FieldDiffOp:
    n = params.n
    V = parabolic_vars(n)
    mu, nu = E.var("mu"), E.var("nu")
    S = mu * mu + nu * nu
    radial = (
        _d("mu", V, 2)
        + _d("mu", V).scaled((n - 2) / mu)
        + _d("nu", V, 2)
        + _d("nu", V).scaled((n - 2) / nu)
    )
    return (
        radial.scaled(-1 / (2 * S))
        - 2 * E.const(params.gamma) / S
        - top.scaled(1 / (2 * mu * mu * nu * nu))
    )


def parabolic_x(params: ModelParams, top: FieldDiffOp) -> FieldDiffOp:
    n = params.n
    V = parabolic_vars(n)
    mu, nu = E.var("mu"), E.var("nu")
    S = mu * mu + nu * nu
    mu_part = _d("mu", V, 2) + _d("mu", V).scaled((n - 2) / mu)
    nu_part = _d("nu", V, 2) + _d("nu", V).scaled((n - 2) / nu)
    kinetic = mu_part.scaled(-nu * nu) + nu_part.scaled(mu * mu)
    diff = mu * mu - nu * nu
    return (
        kinetic.scaled(1 / (2 * S))
        + E.const(params.gamma) * diff / S
        + top.scaled(diff / (2 * mu * mu * nu * nu))
    )


def build_parabolic_ops(params: ModelParams, k: Mapping[int, Fraction] | EigenvalueRecord | None = None) -> dict:
    """H, X, the chain Z_l (= Lambda_l) and, given k, the resolved Z_l.

    ``k`` maps l to k_l (an :class:`EigenvalueRecord` of a parabolic state
    may be passed directly); the resolved Z_l uses k_{l-1} in place of
    Lambda_{l-1}.
    """
    n = params.n
    V = parabolic_vars(n)
    chain = parabolic_angular_chain(params)
    top = chain[n - 2]
    ops = {
        "vars": V,
        "H": parabolic_hamiltonian(params, top),
        "X": parabolic_x(params, top),
        "Z": {l: chain[l] for l in range(1, n - 1)},
        "Lambda": chain,
    }
    if isinstance(k, EigenvalueRecord):
        if k.system != "parabolic":
            raise ModelError("resolved parabolic operators need a parabolic eigenvalue record")
        k = k.k
    if k is not None:
        ops["Z_resolved"] = {l: _lambda_step(params, l, Fraction(k[l - 1]), V) for l in range(1, n - 1)}
    return ops


def build_q0_q1(params: ModelParams, E_value: Fraction) -> tuple[FieldDiffOp, FieldDiffOp]:
    """Q0 = (mu^2+nu^2)(H-E) + 2 gamma and Q1 = 2X + (mu^2-nu^2)(H-E).

    On an eigenstate with energy E they act as 2 gamma and 2 lambda.
    """
    ops = build_parabolic_ops(params)
    mu, nu = E.var("mu"), E.var("nu")
    shifted = ops["H"] - E.const(E_value)
    q0 = shifted.scaled(mu * mu + nu * nu) + 2 * E.const(params.gamma)
    q1 = ops["X"] * 2 + shifted.scaled(mu * mu - nu * nu)
    return q0, q1


# -- spherical ------------------------------------------------------------


def _upsilon_step(params: ModelParams, l: int, inner, V) -> FieldDiffOp:
    """d^2 + (n-l-1) cot d - p_l(p_l-1)/cos^2 + inner/sin^2 in theta_l."""
    n = params.n
    name = f"theta{l}"
    th = E.var(name)
    p = params.p_at(l)
    out = _d(name, V, 2)
    if n - l - 1:
        out = out + _d(name, V).scaled((n - l - 1) * E.cot(th))
    if p * (p - 1):
        out = out - E.const(p * (p - 1)) / E.cos(th) ** 2
    if isinstance(inner, FieldDiffOp):
        out = out + inner.scaled(1 / E.sin(th) ** 2)
    elif inner:
        out = out + E.const(inner) / E.sin(th) ** 2
    return out


def spherical_angular_chain(params: ModelParams) -> dict:
    """Upsilon_{n-1}, ..., Upsilon_1, keyed by l."""
    n = params.n
    V = spherical_vars(n)
    chain = {n - 1: _upsilon_step(params, n - 1, None, V)}
    for l in range(n - 2, 0, -1):
        chain[l] = _upsilon_step(params, l, chain[l + 1], V)
    return chain


def build_spherical_ops(params: ModelParams, k: Mapping[int, Fraction] | EigenvalueRecord | None = None) -> dict:
    """H, the chain Y_l (= Upsilon_l) and, given k, the resolved Y_l."""
    n = params.n
    V = spherical_vars(n)
    chain = spherical_angular_chain(params)
    r = E.var("r")
    radial = _d("r", V, 2) + _d("r", V).scaled((n - 1) / r) + 2 * E.const(params.gamma) / r
    ops = {
        "vars": V,
        "H": radial * Fraction(-1, 2) - chain[1].scaled(1 / (2 * r * r)),
        "Y": dict(sorted(chain.items())),
    }
    if isinstance(k, EigenvalueRecord):
        if k.system != "spherical":
            raise ModelError("resolved spherical operators need a spherical eigenvalue record")
        k = k.k
    if k is not None:
        resolved = {n - 1: chain[n - 1]}
        for l in range(1, n - 1):
            resolved[l] = _upsilon_step(params, l, Fraction(k[l + 1]), V)
        ops["Y_resolved"] = dict(sorted(resolved.items()))
    return ops

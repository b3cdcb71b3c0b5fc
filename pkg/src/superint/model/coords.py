"""Coordinate systems: variable names and the maps to Cartesian coordinates."""

from __future__ import annotations

from typing import Sequence

from .. import expr as E
from ..expr import FieldCoef
from .params import ModelError

SYSTEMS = ("cartesian", "parabolic", "spherical")


def cartesian_vars(n: int) -> tuple:
    return tuple(f"x{i}" for i in range(1, n + 1))


def parabolic_vars(n: int) -> tuple:
    if n < 3:
        raise ModelError("parabolic coordinates need n >= 3")
    return ("mu", "nu") + tuple(f"theta{i}" for i in range(1, n - 1))


def spherical_vars(n: int) -> tuple:
    return ("r",) + tuple(f"theta{i}" for i in range(1, n))


def variables(system: str, n: int) -> tuple:
    if system == "cartesian":
        return cartesian_vars(n)
    if system == "parabolic":
        return parabolic_vars(n)
    if system == "spherical":
        return spherical_vars(n)
    raise ModelError(f"unknown coordinate system {system!r}")


def parabolic_to_cartesian(n: int) -> list[FieldCoef]:
    """x_a = mu nu s_a (a < n), x_n = (mu^2 - nu^2)/2.

    s_1 = cos(theta_1)...cos(theta_{n-2}) and, for a >= 2,
    s_a = cos(theta_1)...cos(theta_{n-1-a}) sin(theta_{n-a}).
    """
    mu, nu = E.var("mu"), E.var("nu")
    th = [None] + [E.var(f"theta{i}") for i in range(1, n - 1)]
    out = []
    for a in range(1, n):
        if a == 1:
            s = E.const(1)
            for j in range(1, n - 1):
                s = s * E.cos(th[j])
        else:
            s = E.sin(th[n - a])
            for j in range(1, n - a):
                s = E.cos(th[j]) * s
        out.append(mu * nu * s)
    out.append((mu * mu - nu * nu) / 2)
    return out


def spherical_to_cartesian(n: int) -> list[FieldCoef]:
    """x_1 = r cos(theta_1), x_j = r sin(theta_1)...sin(theta_{j-1}) cos(theta_j), x_n = r prod sin."""
    r = E.var("r")
    th = [None] + [E.var(f"theta{i}") for i in range(1, n)]
    out = []
    for j in range(1, n + 1):
        e = r
        for i in range(1, min(j, n)):
            e = e * E.sin(th[i])
        if j < n:
            e = e * E.cos(th[j])
        out.append(e)
    return out


def to_cartesian_exprs(system: str, n: int) -> list[FieldCoef]:
    if system == "parabolic":
        return parabolic_to_cartesian(n)
    if system == "spherical":
        return spherical_to_cartesian(n)
    if system == "cartesian":
        return [E.var(v) for v in cartesian_vars(n)]
    raise ModelError(f"unknown coordinate system {system!r}")


def coord_map(system: str, n: int, point: Sequence) -> list:
    """Cartesian coordinates of a point given in ``system`` coordinates.

    Exact points (Fractions and ExactAngles) map to Fractions, float points
    to floats.
    """
    from ..expr import LiftContext

    names = variables(system, n)
    ctx = LiftContext(names, point, 0)
    out = []
    for e in to_cartesian_exprs(system, n):
        j = ctx.lift(e)
        out.append(j.value if ctx.exact and j.scale.is_one() else j.full_value())
    return out


# -- curvilinear building blocks written in Cartesian variables ----------------


def _sumsq(xs) -> FieldCoef:
    out = E.const(0)
    for x in xs:
        out = out + x * x
    return out


def cartesian_radius(n: int) -> FieldCoef:
    return E.sqrt(_sumsq(E.var(v) for v in cartesian_vars(n)))


def parabolic_blocks(n: int) -> dict:
    """mu^2, nu^2, mu*nu and cos/sin of every angle, as Cartesian expressions.

    Valid where every x_a > 0 (a < n), which fixes the branch of each angle.
    """
    xs = [E.var(v) for v in cartesian_vars(n)]
    r = cartesian_radius(n)
    rho2 = [None] + [_sumsq(xs[:j]) for j in range(1, n)]
    out = {"mu2": r + xs[-1], "nu2": r - xs[-1], "munu": E.sqrt(rho2[n - 1])}
    for l in range(1, n - 1):
        # theta_{n-l-1}: tan = x_{l+1} / rho_l
        i = n - l - 1
        out[f"cos{i}"] = E.sqrt(rho2[l] / rho2[l + 1])
        out[f"sin{i}"] = xs[l] / E.sqrt(rho2[l + 1])
        out[f"cos2_{i}"] = (rho2[l] - xs[l] * xs[l]) / rho2[l + 1]
    return out


def spherical_blocks(n: int) -> dict:
    """r and cos/sin of every angle, as Cartesian expressions (x_a > 0)."""
    xs = [E.var(v) for v in cartesian_vars(n)]
    tail2 = {l: _sumsq(xs[l - 1 :]) for l in range(1, n + 1)}
    out = {"r": E.sqrt(tail2[1])}
    for l in range(1, n):
        out[f"cos{l}"] = xs[l - 1] / E.sqrt(tail2[l])
        out[f"sin{l}"] = E.sqrt(tail2[l + 1] / tail2[l])
        out[f"cos2_{l}"] = (xs[l - 1] * xs[l - 1] - tail2[l + 1]) / tail2[l]
    return out

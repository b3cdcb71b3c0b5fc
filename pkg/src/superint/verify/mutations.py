"""Named operator families for the checks, with optional single-coefficient mutations.

Every check obtains its operators through :func:`family`, so a mutation
named in a check spec corrupts exactly one coefficient of one builder's
output.  A suite that still passes under a mutation is vacuous.
"""

from __future__ import annotations

from fractions import Fraction

from .. import expr as E
from ..model.cartesian import build_cartesian, build_commuting_sets_n3_hydrogen
from ..model.coords import cartesian_radius
from ..model.curvilinear import build_parabolic_ops, build_spherical_ops
from ..model.gauged import build_gauged_ops
from ..model.params import ModelParams
from ..operators import PolyDiffOp
from ..polycore import MultiPoly

MUTATIONS = {
    "coulomb_sign": "flip the sign of the Coulomb term of every Hamiltonian",
    "y1_coefficient": "add 1 to the constant coefficient of the gauged Y1",
    "laguerre_core": "add 1 to the first-order coefficient of the gauged Qp",
    "z_first_order": "add d/dz_1 to the gauged Z1 and d/dtheta to the angular Z1 / Y_{n-1}",
    "x_potential": "add 1/r to X",
    "commuting_set": "add L23 to the second operator of the first hydrogen pair",
}


def check_mutation(name: str | None):
    if name is not None and name not in MUTATIONS:
        raise ValueError(f"unknown mutation {name!r}; known: {', '.join(sorted(MUTATIONS))}")


def _cartesian(params: ModelParams, mutation):
    ops = build_cartesian(params)
    flat = {"H": ops["H"], "X": ops["X"]}
    for (i, k), L in ops["L"].items():
        flat[f"L{i}{k}"] = L
    for i, A in ops.get("A", {}).items():
        flat[f"A{i}"] = A
    for l, Z in ops["Z"].items():
        flat[f"Z{l}"] = Z
    for p, Y in ops["Y"].items():
        flat[f"Y{p}"] = Y
    r = cartesian_radius(params.n)
    if mutation == "coulomb_sign":
        flat["H"] = flat["H"] + 2 * E.const(params.gamma) / r
    elif mutation == "x_potential":
        flat["X"] = flat["X"] + 1 / r
    return flat


def _parabolic(params: ModelParams, record, mutation):
    ops = build_parabolic_ops(params, record)
    flat = {"H": ops["H"], "X": ops["X"]}
    for l, Z in ops["Z"].items():
        flat[f"Z{l}"] = Z
    for l, Z in ops.get("Z_resolved", {}).items():
        flat[f"Z{l}:resolved"] = Z
    mu, nu = E.var("mu"), E.var("nu")
    if mutation == "coulomb_sign":
        flat["H"] = flat["H"] + 4 * E.const(params.gamma) / (mu * mu + nu * nu)
    elif mutation == "x_potential":
        flat["X"] = flat["X"] + 2 / (mu * mu + nu * nu)
    elif mutation == "z_first_order":
        name = f"theta{params.n - 2}"
        flat["Z1"] = flat["Z1"] + type(flat["Z1"]).d(name, ops["vars"])
    return flat


def _spherical(params: ModelParams, record, mutation):
    ops = build_spherical_ops(params, record)
    flat = {"H": ops["H"]}
    for l, Y in ops["Y"].items():
        flat[f"Y{l}"] = Y
    for l, Y in ops.get("Y_resolved", {}).items():
        flat[f"Y{l}:resolved"] = Y
    if mutation == "coulomb_sign":
        flat["H"] = flat["H"] + 2 * E.const(params.gamma) / E.var("r")
    elif mutation == "z_first_order":
        n = params.n
        key = f"Y{n - 1}"
        flat[key] = flat[key] + type(flat[key]).d(f"theta{n - 1}", ops["vars"])
    return flat


def _gauged(params: ModelParams, state, mutation, m=None):
    g = build_gauged_ops(params, state, m)
    G = g.vars
    if mutation == "y1_coefficient":
        g.Y1 = g.Y1 + PolyDiffOp.identity(G)
    elif mutation == "laguerre_core":
        g.Qp = g.Qp + PolyDiffOp.d("s", G)
        if g.omega is not None:
            g.Q0 = (g.Qp + g.Qm) * (-g.omega)
            g.Q1 = (g.Qp - g.Qm) * (-g.omega)
    elif mutation == "z_first_order" and 1 in g.Z:
        g.Z[1] = g.Z[1] + PolyDiffOp.d("z1", G)
    return g


def _hydrogen(params: ModelParams, mutation, a=Fraction(1, 3), f=Fraction(2, 5)):
    sets = build_commuting_sets_n3_hydrogen(params, a, f)
    if mutation == "commuting_set":
        V = tuple(f"x{i}" for i in range(1, 4))
        x2, x3 = MultiPoly.var("x2", V), MultiPoly.var("x3", V)
        L23 = x2 * PolyDiffOp.d("x3", V) - x3 * PolyDiffOp.d("x2", V)
        label, first, second = sets[0]
        sets[0] = (label, first, second + L23)
    return sets


def family(kind: str, params: ModelParams, mutation: str | None = None, **kw):
    """Operators of one family: cartesian, parabolic, spherical, gauged or hydrogen."""
    check_mutation(mutation)
    if kind == "cartesian":
        return _cartesian(params, mutation)
    if kind == "parabolic":
        return _parabolic(params, kw.get("record"), mutation)
    if kind == "spherical":
        return _spherical(params, kw.get("record"), mutation)
    if kind == "gauged":
        return _gauged(params, kw["state"], mutation, kw.get("m"))
    if kind == "hydrogen":
        return _hydrogen(params, mutation, kw.get("a", Fraction(1, 3)), kw.get("f", Fraction(2, 5)))
    raise ValueError(f"unknown operator family {kind!r}")

"""Hamiltonian and integrals of motion in Cartesian coordinates."""

from __future__ import annotations

from fractions import Fraction

from .. import expr as E
from ..operators import FieldDiffOp, PolyDiffOp
from ..polycore import MultiPoly
from .coords import cartesian_radius, cartesian_vars
from .params import ModelError, ModelParams


def angular_momentum(n: int, i: int, k: int) -> PolyDiffOp:
    """L_ik = x_i d_k - x_k d_i (1-based indices)."""
    V = cartesian_vars(n)
    xi, xk = MultiPoly.var(V[i - 1], V), MultiPoly.var(V[k - 1], V)
    return xi * PolyDiffOp.d(V[k - 1], V) - xk * PolyDiffOp.d(V[i - 1], V)


def casimir(n: int, lo: int, hi: int) -> PolyDiffOp:
    """Sum of L_ik^2 over lo <= i < k <= hi."""
    V = cartesian_vars(n)
    out = PolyDiffOp.zero(V)
    for i in range(lo, hi + 1):
        for k in range(i + 1, hi + 1):
            L = angular_momentum(n, i, k)
            out = out + L * L
    return out


def _centrifugal(params: ModelParams, lo: int, hi: int, weight_hi: int) -> E.FieldCoef:
    """2 (sum_{lo<=i<=weight_hi} x_i^2) (sum_{lo<=k<=hi} beta_k / x_k^2)."""
    V = cartesian_vars(params.n)
    xs = {i: E.var(V[i - 1]) for i in range(1, params.n + 1)}
    radial = E.const(0)
    for i in range(lo, weight_hi + 1):
        radial = radial + xs[i] * xs[i]
    pot = E.const(0)
    for k in range(lo, hi + 1):
        b = params.beta[k - 1]
        if b:
            pot = pot + E.const(b) / (xs[k] * xs[k])
    return 2 * radial * pot


def hamiltonian(params: ModelParams) -> FieldDiffOp:
    """H = -Laplacian/2 - gamma/r + sum beta_i / x_i^2."""
    n = params.n
    V = cartesian_vars(n)
    lap = PolyDiffOp.zero(V)
    for v in V:
        lap = lap + PolyDiffOp.d(v, V, 2)
    pot = -E.const(params.gamma) / cartesian_radius(n) if params.gamma else E.const(0)
    for i, b in enumerate(params.beta, start=1):
        if b:
            pot = pot + E.const(b) / (E.var(V[i - 1]) ** 2)
    return (lap * Fraction(-1, 2)).to_field() + pot


def runge_lenz(params: ModelParams, i: int) -> FieldDiffOp:
    """A_i = (1/2) sum_a (d_a L_ia + L_ia d_a) + gamma x_i / r; pure Coulomb only."""
    if not params.is_coulomb():
        raise ModelError("Runge-Lenz defined only for pure Coulomb (every beta must vanish)")
    n = params.n
    V = cartesian_vars(n)
    sym = PolyDiffOp.zero(V)
    for a in range(1, n + 1):
        if a == i:
            continue
        L = angular_momentum(n, i, a)
        d = PolyDiffOp.d(V[a - 1], V)
        sym = sym + d * L + L * d
    return (sym * Fraction(1, 2)).to_field() + E.const(params.gamma) * E.var(V[i - 1]) / cartesian_radius(n)


def x_integral(params: ModelParams) -> FieldDiffOp:
    """X = (1/2) sum_k (L_nk d_k + d_k L_nk) + 2 x_n (gamma/(2r) - sum beta_i/x_i^2)."""
    n = params.n
    V = cartesian_vars(n)
    sym = PolyDiffOp.zero(V)
    for k in range(1, n):
        L = angular_momentum(n, n, k)
        d = PolyDiffOp.d(V[k - 1], V)
        sym = sym + L * d + d * L
    pot = E.const(params.gamma) / (2 * cartesian_radius(n))
    for i, b in enumerate(params.beta, start=1):
        if b:
            pot = pot - E.const(b) / (E.var(V[i - 1]) ** 2)
    return (sym * Fraction(1, 2)).to_field() + 2 * E.var(V[-1]) * pot


def z_integral(params: ModelParams, l: int) -> FieldDiffOp:
    """Z_l: Casimir of the first l+1 coordinates with the matching beta terms."""
    if not 1 <= l <= params.n - 2:
        raise ModelError(f"Z_l needs 1 <= l <= n-2, got l = {l}")
    return casimir(params.n, 1, l + 1).to_field() - _centrifugal(params, 1, l + 1, l + 1)


def y_integral(params: ModelParams, p: int) -> FieldDiffOp:
    """Y_p: Casimir of the coordinates p..n with the matching beta terms."""
    n = params.n
    if not 1 <= p <= n - 1:
        raise ModelError(f"Y_p needs 1 <= p <= n-1, got p = {p}")
    return casimir(n, p, n).to_field() - _centrifugal(params, p, n - 1, n)


def build_cartesian(params: ModelParams) -> dict:
    """All Cartesian operators: H, L, X, Z, Y and (pure Coulomb) A."""
    n = params.n
    ops = {
        "vars": cartesian_vars(n),
        "H": hamiltonian(params),
        "L": {(i, k): angular_momentum(n, i, k) for i in range(1, n + 1) for k in range(i + 1, n + 1)},
        "X": x_integral(params),
        "Z": {l: z_integral(params, l) for l in range(1, n - 1)},
        "Y": {p: y_integral(params, p) for p in range(1, n)},
    }
    if params.is_coulomb():
        ops["A"] = {i: runge_lenz(params, i) for i in range(1, n + 1)}
    return ops


def build_commuting_sets_n3_hydrogen(params: ModelParams, a=Fraction(1, 3), f=Fraction(2, 5)) -> list:
    """The four commuting pairs of the three-dimensional hydrogen atom.

    Each entry is ``(label, first, second)``; ``a`` and ``f`` are the free
    constants of the second and fourth pairs.
    """
    if params.n != 3 or not params.is_coulomb():
        raise ModelError("the hydrogen commuting sets need n = 3 and vanishing beta")
    L12 = angular_momentum(3, 1, 2)
    L23 = angular_momentum(3, 2, 3)
    L31 = -angular_momentum(3, 1, 3)
    C = L12 * L12 + L23 * L23 + L31 * L31
    A3 = runge_lenz(params, 3)
    a, f = Fraction(a), Fraction(f)
    return [
        ("A3,L12^2", A3, L12 * L12),
        ("A3+aC,L12^2", A3 + C * a, L12 * L12),
        ("C,L12^2", C, L12 * L12),
        ("C,L23^2+fL31^2", C, L23 * L23 + L31 * L31 * f),
    ]

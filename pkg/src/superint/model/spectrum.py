"""Closed-form spectra and level enumeration."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .params import (
    EigenvalueRecord,
    ModelError,
    ModelParams,
    Parabolic,
    QuantumNumbers,
    Spherical,
    UnboundStateError,
)

HALF = Fraction(1, 2)


def parabolic_m(params: ModelParams, J) -> dict:
    """m_l = 2 sum_{i<=l} J_i + sum_{i<=l+1} p_i + (l-1)/2 for l = 0..n-2."""
    out = {}
    for l in range(params.n - 1):
        out[l] = 2 * sum(J[:l]) + sum(params.p[: l + 1]) + Fraction(l - 1, 2)
    return out


def spherical_m(params: ModelParams, J) -> dict:
    """m_l = 2 sum_{i>=l} J_i + sum_{i>=l} p_i + (n-l-1)/2 for l = 1..n-1, and m_n = -1/2."""
    n = params.n
    out = {}
    for l in range(1, n):
        out[l] = 2 * sum(J[l - 1 :]) + sum(params.p[l - 1 :]) + Fraction(n - l - 1, 2)
    out[n] = -HALF
    return out


def _energy(params: ModelParams, D: Fraction):
    if params.gamma <= 0:
        raise UnboundStateError(f"unbound state parameters: gamma = {params.gamma} <= 0")
    if D <= 0:
        raise UnboundStateError(f"unbound state parameters: principal denominator D = {D} <= 0")
    E = -params.gamma ** 2 / (2 * D ** 2)
    return E, params.gamma / D


def spectrum(params: ModelParams, qn: QuantumNumbers) -> EigenvalueRecord:
    """Exact E, D, sqrt(-2E) and the separation constants of one state."""
    n = params.n
    qn.check(n)
    if isinstance(qn, Parabolic):
        m = parabolic_m(params, qn.J)
        k = {l: Fraction((l - 1) ** 2, 4) - m[l] ** 2 for l in m}
        D = qn.N1 + qn.N2 + 2 * sum(qn.J) + sum(params.p) + Fraction(n - 1, 2)
        E, w = _energy(params, D)
        # sign fixed by letting X act on the ground state directly
        lam = params.gamma * (qn.N1 - qn.N2) / D
        return EigenvalueRecord("parabolic", E, D, w, m, k, lam)
    if isinstance(qn, Spherical):
        m = spherical_m(params, qn.J)
        k = {l: Fraction((n - l - 1) ** 2, 4) - m[l] ** 2 for l in range(1, n)}
        D = qn.Nr + 2 * sum(qn.J) + sum(params.p) + Fraction(n - 1, 2)
        E, w = _energy(params, D)
        return EigenvalueRecord("spherical", E, D, w, m, k, None)
    raise ModelError(f"unknown quantum numbers {qn!r}")


def _weighted(count: int, budget: int):
    """All tuples of ``count`` naturals with 2*sum <= budget."""
    if count == 0:
        yield ()
        return
    for first in range(budget // 2 + 1):
        for rest in _weighted(count - 1, budget - 2 * first):
            yield (first,) + rest


def states(n: int, system: str, q: int) -> list:
    """All quantum numbers of level q (N1+N2+2 sum J = q, or Nr+2 sum J = q)."""
    out = []
    if system == "parabolic":
        if n < 3:
            raise ModelError("parabolic coordinates need n >= 3")
        for J in _weighted(n - 2, q):
            rest = q - 2 * sum(J)
            for N1 in range(rest + 1):
                out.append(Parabolic(N1, rest - N1, J))
    elif system == "spherical":
        for J in _weighted(n - 1, q):
            out.append(Spherical(q - 2 * sum(J), J))
    else:
        raise ModelError(f"unknown coordinate system {system!r}")
    return sorted(out, key=lambda s: s.as_tuple(), reverse=True)


def states_up_to(n: int, system: str, qmax: int) -> list:
    return [s for q in range(qmax + 1) for s in states(n, system, q)]


def degeneracy(params: ModelParams, system: str, q: int) -> tuple[int, list]:
    """Number and list of states sharing the principal denominator of level q."""
    found = states(params.n, system, q)
    return len(found), found


def brute_force_level(n: int, system: str, q: int) -> list:
    """Level enumeration by scanning the full box of quantum numbers (test oracle)."""
    if system == "parabolic":
        width = n
        mk = lambda t: Parabolic(t[0], t[1], t[2:])  # noqa: E731
        weights = (1, 1) + (2,) * (n - 2)
    else:
        width = n
        mk = lambda t: Spherical(t[0], t[1:])  # noqa: E731
        weights = (1,) + (2,) * (n - 1)
    out = []
    for t in product(range(q + 1), repeat=width):
        if sum(w * x for w, x in zip(weights, t)) == q:
            out.append(mk(t))
    return out

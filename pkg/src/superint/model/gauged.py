"""Gauged operators acting on the polynomial part of parabolic eigenfunctions.

After removing the gauge factor, H, X and the angular integrals become
differential operators with polynomial coefficients in
s = omega mu^2, t = omega nu^2 and z_l = cos(2 theta_{n-l-1}).  These act
on Laguerre/Jacobi products exactly, and decompose into words in a small
set of first-order generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ..operators import PolyDiffOp, graded_lex_key
from ..polycore import MultiPoly, laguerre
from .eigen import parabolic_gauge_vars
from .params import EigenvalueRecord, ModelError, ModelParams


class DecompositionError(ValueError):
    """Operator is not in the algebra spanned by the generators."""


def _x(name, G) -> MultiPoly:
    return MultiPoly.var(name, G)


def _d(name, G, times=1) -> PolyDiffOp:
    return PolyDiffOp.d(name, G, times)


def laguerre_core(var: str, m: Fraction, G) -> PolyDiffOp:
    """2 u d^2 + 2 (1 + m - u) d - (m + 1): acts as -(2N + m + 1) on L_N^m(u)."""
    u = _x(var, G)
    return 2 * u * _d(var, G, 2) + 2 * (1 + m - u) * _d(var, G) - PolyDiffOp.identity(G) * (m + 1)


def z_tilde(params: ModelParams, l: int, m_prev: Fraction, G) -> PolyDiffOp:
    """Gauged Z_l in z_l; eigenvalue k_l on P_{J_l}^{(p_{l+1}-1/2, m_{l-1})}(z_l)."""
    p = params.p_at(l + 1)
    z = _x(f"z{l}", G)
    first = 4 * (m_prev - p + Fraction(1, 2) - (p + m_prev + Fraction(3, 2)) * z)
    const = Fraction(l * (l - 2), 4) - (m_prev + p) * (m_prev + p + 1)
    return 4 * (1 - z * z) * _d(f"z{l}", G, 2) + first * _d(f"z{l}", G) + PolyDiffOp.identity(G) * const


def y1_tilde(n: int, m: Fraction, G) -> PolyDiffOp:
    """Gauged Y_1 on L_{N1}^m(s) L_{N2}^m(t); tridiagonal on each level N1+N2 = N."""
    s, t = _x("s", G), _x("t", G)
    D = _d("s", G) - _d("t", G)
    const = -m * (m + 1) + Fraction((n - 3) * (n - 1), 4)
    return s * t * (D * D) - (m + 1) * (s - t) * D + PolyDiffOp.identity(G) * const


@dataclass
class GaugedOps:
    """Gauged polynomial operators of one parabolic state.

    ``Qp``/``Qm`` are the E-free Laguerre cores in s and t.  The gauged
    Q0 + Q1 and Q0 - Q1 are ``prefactor * Qp`` and ``prefactor * Qm`` with
    ``prefactor = -2 omega``; ``Q0``/``Q1`` are filled in when omega is known.
    """

    vars: tuple
    m: dict
    Qp: PolyDiffOp
    Qm: PolyDiffOp
    Z: dict
    Y1: PolyDiffOp
    omega: Fraction | None = None
    Q0: PolyDiffOp | None = None
    Q1: PolyDiffOp | None = None

    @property
    def prefactor(self) -> Fraction | None:
        return None if self.omega is None else -2 * self.omega

    def as_dict(self) -> dict:
        out = {"Qp": self.Qp, "Qm": self.Qm}
        if self.Q0 is not None:
            out.update(Q0=self.Q0, Q1=self.Q1)
        out["Y1"] = self.Y1
        out.update({f"Z{l}": op for l, op in self.Z.items()})
        return out


def build_gauged_ops(params: ModelParams, state, m: Mapping[int, Fraction] | None = None) -> GaugedOps:
    """Gauged operators in (s, t, z_1..z_{n-2}).

    ``state`` is either the :class:`EigenvalueRecord` of the target state or
    just its m_{n-2}.  Z_l depends on m_{l-1}, which for l >= 2 involves the
    inner J's; with a bare m_{n-2} those are taken from ``m`` when given and
    omitted otherwise (Z_1 needs only m_0 = p_1 - 1/2).
    """
    n = params.n
    if n < 3:
        raise ModelError("gauged parabolic operators need n >= 3")
    G = parabolic_gauge_vars(n)
    omega = None
    if isinstance(state, EigenvalueRecord):
        if state.system != "parabolic":
            raise ModelError("gauged operators are defined for parabolic states")
        m = dict(state.m)
        omega = state.sqrt_minus_2E
    else:
        m = dict(m or {})
        m.setdefault(0, params.p_at(1) - Fraction(1, 2))
        m[n - 2] = Fraction(state)
    mtop = m[n - 2]
    Qp = laguerre_core("s", mtop, G)
    Qm = laguerre_core("t", mtop, G)
    ops = GaugedOps(
        vars=G,
        m=m,
        Qp=Qp,
        Qm=Qm,
        Z={l: z_tilde(params, l, m[l - 1], G) for l in range(1, n - 1) if l - 1 in m},
        Y1=y1_tilde(n, mtop, G),
    )
    if omega is not None:
        ops.omega = omega
        ops.Q0 = (Qp + Qm) * (-omega)
        ops.Q1 = (Qp - Qm) * (-omega)
    return ops


# -- tridiagonal action of Y1 ---------------------------------------------------


def y1_tridiagonal(N1: int, N2: int, m, n: int = 3) -> tuple[Fraction, Fraction, Fraction]:
    """(c_minus, c_zero, c_plus) with
    Y1 P[N1,N2] = c_minus P[N1-1,N2+1] + c_zero P[N1,N2] + c_plus P[N1+1,N2-1],
    P[a,b] = L_a^m(s) L_b^m(t)."""
    m = Fraction(m)
    c_minus = (N1 + m) * (N2 + 1)
    c_plus = (N1 + 1) * (N2 + m)
    c_zero = -(2 * N1 * N2 + (N1 + N2 + m) * (m + 1)) + Fraction((n - 3) * (n - 1), 4)
    return c_minus, c_zero, c_plus


def level_basis(N: int, m, G=("s", "t")) -> list[MultiPoly]:
    """P[N1, N - N1] for N1 = 0..N."""
    return [laguerre(a, m, "s").embed(G) * laguerre(N - a, m, "t").embed(G) for a in range(N + 1)]


def y1_level_matrix(N: int, m, n: int = 3) -> list[list[Fraction]]:
    """Matrix of Y1 on level N in the basis P[N1, N-N1] (column = image of one basis vector)."""
    M = [[Fraction(0)] * (N + 1) for _ in range(N + 1)]
    for a in range(N + 1):
        cm, c0, cp = y1_tridiagonal(a, N - a, m, n)
        M[a][a] = c0
        if a >= 1:
            M[a - 1][a] = cm
        if a + 1 <= N:
            M[a + 1][a] = cp
    return M


def y1_level_eigenvalues(N: int, m, n: int = 3) -> list[Fraction]:
    """(n-3)(n-1)/4 - (m+j)(m+j+1) for j = 0..N."""
    m = Fraction(m)
    return [Fraction((n - 3) * (n - 1), 4) - (m + j) * (m + j + 1) for j in range(N + 1)]


def exact_det(M) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    A = [list(map(Fraction, row)) for row in M]
    size = len(A)
    det = Fraction(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, size):
            f = A[r][c] / A[c][c]
            if f:
                for k in range(c, size):
                    A[r][k] -= f * A[c][k]
    return det


# -- generator decomposition ---------------------------------------------------


def parabolic_generators(n: int) -> dict:
    """First-order generators: d_u and u*d_v for u, v in {s, t}; d_z and z*d_z per angle."""
    G = parabolic_gauge_vars(n)
    gens = {}
    groups = [("s", "t")] + [(f"z{l}",) for l in range(1, n - 1)]
    for group in groups:
        for v in group:
            gens[f"d_{v}"] = _d(v, G)
            for u in group:
                gens[f"{u}*d_{v}"] = _x(u, G) * _d(v, G)
    return gens


def _groups_of(gens: Mapping[str, PolyDiffOp]) -> dict:
    """Map each differentiated variable to the variables that may multiply it."""
    allowed: dict[str, set] = {}
    for name in gens:
        if "*d_" in name:
            u, v = name.split("*d_")
            allowed.setdefault(v, set()).add(u)
        else:
            allowed.setdefault(name[2:], set())
    return allowed


def _assign(need: dict, caps: dict, allowed: dict):
    """Pair every multiplying variable with a derivative slot; returns {(u, v): count} or None."""
    pending = [u for u, k in need.items() if k > 0]
    if not pending:
        return {}
    u = pending[0]
    for v in sorted(caps):
        if caps[v] > 0 and u in allowed.get(v, ()):
            need2 = dict(need)
            need2[u] -= 1
            caps2 = dict(caps)
            caps2[v] -= 1
            rest = _assign(need2, caps2, allowed)
            if rest is not None:
                rest[(u, v)] = rest.get((u, v), 0) + 1
                return rest
    return None


def _word(alpha, expo, vars_, allowed) -> tuple:
    need = {v: e for v, e in zip(vars_, expo) if e}
    caps = {v: a for v, a in zip(vars_, alpha) if a}
    pairs = _assign(need, caps, allowed)
    if pairs is None:
        mono = "*".join(f"{v}^{e}" for v, e in need.items()) or "1"
        raise DecompositionError(f"no generator word has leading symbol {mono} · D{list(alpha)}")
    word = []
    used = {}
    for (u, v), k in sorted(pairs.items()):
        word += [f"{u}*d_{v}"] * k
        used[v] = used.get(v, 0) + k
    for v, a in zip(vars_, alpha):
        word += [f"d_{v}"] * (a - used.get(v, 0))
    return tuple(word)


def compose_word(word, gens: Mapping[str, PolyDiffOp], vars_) -> PolyDiffOp:
    out = PolyDiffOp.identity(vars_)
    for name in word:
        out = out * gens[name]
    return out


def decompose(op: PolyDiffOp, gens: Mapping[str, PolyDiffOp], max_steps: int = 10000) -> list:
    """Greedy decomposition of ``op`` as a sum of coefficient * generator word.

    Returns a list of ``(Fraction, tuple of generator names)``; the empty word
    is the identity.  Each step cancels the leading term by a word with the
    same principal symbol, so only lower-order terms are created.
    """
    allowed = _groups_of(gens)
    rest = op
    witness = []
    for _ in range(max_steps):
        if rest.is_zero():
            return witness
        alpha = max(rest.terms, key=lambda a: (sum(a), graded_lex_key(a)))
        coeff_poly = rest.terms[alpha]
        expo, c = coeff_poly.sorted_terms()[-1]
        word = _word(alpha, expo, rest.vars, allowed)
        witness.append((Fraction(c), word))
        rest = rest - compose_word(word, gens, rest.vars) * Fraction(c)
    raise DecompositionError(f"decomposition did not terminate in {max_steps} steps")


def recompose(witness, gens: Mapping[str, PolyDiffOp], vars_) -> PolyDiffOp:
    out = PolyDiffOp.zero(vars_)
    for c, word in witness:
        out = out + compose_word(word, gens, vars_) * c
    return out

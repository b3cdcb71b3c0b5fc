import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superint import expr as E
from superint.model import ModelParams, build_cartesian, eigenfunction, Parabolic
from superint.operators import FieldDiffOp, PolyDiffOp, op_apply_jet, op_apply_poly
from superint.operators import op_commutator, op_commutator_numeric, op_compose
from superint.polycore import MultiPoly, laguerre
from superint.taylor import Jet

X = ("x",)


def test_weyl_relations():
    d = PolyDiffOp.d("x", X)
    x = PolyDiffOp.mult(MultiPoly.var("x", X))
    assert op_commutator(d, x) == PolyDiffOp.identity(X)
    assert op_commutator(x * d, d) == -d


def test_disjoint_laguerre_cores_commute():
    V = ("s", "t")
    m = F(2, 3)
    s, t = MultiPoly.var("s", V), MultiPoly.var("t", V)
    a = s * PolyDiffOp.d("s", V, 2) + (s * -1 + (m + 1)) * PolyDiffOp.d("s", V)
    b = t * PolyDiffOp.d("t", V, 2) + (t * -1 + (m + 1)) * PolyDiffOp.d("t", V)
    assert op_commutator(a, b).is_zero()


@pytest.mark.parametrize("N", range(6))
@pytest.mark.parametrize("alpha", [F(0), F(1, 2), F(7, 3)])
def test_laguerre_eigen(N, alpha):
    V = ("s",)
    s = MultiPoly.var("s", V)
    op = s * PolyDiffOp.d("s", V, 2) + (s * -1 + (alpha + 1)) * PolyDiffOp.d("s", V)
    L = laguerre(N, alpha, "s")
    assert op_apply_poly(op, L) == L * -N


def test_simple_actions():
    Z = ("z",)
    z = MultiPoly.var("z", Z)
    assert op_apply_poly(PolyDiffOp.d("z", Z), MultiPoly.const(5, Z)).is_zero()
    assert op_apply_poly(z * PolyDiffOp.d("z", Z), z ** 3) == z ** 3 * 3


def test_compose_matches_sequential_application():
    V = ("x", "y")
    x, y = MultiPoly.var("x", V), MultiPoly.var("y", V)
    a = x * y * PolyDiffOp.d("y", V) + PolyDiffOp.d("x", V, 2)
    b = y * y * PolyDiffOp.d("x", V) + x
    p = x ** 3 * y ** 2 + y ** 4 - x
    assert op_apply_poly(op_compose(a, b), p) == op_apply_poly(a, op_apply_poly(b, p))


def test_jet_application_examples():
    j = Jet.variable(0, F(1), 1, 3)
    out = op_apply_jet(FieldDiffOp.d("x", X, 2), j * j * j, [F(1)])
    assert [out.coefficient((k,)) for k in (0, 1)] == [6, 6]
    op = FieldDiffOp(X, {(1,): 1 / E.var("x")})
    j2 = Jet.variable(0, F(2), 1, 2)
    assert op_apply_jet(op, j2 * j2, [F(2)]).value == 2


def test_commutator_with_position():
    op_x = FieldDiffOp.scalar(E.var("x"), X)
    f = Jet.variable(0, 0.3, 1, 2)
    f = f * f * 2 + f + 1
    out = op_commutator_numeric(FieldDiffOp.d("x", X), op_x, f, [0.3])
    assert out.value == pytest.approx(f.value)


def test_hamiltonian_on_ground_state_exact():
    P = ModelParams.make(3, 1, [0, 0])
    H = build_cartesian(P)["H"]
    ef = eigenfunction(P, Parabolic(0, 0, (0,)))
    psi = E.exp(-E.sqrt(E.var("x1") ** 2 + E.var("x2") ** 2 + E.var("x3") ** 2))
    f = E.lift(psi, H.vars, [F(1), F(2), F(2)], 2)
    out = op_apply_jet(H, f, [F(1), F(2), F(2)])
    assert out.full_value() == pytest.approx(-0.5 * f.full_value(), rel=1e-14)
    assert ef.record.E == F(-1, 2)


@settings(max_examples=10, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=10, max_size=10))
def test_h_l12_commute_on_polynomial_jets(cs):
    P = ModelParams.make(3, 1, [0, 0])
    ops = build_cartesian(P)
    H, L12 = ops["H"], ops["L"][(1, 2)]
    point = [1.0, 2.0, 2.0]
    x = Jet.coordinates(point, 4)
    monos = [x[0], x[1], x[2], x[0] * x[1], x[1] * x[2], x[0] * x[2], x[0] * x[0],
             x[1] * x[1] * x[2], x[0] * x[2] * x[2], x[0] * x[1] * x[2] * x[2]]
    f = Jet.constant(1.0, 3, 4)
    for c, m in zip(cs, monos):
        f = f + m * c
    out = op_commutator_numeric(H, L12, f, point)
    assert abs(out.value) < 1e-10 * max(1.0, math.fsum(abs(c) for c in cs))

import math
from fractions import Fraction as F

import pytest

from superint.model import (ModelError, ModelParams, Parabolic, Spherical, UnboundStateError,
                            build_cartesian, build_commuting_sets_n3_hydrogen, build_parabolic_ops,
                            build_q0_q1, build_spherical_ops, coord_map, degeneracy, eigenfunction,
                            spectrum, states)
from superint.model.gauged import (build_gauged_ops, decompose, parabolic_generators, recompose,
                                   y1_tridiagonal)
from superint.model.spectrum import brute_force_level
from superint.operators import PointEvaluator, PolyDiffOp
from superint.polycore import MultiPoly, laguerre
from superint.taylor import Jet

COULOMB3 = ModelParams.make(3, 1, [0, 0])


def ratio_at(op, ef, point):
    ev = PointEvaluator(op.vars, point)
    f = ev.lift(ef.psi(), op.order)
    return ev.apply(op, f).value / f.value


# -- spectrum -----------------------------------------------------------------


def test_ground_state_record():
    r = spectrum(COULOMB3, Parabolic(0, 0, (0,)))
    assert (r.E, r.lam, r.k[1], r.m[1]) == (F(-1, 2), 0, 0, 0)


def test_first_excited_lambda():
    # the sign of lambda follows from letting X act on the state itself, see test_x_eigenvalue_sign
    r = spectrum(COULOMB3, Parabolic(1, 0, (0,)))
    assert r.E == F(-1, 8)
    assert r.lam == F(1, 2)


def test_x_eigenvalue_sign():
    ef = eigenfunction(COULOMB3, Parabolic(1, 0, (0,)))
    X = build_parabolic_ops(COULOMB3)["X"]
    assert ratio_at(X, ef, [1.1, 0.6, 0.7]) == pytest.approx(float(ef.record.lam), rel=1e-10)


def test_centrifugal_record():
    r = spectrum(ModelParams.make(3, 2, [2, 3]), Parabolic(0, 0, (0,)))
    assert (r.D, r.E, r.m[1], r.k[1]) == (6, F(-1, 18), 5, -25)


def test_four_dimensional_ground_state():
    r = spectrum(ModelParams.make(4, 1, [0, 0, 0]), Parabolic(0, 0, (0, 0)))
    assert (r.D, r.E) == (F(3, 2), F(-2, 9))


def test_unbound_parameters():
    with pytest.raises(UnboundStateError, match="unbound"):
        spectrum(ModelParams.make(3, 1, [-3, -1]), Parabolic(0, 0, (0,)))


def test_qn_arity_checked():
    with pytest.raises(ModelError):
        spectrum(COULOMB3, Parabolic(0, 0, (0, 0)))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_energy_sets_agree(n):
    P = ModelParams.make(n, F(3, 2), [F(1, 3)] * (n - 1))
    par = {spectrum(P, s).E for q in range(7) for s in states(n, "parabolic", q)}
    sph = {spectrum(P, s).E for q in range(7) for s in states(n, "spherical", q)}
    assert par == sph


def test_degeneracy_examples():
    assert degeneracy(COULOMB3, "parabolic", 0)[0] == 1
    assert degeneracy(COULOMB3, "spherical", 0)[0] == 1
    count, found = degeneracy(COULOMB3, "parabolic", 2)
    assert count == 4
    assert {s.as_tuple() for s in found} == {(2, 0, 0), (0, 2, 0), (1, 1, 0), (0, 0, 1)}
    count, found = degeneracy(COULOMB3, "spherical", 2)
    assert count == 3
    assert {s.as_tuple() for s in found} == {(2, 0, 0), (0, 1, 0), (0, 0, 1)}


@pytest.mark.parametrize("n,system", [(3, "parabolic"), (4, "parabolic"), (4, "spherical"), (5, "spherical")])
def test_levels_match_brute_force(n, system):
    for q in range(6):
        assert set(states(n, system, q)) == set(brute_force_level(n, system, q))


# -- coordinates --------------------------------------------------------------


def test_coord_map_examples():
    assert coord_map("parabolic", 3, [1, 1, 0]) == [1, 0, 0]
    assert coord_map("parabolic", 3, [2, 1, math.pi / 2]) == pytest.approx([0, 2, 1.5], abs=1e-15)
    assert coord_map("spherical", 3, [2, math.pi / 2, 0]) == pytest.approx([0, 2, 0], abs=1e-15)


# -- Cartesian operators --------------------------------------------------------


def test_free_hamiltonian_n2():
    H = build_cartesian(ModelParams.make(2, 0, [0]))["H"]
    assert set(H.terms) == {(2, 0), (0, 2)}
    assert all(c.evaluate({}) == -0.5 for c in H.terms.values())


def test_centrifugal_coefficients():
    H = build_cartesian(ModelParams.make(3, 1, [2, 3]))["H"]
    pot = H.terms[(0, 0, 0)]
    env = {"x1": 1.0, "x2": 1e9, "x3": 1e9}
    assert pot.evaluate(env) == pytest.approx(1.0, rel=1e-6)
    env = {"x1": 1e9, "x2": 1.0, "x3": 1e9}
    assert pot.evaluate(env) == pytest.approx(3.0, rel=1e-6)


def test_runge_lenz_requires_coulomb():
    from superint.model.cartesian import runge_lenz
    with pytest.raises(ModelError, match="pure Coulomb"):
        runge_lenz(ModelParams.make(3, 1, [2, 3]), 1)
    assert "A" not in build_cartesian(ModelParams.make(3, 1, [2, 3]))


def _poly_jet(point, order):
    x = Jet.coordinates(point, order)
    return 1 + x[0] * x[1] - x[2] * x[2] * x[0] + x[1] ** 3 * 2 + x[0] * x[1] * x[2] * x[2]


@pytest.mark.parametrize("a,f", [(F(1), F(1)), (F(2, 3), F(5, 7))])
def test_hydrogen_commuting_sets(a, f):
    point = [0.8, 1.3, 0.6]
    for label, first, second in build_commuting_sets_n3_hydrogen(COULOMB3, a, f):
        ev = PointEvaluator(first.vars, point)
        g = _poly_jet(point, first.order + second.order)
        out = ev.commutator(first, second, g)
        scale = abs(ev.apply_word([first, second], g).value) + 1
        assert abs(out.value) < 1e-10 * scale, label


def test_h_commutes_with_runge_lenz():
    ops = build_cartesian(COULOMB3)
    point = [1.0, 2.0, 2.0]
    ev = PointEvaluator(ops["H"].vars, point)
    out = ev.commutator(ops["H"], ops["A"][3], _poly_jet(point, 4))
    assert abs(out.value) < 1e-10


# -- curvilinear operators ------------------------------------------------------


def test_parabolic_angular_operator_n3():
    P = ModelParams.make(3, 1, [2, 3])
    Z = build_parabolic_ops(P)["Z"][1]
    assert Z.terms[(0, 0, 2)].evaluate({}) == 1
    th = 0.4
    expect = -2 * 1 / math.cos(th) ** 2 - 2 * 3 / math.sin(th) ** 2
    assert Z.terms[(0, 0, 0)].evaluate({"theta1": th}) == pytest.approx(expect)


def test_parabolic_chain_first_order_n4():
    ops = build_parabolic_ops(ModelParams.make(4, 1, [0, 0, 0]))
    th = 0.3
    c = ops["Z"][2].terms[(0, 0, 1, 0)].evaluate({"theta1": th, "theta2": 0.5})
    assert c == pytest.approx(-math.tan(th))


def test_spherical_operators():
    P = ModelParams.make(3, 1, [2, 3])
    Y2 = build_spherical_ops(P)["Y"][2]
    a = 0.7
    assert Y2.terms[(0, 0, 2)].evaluate({}) == 1
    assert Y2.terms[(0, 0, 0)].evaluate({"theta2": a}) == pytest.approx(-2 * 3 / math.cos(a) ** 2)
    H = build_spherical_ops(COULOMB3)["H"]
    assert H.terms[(2, 0, 0)].evaluate({}) == -0.5
    assert H.terms[(1, 0, 0)].evaluate({"r": 2.0}) == pytest.approx(-0.5)
    Y1 = build_spherical_ops(ModelParams.make(5, 1, [0] * 4))["Y"][1]
    assert Y1.terms[(0, 1, 0, 0, 0)].evaluate({"theta1": 0.6}) == pytest.approx(3 / math.tan(0.6))


def test_q0_q1_examples():
    point = [1.0, 0.5, math.pi / 5]
    ef = eigenfunction(COULOMB3, Parabolic(0, 0, (0,)))
    q0, q1 = build_q0_q1(COULOMB3, ef.record.E)
    assert ratio_at(q0, ef, point) == pytest.approx(2, abs=1e-10)
    assert ratio_at(q1, ef, point) == pytest.approx(0, abs=1e-10)
    ef = eigenfunction(COULOMB3, Parabolic(1, 0, (0,)))
    q0, q1 = build_q0_q1(COULOMB3, ef.record.E)
    assert ratio_at(q1, ef, point) == pytest.approx(2 * float(ef.record.lam), abs=1e-10)


# -- eigenfunctions --------------------------------------------------------------


def test_eigenfunction_examples():
    ef = eigenfunction(COULOMB3, Parabolic(0, 0, (0,)))
    assert ef.poly.to_text() == "1"
    assert "exp" in ef.describe_gauge()
    ef = eigenfunction(COULOMB3, Parabolic(1, 0, (0,)))
    assert ef.poly.to_text() == "1 + -1 * s"
    assert ef.record.sqrt_minus_2E == F(1, 2)
    ef = eigenfunction(COULOMB3, Spherical(0, (0, 0)))
    assert ef.record.m[1] == F(1, 2)
    assert ef.poly.to_text() == "1"


@pytest.mark.parametrize("qn", [Parabolic(2, 1, (1,)), Parabolic(0, 3, (2,))])
def test_polypart_degrees(qn):
    ef = eigenfunction(ModelParams.make(3, 1, [F(1, 2), 3]), qn)
    assert (ef.poly.degree("s"), ef.poly.degree("t"), ef.poly.degree("z1")) == (qn.N1, qn.N2, qn.J[0])


# -- gauged operators -------------------------------------------------------------


def test_gauged_angular_operator_n3():
    p1, p2 = F(1, 2), F(3)
    P = ModelParams.make(3, 1, [p1, p2])
    g = build_gauged_ops(P, spectrum(P, Parabolic(0, 0, (0,))))
    V = g.vars
    z = MultiPoly.var("z1", V)
    expect = ((1 - z * z) * 4) * PolyDiffOp.d("z1", V, 2) \
        + ((z * -(p1 + p2 + 1) + (p1 - p2)) * 4) * PolyDiffOp.d("z1", V) \
        - PolyDiffOp.identity(V) * (p1 + p2) ** 2
    assert g.Z[1] == expect


@pytest.mark.parametrize("m", [F(0), F(1, 2), F(5, 3)])
def test_y1_on_constants(m):
    g = build_gauged_ops(COULOMB3, m)
    one = MultiPoly.const(1, g.vars)
    assert g.Y1.apply(one) == one * (-m * (m + 1))


def test_y1_tridiagonal_examples():
    assert y1_tridiagonal(1, 1, F(0)) == (2, -4, 2)
    m = F(2, 7)
    assert y1_tridiagonal(0, 0, m)[1] == -m * (m + 1)
    g = build_gauged_ops(COULOMB3, m)
    V = g.vars
    P01 = laguerre(1, m, "t").embed(V)
    P10 = laguerre(1, m, "s").embed(V)
    assert g.Y1.apply(P01) == P01 * (-(1 + m) * (m + 1)) + P10 * (1 + m)


def test_decomposition_witness_recomposes():
    P = ModelParams.make(4, F(3, 2), [F(1, 2), F(1, 3), 2])
    g = build_gauged_ops(P, spectrum(P, Parabolic(1, 0, (0, 1))))
    gens = parabolic_generators(4)
    for name, op in g.as_dict().items():
        w = decompose(op, gens)
        assert all(set(word) <= set(gens) for _, word in w)
        assert recompose(w, gens, g.vars) == op, name

import math
from fractions import Fraction as F

import pytest

from superint import expr as E
from superint.taylor import ExactAngle, Jet, JetDomainError, SingularPointError
from superint.taylor import cos, exp, log, power, reciprocal, sin, sqrt


def coeffs1(j, order):
    return [j.coefficient((k,)) for k in range(order + 1)]


def test_lift_square():
    x = E.var("x")
    j = E.lift(x * x, ["x"], [F(3)], 2)
    assert coeffs1(j, 2) == [9, 6, 1]


def test_lift_inverse_radius_exact():
    xs = [E.var(v) for v in ("x", "y", "z")]
    r = E.sqrt(xs[0] * xs[0] + xs[1] * xs[1] + xs[2] * xs[2])
    j = E.lift(1 / r, ["x", "y", "z"], [F(1), F(2), F(2)], 1)
    assert j.value == F(1, 3)
    assert [j.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))] == [F(-1, 27), F(-2, 27), F(-2, 27)]


def test_exp_at_zero():
    j = exp(Jet.variable(0, F(0), 1, 2))
    assert coeffs1(j, 2) == [1, 1, F(1, 2)]


def test_sqrt_binomial_series():
    j = power(Jet.variable(0, 2.0, 1, 3), F(1, 2))
    expect = [math.sqrt(2), 1 / (2 * math.sqrt(2)), -1 / (8 * 2 ** 1.5), 1 / (16 * 2 ** 2.5)]
    assert coeffs1(j, 3) == pytest.approx(expect, rel=1e-14)
    assert coeffs1(sqrt(Jet.variable(0, 2.0, 1, 3)), 3) == pytest.approx(expect, rel=1e-14)


def test_sin_and_reciprocal():
    assert coeffs1(sin(Jet.variable(0, F(0), 1, 3)), 3) == [0, 1, 0, F(-1, 6)]
    one_plus_x = Jet.variable(0, F(0), 1, 2) + 1
    assert coeffs1(reciprocal(one_plus_x), 2) == [1, -1, 1]


def test_exact_angle_trig():
    a = ExactAngle.from_triple(2, 1)
    j = Jet.coordinates([a], 2)[0]
    assert sin(j).value == F(4, 5) and cos(j).value == F(3, 5)
    assert coeffs1(sin(j), 2) == [F(4, 5), F(3, 5), F(-2, 5)]


def test_exp_log_inverse_float():
    x = Jet.coordinates([0.7, 1.3], 4)
    f = x[0] * x[1] + 2
    g = exp(log(f))
    for idx, c in f.coefficients().items():
        assert g.coefficient(idx) == pytest.approx(c, abs=1e-13)


def test_product_rule_matches_exact():
    x, y = Jet.coordinates([F(1, 2), F(3)], 3)
    f = x * x * y + y
    assert f.derivative((2, 1)) == 2
    assert f.derivative((0, 1)) == F(1, 4) + 1


def test_singular_point_named():
    with pytest.raises(SingularPointError) as err:
        E.lift(1 / E.var("x"), ["x"], [F(0)], 1)
    assert "x" in str(err.value)


def test_log_domain():
    with pytest.raises(JetDomainError):
        log(Jet.variable(0, -1.0, 1, 2))

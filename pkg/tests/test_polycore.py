from fractions import Fraction as F
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superint.polycore import MultiPoly, as_rational, gbinom, jacobi, laguerre, parse_rational

XY = ("x", "y")


def x_():
    return MultiPoly.var("x", XY)


def y_():
    return MultiPoly.var("y", XY)


def laguerre_series(N, a):
    return {k: (-1) ** k * gbinom(N + a, N - k) / factorial(k) for k in range(N + 1)}


def jacobi_series(J, a, b):
    # hypergeometric form in powers of (z-1)/2, expanded into powers of z
    out = {}
    for k in range(J + 1):
        c = gbinom(J + a, J - k) * gbinom(J + a + b + k, k)
        for j in range(k + 1):
            out[j] = out.get(j, F(0)) + c * gbinom(F(k), j) * (-1) ** (k - j) / 2 ** k
    return out


def test_arith_examples():
    x, y = x_(), y_()
    assert (x + y) * (x - y) == x * x - y * y
    assert (x * x * y).diff("x") == 2 * x * y
    assert (x * x + y).eval([F(3, 2), F(1, 4)]) == F(5, 2)


def test_arity_mismatch_rejected():
    with pytest.raises(ValueError):
        x_() + MultiPoly.var("z", ("z",))


def test_rationals():
    assert as_rational("3/4") == F(3, 4)
    assert parse_rational("-2") == -2
    with pytest.raises(ValueError):
        parse_rational("0.5x")


def test_laguerre_examples():
    assert laguerre(0, F(7, 3)).to_text() == "1"
    assert laguerre(1, F(1, 2)).to_text() == "3/2 + -1 * x"
    assert laguerre(2, 0).to_text() == "1 + -2 * x + 1/2 * x^2"


def test_jacobi_examples():
    assert jacobi(0, F(1, 3), 2).to_text() == "1"
    assert jacobi(1, F(-1, 2), F(1, 2)).to_text() == "-1/2 + 1 * z"
    assert jacobi(2, 0, 0).to_text() == "-1/2 + 3/2 * z^2"


rationals = st.fractions(min_value=-3, max_value=5, max_denominator=7)


@settings(max_examples=40, deadline=None)
@given(N=st.integers(0, 7), a=rationals)
def test_laguerre_matches_series(N, a):
    p = laguerre(N, a, "x")
    for k, c in laguerre_series(N, a).items():
        assert p.coefficient((k,)) == c


@settings(max_examples=40, deadline=None)
@given(J=st.integers(0, 6), a=rationals, b=rationals)
def test_jacobi_matches_series(J, a, b):
    p = jacobi(J, a, b, "z")
    for k, c in jacobi_series(J, a, b).items():
        assert p.coefficient((k,)) == c


@settings(max_examples=30, deadline=None)
@given(N=st.integers(0, 6), a=rationals)
def test_laguerre_ode(N, a):
    L = laguerre(N, a, "x")
    x = MultiPoly.var("x", ("x",))
    lhs = x * L.diff("x", 2) + (x * -1 + (a + 1)) * L.diff("x") + L * N
    assert lhs.is_zero()


coef = st.fractions(min_value=-4, max_value=4, max_denominator=5)
polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), coef, max_size=5).map(
    lambda d: sum((MultiPoly.monomial(e, XY, c) for e, c in d.items()), MultiPoly.zero(XY)))


@settings(max_examples=50, deadline=None)
@given(a=polys, b=polys, c=polys)
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert (a * b).diff("y") == a.diff("y") * b + a * b.diff("y")


@settings(max_examples=50, deadline=None)
@given(a=polys, b=polys, u=coef, v=coef)
def test_eval_is_homomorphism(a, b, u, v):
    assert (a * b).eval([u, v]) == a.eval([u, v]) * b.eval([u, v])


@settings(max_examples=50, deadline=None)
@given(a=polys)
def test_text_round_trip(a):
    assert MultiPoly.from_text(a.to_text(), XY) == a

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from beanbounds import series_core as sc
from beanbounds.series_core import FLOAT, RATIONAL, TruncatedSeries

z = sp.symbols("z")


def sympy_coeffs(expr, order):
    poly = sp.series(expr, z, 0, order + 1).removeO()
    return [Fraction(str(sp.nsimplify(poly.coeff(z, n)))) for n in range(order + 1)]


def S(*coeffs, order=None, field=RATIONAL):
    return TruncatedSeries.from_coeffs([Fraction(c) for c in coeffs], order, field)


fractions = st.fractions(min_value=-3, max_value=3, max_denominator=12)


@st.composite
def unit_series(draw, order=6):
    tail = draw(st.lists(fractions, min_size=order, max_size=order))
    return TruncatedSeries.from_coeffs([Fraction(1)] + tail, order)


@st.composite
def normalized_series(draw, order=6):
    tail = draw(st.lists(fractions, min_size=order - 1, max_size=order - 1))
    return TruncatedSeries.from_coeffs([0, 1] + tail, order)


# --- oracle comparisons -----------------------------------------------------

def test_tanh_matches_sympy():
    assert list(sc.tanh_series(15)) == sympy_coeffs(sp.tanh(z), 15)


def test_bean_function_matches_sympy():
    b = sc.sqrt_unit(sc.tanh_series(10) + 1)
    assert list(b) == sympy_coeffs(sp.sqrt(1 + sp.tanh(z)), 10)


def test_exp_log_match_sympy():
    a = S(1, 2, -1, Fraction(1, 3), 0, 5, order=7)
    expr = 1 + 2 * z - z**2 + sp.Rational(1, 3) * z**3 + 5 * z**5
    assert list(sc.log_unit(a)) == sympy_coeffs(sp.log(expr), 7)
    x = a - 1
    assert list(sc.exp_series(x)) == sympy_coeffs(sp.exp(expr - 1), 7)


def test_revert_matches_sympy_lagrange():
    f = S(0, 1, Fraction(1, 4), Fraction(-1, 24), Fraction(-5, 192), Fraction(17, 1920))
    F = sc.revert(f)
    # oracle: solve f(F(w)) = w order by order with sympy
    w = sp.symbols("w")
    bs = sp.symbols("b2:6")
    Fw = w + sum(b * w**k for k, b in enumerate(bs, start=2))
    fexpr = sum(sp.Rational(c.numerator, c.denominator) * Fw**k for k, c in enumerate(f))
    eqs = sp.Poly(sp.expand(fexpr), w).all_coeffs()[::-1]
    sol = sp.solve(eqs[2:6], bs, dict=True)[0]
    assert [F[k] for k in range(2, 6)] == [Fraction(str(sol[b])) for b in bs]


def test_compose_matches_sympy():
    outer = S(1, -2, 3, 0, 1, order=6)
    inner = S(0, 1, Fraction(1, 2), -1, order=6)
    expr = sp.Rational(1) - 2 * z + 3 * z**2 + z**4
    sub = z + z**2 / 2 - z**3
    assert list(sc.compose(outer, inner)) == sympy_coeffs(expr.subs(z, sub), 6)


# --- algebraic properties ------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(unit_series())
def test_sqrt_squared(a):
    s = sc.sqrt_unit(a)
    assert s * s == a


@settings(max_examples=60, deadline=None)
@given(unit_series())
def test_exp_of_log(a):
    assert sc.exp_series(sc.log_unit(a)) == a


@settings(max_examples=60, deadline=None)
@given(normalized_series())
def test_compose_with_revert_is_identity(f):
    F = sc.revert(f)
    assert sc.compose(f, F) == sc.identity(f.order)
    assert sc.compose(F, f) == sc.identity(f.order)


@settings(max_examples=60, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=9))
def test_derivative_of_integral(cs):
    a = TruncatedSeries.from_coeffs(cs)
    assert sc.derivative(sc.integrate(a)) == a


@settings(max_examples=40, deadline=None)
@given(unit_series(), unit_series())
def test_div_inverts_mul(a, b):
    assert (a * b) / b == a


@settings(max_examples=40, deadline=None)
@given(unit_series())
def test_float_field_agrees_with_rational(a):
    exact = sc.log_unit(sc.sqrt_unit(a))
    approx = sc.log_unit(sc.sqrt_unit(a.to_float()))
    for x, y in zip(exact, approx):
        assert abs(float(x) - y) <= 1e-12 * max(1.0, abs(float(x)))


def test_bean_identity_exact_to_order_40():
    n = 40
    b = sc.sqrt_unit(sc.tanh_series(n) + 1)
    e = sc.exp_series(sc.identity(n) * -2)
    assert b * b * (e + 1) == TruncatedSeries.constant(2, n)


def test_float_tanh_close_to_rational():
    exact = sc.tanh_series(30)
    approx = sc.tanh_series(30, FLOAT)
    for x, y in zip(exact, approx):
        if x == 0:
            assert y == 0
        else:
            assert abs(float(x) - y) <= 1e-12 * abs(float(x))


# --- API behaviour ------------------------------------------------------------

def test_float_complex_coefficients():
    a = TruncatedSeries.from_coeffs([1, 1j, 0.5], field=FLOAT)
    s = sc.sqrt_unit(a)
    assert abs((s * s)[1] - 1j) < 1e-15
    assert abs((s * s)[2] - 0.5) < 1e-15


def test_rational_field_rejects_floats():
    with pytest.raises(sc.SeriesError):
        TruncatedSeries.from_coeffs([1, 0.5])


def test_field_mismatch():
    with pytest.raises(sc.FieldMismatchError):
        S(1, 2) + S(1, 2, field=FLOAT)


def test_non_unit_rejected():
    with pytest.raises(sc.SeriesError):
        sc.sqrt_unit(S(2, 1))
    with pytest.raises(sc.SeriesError):
        sc.log_unit(S(0, 1))
    with pytest.raises(sc.SeriesError):
        sc.revert(S(0, 2, 1))
    with pytest.raises(sc.SeriesError):
        sc.compose(S(1, 1), S(1, 1))


def test_zero_divisor():
    with pytest.raises(sc.SeriesError):
        S(1, 1) / S(0, 1)


def test_order_is_common_minimum():
    assert (S(1, 1, 1) * S(1, 1)).order == 1


def test_truncate_cannot_extend():
    with pytest.raises(sc.SeriesError):
        S(1, 1).truncate(3)


def test_evaluation_and_json_roundtrip():
    a = S(1, Fraction(1, 2), Fraction(-1, 3))
    assert a(Fraction(1, 2)) == 1 + Fraction(1, 4) - Fraction(1, 12)
    assert TruncatedSeries.from_json(a.to_json()) == a
    c = TruncatedSeries.from_coeffs([1, 2j, 0.5], field=FLOAT)
    assert TruncatedSeries.from_json(c.to_json()) == c


def test_monomial_past_order_is_zero():
    assert TruncatedSeries.monomial(5, 3).is_zero()

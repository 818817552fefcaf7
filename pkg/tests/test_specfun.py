"""Tests for the special-function layer.

Airy values are checked against frozen high-precision samples
(tests/oracle_data.py, generated offline at 40 significant digits);
differentiation/integration identities and quadrature exactness serve as
independent cross-checks that need no stored reference at all.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle_data import (
    AIRY_FIRST_ZERO,
    AIRY_PRIME_SAMPLES,
    AIRY_SAMPLES,
)
from shocklab import specfun as sf
from shocklab.specfun import (
    ChebSeries,
    QuadRule,
    airy_ai,
    airy_ai_prime,
    airy_ai_scaled,
    cheb_derivative,
    cheb_eval,
    cheb_fit,
    cheb_fit_auto,
    cheb_integral,
    cheb_points,
    gauss_legendre,
)


# ---------------------------------------------------------------- Airy


def test_airy_oracle_samples():
    xs = np.array([p[0] for p in AIRY_SAMPLES])
    ref = np.array([p[1] for p in AIRY_SAMPLES])
    err = np.abs(airy_ai(xs) - ref)
    assert err.max() < 1e-13


def test_airy_prime_oracle_samples():
    xs = np.array([p[0] for p in AIRY_PRIME_SAMPLES])
    ref = np.array([p[1] for p in AIRY_PRIME_SAMPLES])
    assert np.abs(airy_ai_prime(xs) - ref).max() < 1e-12


def test_airy_scaled_consistency():
    xs = np.array([p[0] for p in AIRY_SAMPLES])
    ref = np.array([p[1] for p in AIRY_SAMPLES])
    m = np.abs(ref) > 1e-8  # stay away from the zero of Ai
    expect = ref[m] * np.exp((2.0 / 3.0) * np.maximum(xs[m], 0.0) ** 1.5)
    rel = np.abs(airy_ai_scaled(xs[m]) / expect - 1.0)
    assert rel.max() < 5e-12


def test_airy_scaled_equals_plain_on_negative_axis():
    xs = np.linspace(-20.0, 0.0, 57)
    assert np.array_equal(airy_ai_scaled(xs), airy_ai(xs))


@pytest.mark.parametrize("b", [-9.4, -4.6, 3.4, 7.8])
def test_airy_region_overlap(b):
    # evaluate the SAME points with the methods on both sides of each
    # switch; they must agree far below the advertised accuracy
    xs = np.array([b - 0.02, b, b + 0.02])
    if b == -4.6:
        lo, hi = sf._anchored_eval(xs, False), sf._mac_eval(xs, False)
    elif b == 3.4:
        lo, hi = sf._mac_eval(xs, False), sf._anchored_eval(xs, False)
    elif b == -9.4:
        lo, hi = sf._asym_neg(xs, False), sf._anchored_eval(xs, False)
    else:
        lo, hi = sf._anchored_eval(xs, False), sf._asym_pos(xs, False, False)
    assert np.abs(lo - hi).max() < 1e-13


def test_airy_ode_residual():
    xs = np.linspace(-12.0, 9.0, 85)
    h = 1e-3
    second = (airy_ai(xs + h) - 2.0 * airy_ai(xs) + airy_ai(xs - h)) / h**2
    assert np.abs(second - xs * airy_ai(xs)).max() < 1e-5


def test_airy_prime_is_derivative():
    xs = np.linspace(-11.0, 8.0, 61)
    h = 1e-5
    fd = (airy_ai(xs + h) - airy_ai(xs - h)) / (2.0 * h)
    assert np.abs(fd - airy_ai_prime(xs)).max() < 1e-9


def test_airy_first_zero():
    assert abs(airy_ai(AIRY_FIRST_ZERO)) < 1e-13
    assert airy_ai(AIRY_FIRST_ZERO - 1e-4) < 0 < airy_ai(AIRY_FIRST_ZERO + 1e-4)


def test_airy_positive_and_decreasing_right_of_zero():
    xs = np.linspace(-2.3, 30.0, 400)
    v = airy_ai(xs)
    assert np.all(v > 0)
    assert np.all(np.diff(v[xs >= 0]) < 0)


def test_airy_scalar_and_shape():
    assert isinstance(airy_ai(0.5), float)
    assert airy_ai(np.zeros((3, 2))).shape == (3, 2)


def test_airy_rejects_nonfinite():
    with pytest.raises(ValueError):
        airy_ai(np.nan)
    with pytest.raises(ValueError):
        airy_ai(np.array([1.0, np.inf]))


# ------------------------------------------------- Gauss-Legendre rules


def test_gauss_legendre_two_and_three_point():
    r2 = gauss_legendre(2, -1.0, 1.0)
    assert np.allclose(r2.nodes, [-1.0 / np.sqrt(3.0), 1.0 / np.sqrt(3.0)],
                       atol=1e-15)
    assert np.allclose(r2.weights, [1.0, 1.0], atol=1e-15)
    r3 = gauss_legendre(3, -1.0, 1.0)
    assert np.allclose(r3.nodes, [-np.sqrt(0.6), 0.0, np.sqrt(0.6)],
                       atol=1e-15)
    assert np.allclose(r3.weights, [5.0 / 9, 8.0 / 9, 5.0 / 9], atol=1e-15)


@pytest.mark.parametrize("n", [1, 2, 5, 16, 64, 200])
def test_gauss_legendre_polynomial_exactness(n):
    rule = gauss_legendre(n, -0.7, 1.9)
    rng = np.random.default_rng(n)
    coef = rng.standard_normal(2 * n)  # degree 2n-1
    vals = np.polynomial.polynomial.polyval(rule.nodes, coef)
    got = float(np.dot(rule.weights, vals))
    anti = np.polynomial.polynomial.polyint(coef)
    exact = (np.polynomial.polynomial.polyval(1.9, anti)
             - np.polynomial.polynomial.polyval(-0.7, anti))
    assert abs(got - exact) < 1e-10 * max(1.0, abs(exact))


def test_gauss_legendre_smooth_integrand():
    rule = gauss_legendre(24, 0.0, np.pi)
    assert abs(np.dot(rule.weights, np.sin(rule.nodes)) - 2.0) < 1e-14


@given(n=st.integers(1, 40),
       lo=st.floats(-50, 49, allow_nan=False),
       width=st.floats(1e-3, 100))
@settings(max_examples=60, deadline=None)
def test_gauss_legendre_rule_invariants(n, lo, width):
    rule = gauss_legendre(n, lo, lo + width)
    assert len(rule.nodes) == n
    assert np.all(np.diff(rule.nodes) > 0)
    assert np.all(rule.weights > 0)
    assert abs(rule.weights.sum() - width) < 1e-12 * max(1.0, width)


def test_gauss_legendre_validation():
    with pytest.raises(ValueError):
        gauss_legendre(0, 0.0, 1.0)
    with pytest.raises(ValueError):
        gauss_legendre(4, 1.0, 1.0)
    with pytest.raises(ValueError):
        gauss_legendre(4, 0.0, np.inf)


def test_quadrule_rejects_bad_data():
    with pytest.raises(ValueError):
        QuadRule(nodes=np.array([0.5, 0.2]), weights=np.array([0.5, 0.5]),
                 interval=(0.0, 1.0))
    with pytest.raises(ValueError):
        QuadRule(nodes=np.array([0.2, 0.5]), weights=np.array([0.5, -0.5]),
                 interval=(0.0, 1.0))
    with pytest.raises(ValueError):
        QuadRule(nodes=np.array([0.2, 0.5]), weights=np.array([0.9, 0.9]),
                 interval=(0.0, 1.0))


# ------------------------------------------------------- Chebyshev


def test_cheb_points_endpoints_and_order():
    pts = cheb_points(8, -2.0, 5.0)
    assert pts[0] == pytest.approx(-2.0)
    assert pts[-1] == pytest.approx(5.0)
    assert np.all(np.diff(pts) > 0)


def test_cheb_fit_reproduces_polynomial_exactly():
    coef = np.array([0.3, -1.2, 0.7, 2.1, -0.4])
    f = lambda x: np.polynomial.polynomial.polyval(x, coef)
    series = cheb_fit(f, (-1.5, 2.5), 4)
    xs = np.linspace(-1.5, 2.5, 33)
    assert np.abs(cheb_eval(series, xs) - f(xs)).max() < 1e-12


def test_cheb_interpolates_at_its_own_nodes():
    series = cheb_fit(np.exp, (0.0, 2.0), 24)
    pts = cheb_points(24, 0.0, 2.0)
    assert np.abs(cheb_eval(series, pts) - np.exp(pts)).max() < 1e-13


def test_cheb_derivative_and_integral():
    series = cheb_fit(np.cos, (-2.0, 3.0), 48)
    xs = np.linspace(-2.0, 3.0, 101)
    assert np.abs(cheb_eval(cheb_derivative(series), xs) + np.sin(xs)).max() < 1e-11
    assert abs(cheb_integral(series) - (np.sin(3.0) - np.sin(-2.0))) < 1e-13


def test_cheb_integral_of_derivative_is_increment():
    f = lambda x: np.exp(-0.5 * x**2)
    series = cheb_fit(f, (-3.0, 1.0), 64)
    assert abs(cheb_integral(cheb_derivative(series))
               - (f(1.0) - f(-3.0))) < 1e-12


def test_cheb_fit_auto_reaches_tail_tolerance():
    series = cheb_fit_auto(lambda x: np.sin(5.0 * x) * np.exp(x), (0.0, 4.0),
                           n=16, tol=1e-12)
    c = np.abs(series.coeffs)
    assert c[-3:].max() <= 1e-12 * c.max()


def test_cheb_fit_rejects_nonfinite_samples():
    def f(x):
        return np.where(np.abs(x) < 0.5, np.nan, 1.0)
    with pytest.raises(ValueError):
        cheb_fit(f, (-1.0, 1.0), 16)


def test_cheb_fit_accepts_scalar_only_function():
    import math
    series = cheb_fit(lambda x: math.sin(float(x)), (0.0, 1.0), 16)
    assert abs(cheb_eval(series, 0.3) - np.sin(0.3)) < 1e-13


@given(deg=st.integers(0, 9), seed=st.integers(0, 2**31 - 1))
@settings(max_examples=40, deadline=None)
def test_cheb_polynomial_roundtrip_property(deg, seed):
    rng = np.random.default_rng(seed)
    coef = rng.uniform(-2, 2, deg + 1)
    f = lambda x: np.polynomial.polynomial.polyval(x, coef)
    series = cheb_fit(f, (-1.0, 1.0), max(deg, 1))
    xs = np.linspace(-1.0, 1.0, 17)
    assert np.abs(cheb_eval(series, xs) - f(xs)).max() < 1e-10


def test_cheb_eval_scalar_output():
    series = ChebSeries(coeffs=np.array([1.0, 0.5]), interval=(0.0, 1.0))
    out = cheb_eval(series, 0.25)
    assert isinstance(out, float)
    # T_0 + 0.5 T_1 at t = 2*0.25 - 1 = -0.5
    assert out == pytest.approx(1.0 + 0.5 * (-0.5))

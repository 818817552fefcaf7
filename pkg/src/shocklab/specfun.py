"""Special functions and approximation primitives.

Self-contained building blocks for the rest of the package: the Airy
function Ai (vectorized, float64, absolute accuracy ~1e-13 on [-30, 30]),
Gauss-Legendre quadrature rules generated by Newton iteration on Legendre
polynomials, and Chebyshev interpolation with exact differentiation and
integration of the interpolant.

Ai is evaluated by a banded scheme:

* ``-4.6 <= x <= 3.4`` -- Maclaurin series (the two standard entire
  solutions of y'' = x y combined with Ai(0), Ai'(0));
* ``3.4 < x <= 7.8`` and ``-9.4 <= x < -4.6`` -- Taylor expansions about
  precomputed anchor points spaced 0.4 apart (coefficients from the ODE
  recurrence, anchor values frozen in ``_airy_tables``); these bands bridge
  the gap where the raw Maclaurin sum loses absolute accuracy to
  cancellation but the asymptotic series cannot reach 1e-13 yet;
* beyond -- asymptotic expansions (monotone branch on the right, the
  sine/cosine oscillatory form on the left).

All operations are pure and hold no mutable state.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import _airy_tables as _tab
from . import _airy_tables_ld as _tabld

__all__ = [
    "QuadRule",
    "ChebSeries",
    "airy_ai",
    "airy_ai_scaled",
    "airy_ai_prime",
    "gauss_legendre",
    "cheb_points",
    "cheb_fit",
    "cheb_fit_auto",
    "cheb_eval",
    "cheb_derivative",
    "cheb_integral",
]

_SQRTPI = float(np.sqrt(np.pi))

# ----------------------------------------------------------------------
# Airy function
# ----------------------------------------------------------------------

_MAC_LO, _MAC_HI = -4.6, 3.4          # Maclaurin band
_ANCH_HI = 7.8                        # anchored band on the right
_ANCH_LO = -9.4                       # anchored band on the left
_N_MAC = 24                           # x^{3k} terms kept in the Maclaurin sum
_N_TAYLOR = 26                        # terms kept in each anchored expansion
_N_ASYM = 20                          # terms kept in the asymptotic sums


def _maclaurin_coeffs():
    # y'' = x y gives a_{n+3} = a_n / ((n+3)(n+2)) for both entire solutions
    # f (f(0)=1) and g (g'(0)=1); only every third coefficient is nonzero.
    fc = np.empty(_N_MAC)
    gc = np.empty(_N_MAC)
    fc[0] = gc[0] = 1.0
    for k in range(_N_MAC - 1):
        n = 3 * k
        fc[k + 1] = fc[k] / ((n + 3.0) * (n + 2.0))
        gc[k + 1] = gc[k] / ((n + 4.0) * (n + 3.0))
    return fc, gc


def _asymptotic_coeffs():
    # u_0 = 1, u_{k+1} = u_k (6k+1)(6k+5) / (72 (k+1));  v_k for Ai'.
    u = np.empty(_N_ASYM)
    v = np.empty(_N_ASYM)
    u[0] = v[0] = 1.0
    for k in range(_N_ASYM - 1):
        u[k + 1] = u[k] * (6 * k + 1) * (6 * k + 5) / (72.0 * (k + 1))
        v[k + 1] = -u[k + 1] * (6 * (k + 1) + 1) / (6 * (k + 1) - 1)
    return u, v


_FC, _GC = _maclaurin_coeffs()
_ASYM_U, _ASYM_V = _asymptotic_coeffs()
_ANCH_X = np.concatenate([_tab.ANCHOR_X_NEG[::-1], _tab.ANCHOR_X_POS])
_ANCH_AI = np.concatenate([_tab.ANCHOR_AI_NEG[::-1], _tab.ANCHOR_AI_POS])
_ANCH_AIP = np.concatenate([_tab.ANCHOR_AIP_NEG[::-1], _tab.ANCHOR_AIP_POS])


def _mac_eval(x, prime):
    y = x * x * x
    f = np.zeros_like(x)
    g = np.zeros_like(x)
    if prime:
        # termwise derivative: f' = sum 3k c_k x^{3k-1}, g' = sum (3k+1) b_k x^{3k}
        for k in range(_N_MAC - 1, 0, -1):
            f = (f + 3 * k * _FC[k]) * y
            g = (g + (3 * k + 1) * _GC[k]) * y
        f = f / np.where(x != 0.0, x, 1.0) * (x != 0.0)
        g = g + 1.0
        return _tab.AIRY_C1 * f - _tab.AIRY_C2 * g
    for k in range(_N_MAC - 1, -1, -1):
        f = f * y + _FC[k]
        g = g * y + _GC[k]
    return _tab.AIRY_C1 * f - _tab.AIRY_C2 * x * g


def _anchored_eval(x, prime):
    idx = np.searchsorted(_ANCH_X, x)
    idx = np.clip(idx, 1, len(_ANCH_X) - 1)
    idx -= (x - _ANCH_X[idx - 1]) < (_ANCH_X[idx] - x)
    x0 = _ANCH_X[idx]
    d = x - x0
    c_prev = _ANCH_AI[idx].copy()   # c_0
    c_cur = _ANCH_AIP[idx].copy()   # c_1
    s = c_prev + c_cur * d
    sp = c_cur.copy()
    pw = np.ones_like(d)
    for n in range(2, _N_TAYLOR):
        # Ai'' = x Ai  =>  (n)(n-1) c_n = x0 c_{n-2} + c_{n-3}
        if n == 2:
            c_new = x0 * c_prev / 2.0
            c_prev3 = c_prev
        else:
            c_new = (x0 * c_prev + c_prev3) / (n * (n - 1.0))
            c_prev3 = c_prev
        c_prev, c_cur = c_cur, c_new
        pw = pw * d
        if prime:
            sp = sp + n * c_new * pw
        s = s + c_new * pw * d
    return sp if prime else s


def _asym_pos(x, prime, scaled):
    zeta = (2.0 / 3.0) * x * np.sqrt(x)
    w = 1.0 / zeta
    coeffs = _ASYM_V if prime else _ASYM_U
    s = np.zeros_like(x)
    for k in range(_N_ASYM - 1, -1, -1):
        s = s * w + (-1.0) ** k * coeffs[k]
    if prime:
        base = -np.power(x, 0.25) / (2.0 * _SQRTPI)
    else:
        base = 1.0 / (2.0 * _SQRTPI * np.power(x, 0.25))
    if scaled:
        return base * s
    return base * s * np.exp(-zeta)


def _asym_neg(x, prime):
    z = -x
    zeta = (2.0 / 3.0) * z * np.sqrt(z)
    w2 = 1.0 / (zeta * zeta)
    coeffs = _ASYM_V if prime else _ASYM_U
    even = np.zeros_like(z)
    odd = np.zeros_like(z)
    for k in range(_N_ASYM // 2 - 1, -1, -1):
        sign = (-1.0) ** k
        even = even * w2 + sign * coeffs[2 * k]
        odd = odd * w2 + sign * coeffs[2 * k + 1]
    odd = odd / zeta
    phase = zeta - 0.25 * np.pi
    c, s = np.cos(phase), np.sin(phase)
    if prime:
        return np.power(z, 0.25) / _SQRTPI * (s * even - c * odd)
    return (c * even + s * odd) / (_SQRTPI * np.power(z, 0.25))


def _airy_dispatch(x, prime=False, scaled=False):
    out = np.empty_like(x)
    m = (x >= _MAC_LO) & (x <= _MAC_HI)
    if m.any():
        out[m] = _mac_eval(x[m], prime)
    m = ((x > _MAC_HI) & (x <= _ANCH_HI)) | ((x < _MAC_LO) & (x >= _ANCH_LO))
    if m.any():
        out[m] = _anchored_eval(x[m], prime)
    m = x > _ANCH_HI
    if m.any():
        out[m] = _asym_pos(x[m], prime, scaled=False)
    m = x < _ANCH_LO
    if m.any():
        out[m] = _asym_neg(x[m], prime)
    if scaled:
        m = (x > 0) & (x <= _ANCH_HI)
        if m.any():
            xm = x[m]
            out[m] = out[m] * np.exp((2.0 / 3.0) * xm * np.sqrt(xm))
        m = x > _ANCH_HI
        if m.any():
            out[m] = _asym_pos(x[m], prime, scaled=True)
    return out


# ----------------------------------------------------------------------
# extended-precision (longdouble) evaluation path
# ----------------------------------------------------------------------

_LD = np.longdouble
_LD_ANCH = 12.2                       # anchored band limit, extended path
_N_TAYLOR_LD = 30
_N_ASYM_LD = 24


def _asymptotic_coeffs_ld():
    u = np.empty(_N_ASYM_LD, dtype=_LD)
    v = np.empty(_N_ASYM_LD, dtype=_LD)
    u[0] = v[0] = _LD(1)
    for k in range(_N_ASYM_LD - 1):
        u[k + 1] = u[k] * (6 * k + 1) * (6 * k + 5) / (_LD(72) * (k + 1))
        v[k + 1] = -u[k + 1] * (6 * (k + 1) + 1) / _LD(6 * (k + 1) - 1)
    return u, v


_ASYM_U_LD, _ASYM_V_LD = _asymptotic_coeffs_ld()


def _anchored_eval_ld(x, prime):
    ax = _tabld.ANCHOR_X_LD
    idx = np.searchsorted(ax, x)
    idx = np.clip(idx, 1, len(ax) - 1)
    idx -= (x - ax[idx - 1]) < (ax[idx] - x)
    x0 = ax[idx]
    d = x - x0
    c_prev = _tabld.ANCHOR_AI_LD[idx].copy()
    c_cur = _tabld.ANCHOR_AIP_LD[idx].copy()
    s = c_prev + c_cur * d
    sp = c_cur.copy()
    pw = np.ones_like(d)
    c_prev3 = c_prev
    for n in range(2, _N_TAYLOR_LD):
        if n == 2:
            c_new = x0 * c_prev / _LD(2)
        else:
            c_new = (x0 * c_prev + c_prev3) / (_LD(n) * (n - 1))
            c_prev3 = c_prev
        c_prev, c_cur = c_cur, c_new
        pw = pw * d
        if prime:
            sp = sp + n * c_new * pw
        s = s + c_new * pw * d
    return sp if prime else s


def _asym_pos_ld(x, prime, scaled):
    zeta = (_LD(2) / 3) * x * np.sqrt(x)
    w = 1 / zeta
    coeffs = _ASYM_V_LD if prime else _ASYM_U_LD
    s = np.zeros_like(x)
    for k in range(_N_ASYM_LD - 1, -1, -1):
        s = s * w + (_LD(-1)) ** k * coeffs[k]
    if prime:
        base = -np.power(x, _LD(0.25)) / (2 * _tabld.SQRTPI_LD)
    else:
        base = 1 / (2 * _tabld.SQRTPI_LD * np.power(x, _LD(0.25)))
    if scaled:
        return base * s
    return base * s * np.exp(-zeta)


def _asym_neg_ld(x, prime):
    z = -x
    zeta = (_LD(2) / 3) * z * np.sqrt(z)
    w2 = 1 / (zeta * zeta)
    coeffs = _ASYM_V_LD if prime else _ASYM_U_LD
    even = np.zeros_like(z)
    odd = np.zeros_like(z)
    for k in range(_N_ASYM_LD // 2 - 1, -1, -1):
        sign = (_LD(-1)) ** k
        even = even * w2 + sign * coeffs[2 * k]
        odd = odd * w2 + sign * coeffs[2 * k + 1]
    odd = odd / zeta
    phase = zeta - _tabld.SQRTPI_LD ** 2 / 4
    c, s = np.cos(phase), np.sin(phase)
    if prime:
        return np.power(z, _LD(0.25)) / _tabld.SQRTPI_LD * (s * even - c * odd)
    return (c * even + s * odd) / (_tabld.SQRTPI_LD * np.power(z, _LD(0.25)))


def _airy_dispatch_ld(x, prime=False, scaled=False):
    out = np.empty_like(x)
    m = np.abs(x) <= _LD_ANCH
    if m.any():
        out[m] = _anchored_eval_ld(x[m], prime)
    m = x > _LD_ANCH
    if m.any():
        out[m] = _asym_pos_ld(x[m], prime, scaled=scaled)
    m = x < -_LD_ANCH
    if m.any():
        out[m] = _asym_neg_ld(x[m], prime)
    if scaled:
        m = (x > 0) & (x <= _LD_ANCH)
        if m.any():
            xm = x[m]
            out[m] = out[m] * np.exp((_LD(2) / 3) * xm * np.sqrt(xm))
    return out


def _airy_call(x, prime=False, scaled=False):
    arr = np.asarray(x)
    if arr.dtype == _LD:
        if not np.all(np.isfinite(arr)):
            raise ValueError("airy_ai requires finite input")
        res = _airy_dispatch_ld(np.atleast_1d(arr), prime=prime,
                                scaled=scaled)
        return res[0] if arr.ndim == 0 else res.reshape(arr.shape)
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("airy_ai requires finite input")
    res = _airy_dispatch(np.atleast_1d(arr), prime=prime, scaled=scaled)
    return float(res[0]) if arr.ndim == 0 else res.reshape(arr.shape)


def airy_ai(x):
    """Airy function Ai(x) for real x (scalar or array).

    Absolute error is ~1e-13 for x in [-30, 30]; for larger x the value
    underflows gracefully (positive, correctly rounded towards zero).
    """
    return _airy_call(x)


def airy_ai_scaled(x):
    """Ai(x) * exp((2/3) max(x,0)^{3/2}).

    Removes the super-exponential right tail so products with explicit
    exponential factors can be assembled without underflow; equals Ai(x)
    for x <= 0. Relative accuracy ~1e-12 throughout.
    """
    return _airy_call(x, scaled=True)


def airy_ai_prime(x):
    """Derivative Ai'(x); internal helper (ODE residual oracle and checks)."""
    return _airy_call(x, prime=True)


# ----------------------------------------------------------------------
# Gauss-Legendre quadrature
# ----------------------------------------------------------------------


@dataclass
class QuadRule:
    """A quadrature rule on [lo, hi]: strictly increasing nodes, positive
    weights summing to hi - lo."""

    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]

    def __post_init__(self):
        lo, hi = self.interval
        if not (np.all(np.diff(self.nodes) > 0)
                and self.nodes[0] >= lo and self.nodes[-1] <= hi):
            raise ValueError("nodes must increase strictly inside the interval")
        if not np.all(self.weights > 0):
            raise ValueError("weights must be positive")
        if abs(self.weights.sum() - (hi - lo)) > 1e-12 * max(1.0, abs(hi - lo)):
            raise ValueError("weights must sum to the interval length")


@functools.lru_cache(maxsize=256)
def _legendre_nodes(n):
    """Nodes/weights of the n-point rule on [-1, 1] by Newton iteration."""
    k = np.arange(1, n + 1)
    x = np.cos(np.pi * (k - 0.25) / (n + 0.5))
    for _ in range(100):
        p_prev = np.ones_like(x)
        p = x.copy()
        if n == 1:
            p, p_prev = x.copy(), np.ones_like(x)
        for j in range(2, n + 1):
            p, p_prev = ((2 * j - 1) * x * p - (j - 1) * p_prev) / j, p
        if n == 1:
            deriv = np.ones_like(x)
        else:
            deriv = n * (x * p - p_prev) / (x * x - 1.0)
        dx = p / deriv
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    # final weight evaluation with the converged nodes
    p_prev = np.ones_like(x)
    p = x.copy()
    for j in range(2, n + 1):
        p, p_prev = ((2 * j - 1) * x * p - (j - 1) * p_prev) / j, p
    if n == 1:
        w = np.array([2.0])
    else:
        deriv = n * (x * p - p_prev) / (x * x - 1.0)
        w = 2.0 / ((1.0 - x * x) * deriv * deriv)
    order = np.argsort(x)
    x, w = x[order], w[order]
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@functools.lru_cache(maxsize=64)
def _legendre_nodes_ld(n):
    """Extended-precision nodes/weights on [-1, 1] (Newton, refined from the
    double-precision solution)."""
    x = np.asarray(_legendre_nodes(n)[0], dtype=_LD)
    one = _LD(1)
    for _ in range(4):
        p_prev = np.ones_like(x)
        p = x.copy()
        for j in range(2, n + 1):
            p, p_prev = ((2 * j - 1) * x * p - (j - 1) * p_prev) / _LD(j), p
        if n == 1:
            deriv = np.ones_like(x)
        else:
            deriv = n * (x * p - p_prev) / (x * x - one)
        dx = p / deriv
        x = x - dx
        if np.max(np.abs(dx)) < 2e-19:
            break
    p_prev = np.ones_like(x)
    p = x.copy()
    for j in range(2, n + 1):
        p, p_prev = ((2 * j - 1) * x * p - (j - 1) * p_prev) / _LD(j), p
    if n == 1:
        w = np.array([2], dtype=_LD)
    else:
        deriv = n * (x * p - p_prev) / (x * x - one)
        w = 2 / ((one - x * x) * deriv * deriv)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(n, lo, hi, dtype=float):
    """n-point Gauss-Legendre rule on [lo, hi] (exact through degree 2n-1).

    ``dtype`` selects the working precision of the nodes and weights;
    ``numpy.longdouble`` requests the extended-precision variant used by the
    ill-conditioned determinant evaluations.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError("node count must be a positive integer")
    if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
        raise ValueError("need finite lo < hi")
    if np.dtype(dtype) == np.dtype(_LD):
        x, w = _legendre_nodes_ld(int(n))
        half = (_LD(hi) - _LD(lo)) / 2
        return QuadRule(nodes=_LD(lo) + half * (x + 1), weights=w * half,
                        interval=(float(lo), float(hi)))
    x, w = _legendre_nodes(int(n))
    half = 0.5 * (hi - lo)
    return QuadRule(nodes=lo + half * (x + 1.0), weights=w * half,
                    interval=(float(lo), float(hi)))


# ----------------------------------------------------------------------
# Chebyshev interpolation
# ----------------------------------------------------------------------


@dataclass
class ChebSeries:
    """Chebyshev-basis coefficients of a polynomial on [lo, hi]."""

    coeffs: np.ndarray
    interval: tuple[float, float]


def cheb_points(n, lo, hi):
    """The n+1 Chebyshev points (second kind) of [lo, hi], ascending."""
    if n < 1:
        raise ValueError("need n >= 1")
    mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
    return mid - half * np.cos(np.pi * np.arange(n + 1) / n)


def _values_to_coeffs(v):
    """DCT-I of samples at the (descending) Chebyshev points via an even
    extension and a real FFT."""
    n = len(v) - 1
    ext = np.concatenate([v, v[-2:0:-1]])
    c = np.fft.rfft(ext).real[: n + 1] / n
    c[0] *= 0.5
    c[-1] *= 0.5
    return c


def cheb_fit(f, interval, n):
    """Interpolate ``f`` at the n+1 Chebyshev points of ``interval``.

    ``f`` may be scalar or vectorized. Non-finite samples raise with the
    offending node reported.
    """
    lo, hi = interval
    xs = cheb_points(n, lo, hi)
    try:
        vals = np.asarray(f(xs), dtype=float)
        if vals.shape != xs.shape:
            raise TypeError
    except TypeError:
        vals = np.array([float(f(x)) for x in xs])
    bad = ~np.isfinite(vals)
    if bad.any():
        raise ValueError(
            "non-finite sample in cheb_fit at x=%r" % xs[bad][0])
    # transform expects samples ordered by descending node (cos(pi j / n))
    return ChebSeries(coeffs=_values_to_coeffs(vals[::-1]),
                      interval=(float(lo), float(hi)))


def cheb_fit_auto(f, interval, n=512, tol=1e-12, n_max=4096):
    """cheb_fit with doubling of n until the coefficient tail drops below
    ``tol`` relative to the largest coefficient."""
    while True:
        series = cheb_fit(f, interval, n)
        c = np.abs(series.coeffs)
        scale = c.max()
        if scale == 0.0 or c[-3:].max() <= tol * scale or n >= n_max:
            return series
        n *= 2


def cheb_eval(series, x):
    """Evaluate the interpolant at x (scalar or array) by Clenshaw's rule."""
    lo, hi = series.interval
    t = (2.0 * np.asarray(x, dtype=float) - lo - hi) / (hi - lo)
    c = series.coeffs
    b1 = np.zeros_like(t)
    b2 = np.zeros_like(t)
    for k in range(len(c) - 1, 0, -1):
        b1, b2 = 2.0 * t * b1 - b2 + c[k], b1
    out = t * b1 - b2 + c[0]
    return float(out) if np.ndim(x) == 0 else out


def cheb_derivative(series):
    """Exact derivative of the interpolant, as a new ChebSeries."""
    lo, hi = series.interval
    c = series.coeffs
    n = len(c) - 1
    d = np.zeros(max(n, 1))
    for k in range(n, 0, -1):
        if k + 1 < len(d):
            d[k - 1] = d[k + 1] + 2.0 * k * c[k]
        else:
            d[k - 1] = 2.0 * k * c[k]
    d[0] *= 0.5
    return ChebSeries(coeffs=d * (2.0 / (hi - lo)), interval=series.interval)


def cheb_integral(series):
    """Exact integral of the interpolant over its interval."""
    lo, hi = series.interval
    c = series.coeffs
    k = np.arange(0, len(c), 2)
    return float((hi - lo) * np.sum(c[::2] / (1.0 - k * k)))

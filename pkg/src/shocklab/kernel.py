"""Extended kernel of the shock limit process and reference kernels.

The two-time kernel K_a(u1, xi1; u2, xi2) is evaluated through its Airy
representation: a heat-kernel term ("diff", present only for u2 > u1) plus
four semi-infinite integrals of products of Airy functions with exponential
weights ("vanishing", "div1", "divstrong", "div2"),

    +- Integral_0^inf Ai(xi1 + u1a^2 +- lam) Ai(xi2 + u2a^2 +- lam) e^{kappa lam} dlam,

where u_ia = u_i + a and kappa is a term-dependent linear combination of
a, u1, u2.  At a = 0 the representation collapses: "vanishing" cancels
"divstrong" exactly and "div1" + "div2" fuse into the Airy convolution
2^{-1/3} Ai(2^{-1/3}(xi1 + xi2)), which is the flat-initial-data kernel.
For a > 0 the "divstrong" integral grows like e^{4a^3/3 - 2a(xi1+xi2)}
while the other terms stay of order one near the diagonal; that spread is
the fundamental conditioning limit of double-precision evaluation at large
a.  Two of the integrals ("div1", "div2") carry exponentially growing
weights; whenever the growth makes direct quadrature ill-conditioned they
are exchanged, via the identity

    Integral_R Ai(A - lam) Ai(B + lam) e^{kappa lam} dlam
        = 2^{-1/3} Ai(2^{-1/3}(A + B) - 2^{-4/3} kappa^2) e^{-kappa (B - A)/2},

for a closed-form Airy term minus a complementary integral with a
*decaying* weight.  All quadrature is performed on scaled integrands
(factors of the form Ai(c + lam) e^{rho lam} are normalized by their
log-envelope), so no intermediate quantity overflows; exponents are
reassembled only at the end.

For matrix assembly (Fredholm discretization) the kernel is conjugated by
exp(-(2/3) u_ka^3 - (u_ka + gamma) xi) per time slice -- a similarity
transform that leaves every determinant invariant while keeping matrix
entries of order one; gamma is a free balancing parameter chosen per
problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import airy_ai, airy_ai_scaled, gauss_legendre

__all__ = [
    "A_MAX_DEFAULT",
    "RELIABILITY_THRESHOLD",
    "KaParams",
    "TermDiagnostics",
    "ReliabilityError",
    "NumericalError",
    "ka_extended",
    "ka_terms",
    "ka_tilde",
    "ka_outer",
    "ka_tilde_outer",
    "exchange_truncation",
    "tilde_truncation",
    "airy2_kernel",
    "div1_alternative",
    "sigma_alpha",
    "shock_reference_cdf",
    "term_diagnostics",
    "balance_gamma",
    "balance_block_shifts",
]

A_MAX_DEFAULT = 3.0
#: Condition ratio below which double precision cannot resolve the bounded
#: terms next to the diverging one (a few machine epsilons).
RELIABILITY_THRESHOLD = 1e-15

_CBRT2 = 2.0 ** (1.0 / 3.0)
_CBRT2_LD = np.cbrt(np.longdouble(2))
_PI_LD = np.arccos(np.longdouble(-1))
#: 2/3 in extended precision: the Airy log-envelopes below multiply it by
#: arguments ~50, so the double-precision rounding of the constant alone
#: (5.6e-17 relative) would dominate the extended-precision error budget.
_TWO_THIRDS_LD = np.longdouble(2) / 3


def _two_thirds(dtype):
    return _TWO_THIRDS_LD if np.dtype(dtype) == np.longdouble else 2.0 / 3.0
_LAMBDA_PANEL_NODES = 20
_LAMBDA_MAX = 400.0
_ENVELOPE_DROP = 55.0          # e^-55 ~ 1e-24: integrand tail negligible
_DIRECT_ROUTE_CAP = 6.0        # max tolerated log-envelope of a growing factor

# location and value of the global maximum of Ai (cross-checked in tests)
_AI_ARGMAX = -1.0187929716474710890
_AI_MAX = 0.5356566560156999098


class ReliabilityError(ValueError):
    """Parameters outside the region where double precision is trustworthy."""


class NumericalError(RuntimeError):
    """Quadrature or linear algebra failed to reach its tolerance."""


@dataclass(frozen=True)
class KaParams:
    """Parameters of the extended kernel: shock strength a and the two
    process times u1, u2 (xi arguments are passed per evaluation)."""

    a: float
    u1: float
    u2: float
    a_max: float = A_MAX_DEFAULT

    def __post_init__(self):
        vals = (self.a, self.u1, self.u2, self.a_max)
        if not all(np.isfinite(v) for v in vals):
            raise ValueError("KaParams fields must be finite")
        if abs(self.a) > self.a_max:
            raise ReliabilityError(
                "|a|=%g exceeds a_max=%g: beyond it the diverging kernel term "
                "swamps double precision (raise a_max explicitly to override)"
                % (abs(self.a), self.a_max))


@dataclass(frozen=True)
class TermDiagnostics:
    """Leading sizes of the three divergence-prone terms at u1=u2=0, the
    error bounds of their closed-form approximations, and the conditioning
    ratio bounded-magnitude / divergent-magnitude.

    ``condition_ratio`` is clamped to 1 from above (for small a the
    'divergent' term is not yet dominant and the raw ratio exceeds 1, where
    conditioning is a non-issue)."""

    divstrong_leading: float
    div1_leading: float
    div2_leading: float
    eps0_bound: float
    eps12_bounds: tuple[float, float]
    vanishing_bound: float
    condition_ratio: float


# ----------------------------------------------------------------------
# scaled semi-infinite quadrature
# ----------------------------------------------------------------------


def _lambda_rule(cutoff, refine, dtype=float):
    """Composite Gauss-Legendre rule on [0, cutoff], unit panels."""
    n_panels = max(1, int(math.ceil(cutoff)))
    base = gauss_legendre(_LAMBDA_PANEL_NODES * refine, 0.0, 1.0, dtype=dtype)
    lam = (base.nodes[None, :] + np.arange(n_panels)[:, None]).ravel()
    w = np.tile(base.weights, n_panels)
    return lam, w


def _decay_envelope(offset, eps, rho, lam):
    """Log-envelope of Ai(offset + eps*lam) e^{rho lam} as an array over lam."""
    arg = offset + eps * lam
    return rho * lam - _two_thirds(np.asarray(arg).dtype) * np.maximum(
        arg, 0.0) ** 1.5


def _term_cutoff(kappa, eps1, eps2, a_min, b_min):
    """Smallest lambda beyond which the integrand envelope has dropped
    _ENVELOPE_DROP below its peak (and keeps falling)."""
    kappa, a_min, b_min = float(kappa), float(a_min), float(b_min)
    grid = np.linspace(0.0, _LAMBDA_MAX, 2001)
    env = np.zeros_like(grid)
    if eps1 > 0:
        env += -(2.0 / 3.0) * np.maximum(a_min + grid, 0.0) ** 1.5
    if eps2 > 0:
        env += -(2.0 / 3.0) * np.maximum(b_min + grid, 0.0) ** 1.5
    env += kappa * grid
    target = env.max() - _ENVELOPE_DROP
    below = np.nonzero(env <= target)[0]
    peak = int(env.argmax())
    past = below[below > peak]
    if len(past) == 0:
        raise NumericalError(
            "integrand support exceeds lambda=%g (kappa=%g)"
            % (_LAMBDA_MAX, kappa))
    return max(4.0, float(grid[past[0]]))


def _scaled_factor(offsets, eps, rho, lam):
    """Factor matrix F[i,m] = Ai(offsets_i + eps lam_m) e^{rho lam_m - q_i},
    with q_i the per-row envelope maximum; entries are O(1)."""
    arg = offsets[:, None] + eps * lam[None, :]
    env = rho * lam[None, :] - _two_thirds(arg.dtype) * np.maximum(
        arg, 0.0) ** 1.5
    q = env.max(axis=1)
    return airy_ai_scaled(arg) * np.exp(env - q[:, None]), q


def _integral_term(eps1, eps2, kappa, avec, bvec, refine):
    """The matrix Integral_0^inf Ai(A_i+eps1 lam)Ai(B_j+eps2 lam)e^{kappa lam},
    returned as (core, q1, q2) with value[i,j] = core[i,j] e^{q1_i + q2_j}."""
    n_plus = (eps1 > 0) + (eps2 > 0)
    rho1 = kappa * (eps1 > 0) / n_plus
    rho2 = kappa * (eps2 > 0) / n_plus
    cutoff = _term_cutoff(kappa, eps1, eps2, avec.min(), bvec.min())
    lam, w = _lambda_rule(cutoff, refine, dtype=avec.dtype)
    f1, q1 = _scaled_factor(avec, eps1, rho1, lam)
    f2, q2 = _scaled_factor(bvec, eps2, rho2, lam)
    return (f1 * w) @ f2.T, q1, q2


def _growing_peak(kappa, offset_min):
    """Peak log-envelope of Ai(offset+lam)e^{kappa lam}; decides the route."""
    if kappa <= 0:
        return 0.0
    lam_star = max(kappa * kappa - offset_min, 0.0)
    env = kappa * lam_star
    if offset_min + lam_star > 0:
        env -= (2.0 / 3.0) * (offset_min + lam_star) ** 1.5
    return env


# ----------------------------------------------------------------------
# term plan and outer assembly
# ----------------------------------------------------------------------


def _term_plan(a, u1, u2, a_min, b_min):
    """List of (name, route, sign, eps1, eps2, kappa) with route 'int' or a
    closed-form tag; div1/div2 are exchanged when the direct integrand's
    growing factor would peak too high for stable quadrature."""
    k1 = 2.0 * a + u1 + u2
    k2 = 2.0 * a - u1 - u2
    plan = [
        ("vanishing", "int", +1.0, +1, +1, u2 - u1),
        ("divstrong", "int", -1.0, +1, +1, 4.0 * a + u2 - u1),
    ]
    if _growing_peak(k1, b_min) <= _DIRECT_ROUTE_CAP:
        plan.append(("div1", "int", +1.0, -1, +1, k1))
    else:
        plan.append(("div1", "closed1", +1.0, 0, 0, k1))
        plan.append(("div1", "int", -1.0, +1, -1, -k1))
    if _growing_peak(k2, a_min) <= _DIRECT_ROUTE_CAP:
        plan.append(("div2", "int", +1.0, +1, -1, k2))
    else:
        plan.append(("div2", "closed2", +1.0, 0, 0, k2))
        plan.append(("div2", "int", -1.0, -1, +1, -k2))
    return plan


def _closed_exchange(tag, a, u1, u2, kappa, xi1, xi2, avec, bvec):
    """Closed-form Airy part of the exchanged div1/div2 term, split as
    (core, exponent): value = core * e^{exponent}, entries O(1)."""
    cbrt2 = _CBRT2_LD if avec.dtype == np.longdouble else _CBRT2
    if tag == "closed1":
        shift = (u1 - u2) ** 2 / (2 * cbrt2)
        pref = -0.5 * kappa * (bvec[None, :] - avec[:, None])
    else:
        shift = ((u1 - u2) ** 2 + 8.0 * a * (u1 + u2)) / (2 * cbrt2)
        pref = 0.5 * kappa * (bvec[None, :] - avec[:, None])
    arg = (xi1[:, None] + xi2[None, :]) / cbrt2 + shift
    core = airy_ai_scaled(arg) / cbrt2
    expo = pref - _two_thirds(arg.dtype) * np.maximum(arg, 0.0) ** 1.5
    return core, expo


def ka_outer(a, u1, u2, xi1, xi2, *, conj=None, refine=1, dtype=None):
    """Kernel values on the grid xi1 x xi2 as an (n1, n2) matrix.

    ``conj=None`` gives the plain kernel (the heat term carries its
    exponential prefactor, as in the defining representation); otherwise
    ``conj`` is the balancing parameter gamma of the per-slice similarity
    transform exp(-(2/3)u_ka^3 - (u_ka+gamma) xi), under which all
    determinants are unchanged but entries stay of order one.

    ``dtype=numpy.longdouble`` performs the whole assembly (grids, weights,
    exponents, Airy factors) in extended precision; entry-formation rounding
    is what limits the near-singular determinants downstream, so the extra
    bits translate directly into determinant accuracy.  ``dtype=None``
    infers the working precision from the xi arrays.
    """
    if dtype is None:
        dtype = np.result_type(np.asarray(xi1), np.asarray(xi2), float)
    wd = np.dtype(dtype).type
    a, u1, u2 = wd(a), wd(u1), wd(u2)
    xi1 = np.atleast_1d(np.asarray(xi1, dtype=dtype))
    xi2 = np.atleast_1d(np.asarray(xi2, dtype=dtype))
    u1a, u2a = u1 + a, u2 + a
    avec = xi1 + u1a * u1a
    bvec = xi2 + u2a * u2a
    if conj is None:
        cc = wd(0)
        b1 = b2 = wd(0)
    else:
        cc = -(wd(2) / 3) * (u1a ** 3 - u2a ** 3)
        b1, b2 = -(u1a + wd(conj)), -(u2a + wd(conj))
    base = cc + b1 * xi1[:, None] - b2 * xi2[None, :]

    out = np.zeros((len(xi1), len(xi2)), dtype=dtype)
    for _name, route, sign, e1, e2, kap in _term_plan(
            a, u1, u2, avec.min(), bvec.min()):
        if route == "int":
            core, q1, q2 = _integral_term(e1, e2, kap, avec, bvec, refine)
            out += sign * core * np.exp(q1[:, None] + q2[None, :] + base)
        else:
            core, expo = _closed_exchange(route, a, u1, u2, kap,
                                          xi1, xi2, avec, bvec)
            out += sign * core * np.exp(expo + base)
    if u2 > u1:
        d = xi2[None, :] - xi1[:, None]
        du = u2 - u1
        expo = (-(d * d) / (4.0 * du) + base
                + (wd(2) / 3) * (u1a ** 3 - u2a ** 3)
                + u1a * xi1[:, None] - u2a * xi2[None, :])
        pi = _PI_LD if out.dtype == np.longdouble else np.pi
        out -= np.exp(expo) / np.sqrt(4.0 * pi * du)
    return out


def ka_extended(p, xi1, xi2, *, refine=1):
    """Kernel value K_a(u1, xi1; u2, xi2) as a float.

    Each semi-infinite integral is evaluated to absolute accuracy ~1e-10
    or better (doubling the quadrature via ``refine=2`` provides an
    a-posteriori error estimate).
    """
    if not (np.isfinite(xi1) and np.isfinite(xi2)):
        raise ValueError("xi arguments must be finite")
    return float(ka_outer(p.a, p.u1, p.u2, [xi1], [xi2],
                          refine=refine)[0, 0])


def ka_terms(p, xi1, xi2, *, refine=1):
    """The individual representation terms at (xi1, xi2), as a dict with
    keys 'diff', 'vanishing', 'div1', 'divstrong', 'div2' (div1/div2 by
    whichever route ka_extended itself would take)."""
    a, u1, u2 = p.a, p.u1, p.u2
    u1a, u2a = u1 + a, u2 + a
    av = np.array([xi1 + u1a * u1a])
    bv = np.array([xi2 + u2a * u2a])
    x1 = np.array([float(xi1)])
    x2 = np.array([float(xi2)])
    vals = {"diff": 0.0, "vanishing": 0.0, "div1": 0.0,
            "divstrong": 0.0, "div2": 0.0}
    for name, route, sign, e1, e2, kap in _term_plan(
            a, u1, u2, av[0], bv[0]):
        if route == "int":
            core, q1, q2 = _integral_term(e1, e2, kap, av, bv, refine)
            vals[name] += float(sign * core[0, 0]
                                * np.exp(q1[0] + q2[0]))
        else:
            core, expo = _closed_exchange(route, a, u1, u2, kap,
                                          x1, x2, av, bv)
            vals[name] += float(sign * core[0, 0]
                                * np.exp(expo[0, 0]))
    if u2 > u1:
        du = u2 - u1
        expo = ((2.0 / 3.0) * (u1a ** 3 - u2a ** 3) + u1a * xi1 - u2a * xi2
                - (xi2 - xi1) ** 2 / (4.0 * du))
        vals["diff"] = -math.exp(expo) / math.sqrt(4.0 * math.pi * du)
    return vals


def ka_tilde(a, xi1, xi2, *, refine=1):
    """One-point kernel 2^{1/3} K_a(0, 2^{1/3} xi1; 0, 2^{1/3} xi2); at a=0
    it reduces to Ai(xi1 + xi2)."""
    p = KaParams(a=a, u1=0.0, u2=0.0)
    return _CBRT2 * ka_extended(p, _CBRT2 * xi1, _CBRT2 * xi2, refine=refine)


def ka_tilde_outer(a, xs, ys, *, refine=1, dtype=None):
    """Vectorized one-point kernel on the grid xs x ys (plain form; the
    exchange lobes stay bounded by their Airy factors, which keeps the
    Fredholm discretization well-scaled on wide domains).  The working
    precision follows ``dtype`` (or the dtype of the grids when None)."""
    KaParams(a=a, u1=0.0, u2=0.0)  # validate a
    if dtype is None:
        dtype = np.result_type(np.asarray(xs), np.asarray(ys), float)
    cbrt2 = _CBRT2_LD if np.dtype(dtype) == np.longdouble else _CBRT2
    return cbrt2 * ka_outer(a, 0.0, 0.0, cbrt2 * np.asarray(xs, dtype),
                            cbrt2 * np.asarray(ys, dtype),
                            conj=None, refine=refine, dtype=dtype)


def exchange_truncation(a, cutoff, *, log_floor=-34.0):
    """Restriction-interval length T for the extended kernel at equal
    times, cut off below at ``cutoff``.

    The slowest-decaying structure on the domain square is the exchange
    lobe Ai(2^{-1/3}(x1+x2)) e^{|a| |x1-x2|}, whose envelope along the far
    edge h(T) = |a| T - (2/3) 2^{-1/2} (2 cutoff + T)^{3/2} keeps *rising*
    until x1+x2 = 2a^2 and only then decays; T is chosen past that ridge
    with h(T) <= log_floor, so every neglected entry is below
    e^{log_floor} in absolute value.  Always at least the generic cutoff
    max(10, 14 - cutoff) used for rapidly decaying kernels."""
    c = float(cutoff)
    if not np.isfinite(c):
        raise ValueError("cutoff must be finite")
    aa = abs(float(a))
    base = max(10.0, 14.0 - c)

    def h(t):
        r = 2.0 * c + t
        val = aa * t
        if r > 0.0:
            val -= (2.0 / 3.0) * (0.5 ** 0.5) * r ** 1.5
        return val

    lo = max(base, 2.0 * aa * aa - 2.0 * c)
    if h(lo) <= log_floor:
        return lo
    hi = lo + 8.0
    while h(hi) > log_floor:
        hi += 8.0
        if hi > 4000.0:
            raise NumericalError("exchange lobe does not close (a=%g)" % a)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if h(mid) > log_floor:
            lo = mid
        else:
            hi = mid
    return hi


def tilde_truncation(a, s, *, log_floor=-34.0):
    """Like :func:`exchange_truncation`, in the coordinates of
    :func:`ka_tilde` (arguments scaled by 2^{1/3})."""
    return exchange_truncation(a, _CBRT2 * s, log_floor=log_floor) / _CBRT2


# ----------------------------------------------------------------------
# reference kernels and closed forms
# ----------------------------------------------------------------------


def airy2_kernel(x, y):
    """The Airy kernel Integral_0^inf Ai(x+lam) Ai(y+lam) dlam, via its
    closed form (Ai(x)Ai'(y) - Ai'(x)Ai(y))/(x - y) with the diagonal limit
    Ai'(x)^2 - x Ai(x)^2.  Vectorized; used as a Fredholm benchmark."""
    from .specfun import airy_ai_prime
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValueError("airy2_kernel requires finite inputs")
    x, y = np.broadcast_arrays(x, y)
    ax, ay = airy_ai(x), airy_ai(y)
    axp, ayp = airy_ai_prime(x), airy_ai_prime(y)
    diag = np.abs(x - y) < 1e-7
    denom = np.where(diag, 1.0, x - y)
    off = (ax * ayp - axp * ay) / denom
    mid = 0.5 * (x + y)
    am, amp = airy_ai(mid), airy_ai_prime(mid)
    on = amp * amp - mid * am * am
    out = np.where(diag, on, off)
    return float(out) if out.ndim == 0 else out


def div1_alternative(p, xi1, xi2, *, refine=1):
    """The div1 term by the exchange representation (closed-form Airy part
    minus the complementary integral over the negative half-line); agrees
    with the direct route for all parameters."""
    a, u1, u2 = p.a, p.u1, p.u2
    u1a, u2a = u1 + a, u2 + a
    av = np.array([xi1 + u1a * u1a])
    bv = np.array([xi2 + u2a * u2a])
    k1 = 2.0 * a + u1 + u2
    core, expo = _closed_exchange("closed1", a, u1, u2, k1,
                                  np.array([float(xi1)]),
                                  np.array([float(xi2)]), av, bv)
    closed = float(core[0, 0] * np.exp(expo[0, 0]))
    comp, q1, q2 = _integral_term(+1, -1, -k1, av, bv, refine)
    return closed - float(comp[0, 0] * np.exp(q1[0] + q2[0]))


def sigma_alpha(alpha):
    """Scale factor sigma_alpha = alpha^{1/3}(2-2alpha+alpha^2)^{1/3}/(2-alpha)^{2/3}
    of the product form of the shock CDF; sigma_1 = 1."""
    if not (0.0 < alpha <= 1.0):
        raise ValueError("alpha must lie in (0, 1]")
    return (alpha * (2.0 - 2.0 * alpha + alpha * alpha)) ** (1.0 / 3.0) \
        / (2.0 - alpha) ** (2.0 / 3.0)


def shock_reference_cdf(alpha, s):
    """Product reference law F1(2s) * F1(2s sigma_alpha) for the shock
    fluctuation at density mismatch alpha in (0, 1)."""
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1) for the reference CDF")
    from .dist import f1_cdf
    return f1_cdf(2.0 * s) * f1_cdf(2.0 * s * sigma_alpha(alpha))


# ----------------------------------------------------------------------
# divergence diagnostics
# ----------------------------------------------------------------------


def _ai_tail_max(c):
    """max over lam >= 0 of Ai(lam + c)."""
    if c <= _AI_ARGMAX:
        return _AI_MAX
    return float(airy_ai(c))


def _ai_tail_integral(c):
    """Integral_0^inf Ai(lam + c) dlam."""
    lam, w = _lambda_rule(max(8.0, 8.0 - c) + 40.0, 1)
    return float(np.dot(w, airy_ai(c + lam)))


def term_diagnostics(a, xi1, xi2):
    """Size estimates of the three delicate one-point terms at shock
    strength a > 0, per the large-a asymptotics of each term, plus the
    conditioning ratio used to decide whether double precision suffices."""
    if not a > 0:
        raise ValueError("diagnostics require a > 0")
    d = xi2 - xi1
    divstrong = math.exp((4.0 / 3.0) * a ** 3 - 2.0 * a * (xi1 + xi2)
                         - d * d / (16.0 * a)
                         - math.log(4.0 * math.sqrt(math.pi * a)))
    airy_part = 2.0 ** (-1.0 / 3.0) * airy_ai(2.0 ** (-1.0 / 3.0)
                                              * (xi1 + xi2))
    div1 = airy_part * math.exp(-a * d)
    div2 = airy_part * math.exp(a * d)
    eps1 = _ai_tail_max(xi1 + a * a) / a
    eps2 = _ai_tail_max(xi2 + a * a) / a
    vanishing = min(
        _ai_tail_integral(xi2 + a * a) * _ai_tail_max(xi1 + a * a),
        _ai_tail_integral(xi1 + a * a) * _ai_tail_max(xi2 + a * a))
    ratio = max(abs(div1), abs(div2), abs(vanishing)) / divstrong
    return TermDiagnostics(
        divstrong_leading=divstrong,
        div1_leading=div1,
        div2_leading=div2,
        eps0_bound=1.0 / (4.0 * a),
        eps12_bounds=(eps1, eps2),
        vanishing_bound=vanishing,
        condition_ratio=min(1.0, ratio),
    )


# ----------------------------------------------------------------------
# exponent balancing for block assembly
# ----------------------------------------------------------------------


def _envelope_peak_per_offset(offsets, eps, rho):
    """max over lam >= 0 of [rho lam - (2/3) max(offset + eps lam, 0)^{3/2}],
    per offset.  For eps=-1 the factor is oscillatory-bounded, so the
    log-envelope is 0; for eps=+1 the concave objective peaks at
    lam = max(rho^2 - offset, 0) when rho > 0 and at lam = 0 otherwise,
    which keeps the Airy decay of large positive offsets in the score."""
    if eps < 0:
        return np.zeros_like(offsets)
    lam_star = np.zeros_like(offsets)
    if rho > 0:
        lam_star = np.maximum(rho * rho - offsets, 0.0)
    return rho * lam_star - (2.0 / 3.0) * np.maximum(
        offsets + lam_star, 0.0) ** 1.5


def _block_log_envelope(a, gamma, uk, xk, ul, xl):
    """Upper envelope of log|entries| of block (uk, ul) under conjugation
    gamma (Airy prefactors dropped)."""
    uka, ula = uk + a, ul + a
    ck, cl = -(2.0 / 3.0) * uka ** 3, -(2.0 / 3.0) * ula ** 3
    bk, bl = -(uka + gamma), -(ula + gamma)
    av = xk + uka * uka
    bv = xl + ula * ula
    worst = -np.inf
    for _n, route, _s, e1, e2, kap in _term_plan(
            a, uk, ul, av.min(), bv.min()):
        if route == "int":
            n_plus = (e1 > 0) + (e2 > 0)
            q1 = _envelope_peak_per_offset(av, e1, kap * (e1 > 0) / n_plus)
            q2 = _envelope_peak_per_offset(bv, e2, kap * (e2 > 0) / n_plus)
            e = ((q1 + bk * xk).max()
                 + (q2 - bl * xl).max() + ck - cl)
        else:
            _core, expo = _closed_exchange(route, a, uk, ul, kap,
                                           xk[::4], xl[::4],
                                           av[::4], bv[::4])
            e = (expo + ck - cl + bk * xk[::4, None]
                 - bl * xl[None, ::4]).max()
        worst = max(worst, e)
    if ul > uk:
        du = ul - uk
        d_star = float(np.clip(2.0 * gamma * du, xl.min() - xk.max(),
                               xl.max() - xk.min()))
        worst = max(worst, gamma * d_star - d_star * d_star / (4.0 * du))
    return worst


def balance_gamma(a, slices):
    """Choose the conjugation parameter gamma minimizing the worst
    log-magnitude over all blocks, measured *after* per-slice constant
    rescaling (see :func:`balance_block_shifts`): diagonal blocks count
    fully, off-diagonal pairs only through their cycle means, which is
    what survives any diagonal similarity.

    ``slices`` is a list of (u_k, nodes_k) pairs. The score is an envelope
    (Airy prefactors dropped), accurate enough to keep assembled entries
    within a few e-folds of unity.
    """
    us = [u for u, _ in slices]

    def score(gamma):
        m = len(slices)
        env = np.empty((m, m))
        for k, (uk, xk) in enumerate(slices):
            for l, (ul, xl) in enumerate(slices):
                env[k, l] = _block_log_envelope(a, gamma, uk, xk, ul, xl)
        worst = env.diagonal().max()
        for k in range(m):
            for l in range(k + 1, m):
                worst = max(worst, 0.5 * (env[k, l] + env[l, k]))
        return worst

    # The two exchange terms are neutralized (entry growth removed) at
    # gamma = 0 and gamma = -2a in this parametrization, independently of
    # the slice times, while the diffusion term prefers gamma near 0.  The
    # bracket must contain all of these as well as the slice-time scale.
    lo = min(min(us) - 2.0, -2.0 * max(a, 0.0) - 2.0, 0.0)
    hi = max(max(us) + 2.0, 2.0 * max(-a, 0.0) + 2.0, 0.0)
    grid = np.linspace(lo, hi, 17)
    vals = [score(g) for g in grid]
    i = int(np.argmin(vals))
    lo = grid[max(0, i - 1)]
    hi = grid[min(len(grid) - 1, i + 1)]
    for _ in range(24):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if score(m1) <= score(m2):
            hi = m2
        else:
            lo = m1
        if hi - lo < 0.05:
            break
    return 0.5 * (lo + hi)


def balance_block_shifts(log_scales):
    """Per-slice constants delta_k minimizing max_{k,l} of
    log_scales[k,l] + delta_k - delta_l (a diagonal similarity, so any
    determinant built from the rescaled blocks is unchanged).

    Solved by coordinate-descent sweeps of the exact one-variable update;
    converges in a handful of passes for the small m used here.
    """
    m = len(log_scales)
    delta = np.zeros(m)
    if m == 1:
        return delta
    ls = np.asarray(log_scales, dtype=float)
    for _ in range(200):
        moved = 0.0
        for k in range(m):
            out_max = max(ls[k, l] - delta[l] for l in range(m) if l != k)
            in_max = max(ls[l, k] + delta[l] for l in range(m) if l != k)
            new = 0.5 * (in_max - out_max)
            moved = max(moved, abs(new - delta[k]))
            delta[k] = new
        if moved < 1e-9:
            break
    return delta - delta.mean()

"""Last-passage percolation over a line-to-point geometry with row rates.

The growth model: i.i.d. exponential weights ``omega_{(i,j)}`` on the integer
lattice, with rate ``alpha`` on rows ``j <= 0`` and rate 1 on rows ``j >= 1``.
Passage times are maxima over up-right paths started on the antidiagonal line
``L = {(-n, n) : n in Z}``:

    L_{L -> (m, n)} = max over paths pi: L -> (m, n) of sum of weights on pi,

where the sum collects sites strictly beyond the line (the anchor diagonal
``i + j = 0`` contributes nothing); this is the convention under which the
passage-time law matches the particle system checked by ``check_identity``.
The explicit-grid utility ``lpp_time`` instead collects every admissible
site it is handed, including on-line sites -- explicit grids carry their
own boundary.  Under the critical rate choice ``alpha = 1 - 2a(2l)^{-1/3}`` and the scaled
endpoint ``m(v, l) = l - 2(v+a)(2l)^{2/3}``, the centered and scaled passage
time

    L_resc = (L_{L -> (m, l)} - [4l - 4(v+a)(2l)^{2/3}]) / (2 (2l)^{1/3})

converges to the shock-crossover marginal sampled by the distribution module;
Monte Carlo over this observable is the package's end-to-end validation of
the determinant pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

try:
    import numba as _nb

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    _HAVE_NUMBA = False


class DomainError(ValueError):
    """Raised when a requested geometry or rate is outside the model."""


# ----------------------------------------------------------------------
# configuration
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class LppConfig:
    """Monte Carlo configuration for the rescaled passage time.

    ``ell``: system size (the endpoint row); ``v``: observation coordinate;
    ``a``: shock strength, setting the slow-row rate
    ``alpha = 1 - 2a(2 ell)^{-1/3}``; ``replicates``; ``seed``.
    """

    ell: int
    v: float
    a: float
    replicates: int
    seed: int

    def __post_init__(self) -> None:
        if self.ell < 1:
            raise DomainError("ell must be a positive integer")
        if self.replicates < 1:
            raise DomainError("replicates must be positive")
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(
                "slow-row rate alpha = %g outside (0, 1]; reduce a or "
                "increase ell" % self.alpha)
        if self.m_target < 1:
            raise DomainError(
                "endpoint column m = %d < 1; reduce v + a or increase ell"
                % self.m_target)

    @property
    def alpha(self) -> float:
        return 1.0 - 2.0 * self.a * (2.0 * self.ell) ** (-1.0 / 3.0)

    @property
    def m_real(self) -> float:
        """Real-valued endpoint column before lattice rounding."""
        return self.ell - 2.0 * (self.v + self.a) * (2.0 * self.ell) ** (2.0 / 3.0)

    @property
    def m_target(self) -> int:
        return int(np.floor(self.m_real))

    @property
    def centering(self) -> float:
        """Centering constant consistent with the rounded endpoint.

        The lattice endpoint is the floor of ``m_real``; the centering is
        evaluated at the (v+a)-value that makes the endpoint formula exact,
        i.e. ``4 ell - 2 (ell - m_target)``, so that no O(1) rounding offset
        leaks into the scaled observable.
        """
        return 2.0 * self.ell + 2.0 * self.m_target

    @property
    def scale(self) -> float:
        return 2.0 * (2.0 * self.ell) ** (1.0 / 3.0)


# ----------------------------------------------------------------------
# passage time on explicit weight grids
# ----------------------------------------------------------------------


def lpp_time(weights, target, *, origin=(0, 0)) -> float:
    """Passage time from the line {i + j = 0} to ``target`` = (m, n).

    ``weights[r, c]`` is the weight of lattice site
    ``(origin[0] + c, origin[1] + r)``; sites with ``i + j < 0`` (strictly
    behind the line) contribute nothing and paths may not visit them.
    The recursion is ``L(i,j) = w(i,j) + max(L(i-1,j), L(i,j-1))`` with
    ``L = 0`` behind the line, so every admissible site of the supplied
    grid -- including sites on the line itself -- collects its weight.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 2:
        raise DomainError("weights must be a 2-d grid")
    if np.any(w < 0.0):
        raise DomainError("negative weight")
    i0, j0 = int(origin[0]), int(origin[1])
    m, n = int(target[0]), int(target[1])
    if m + n < 0:
        raise DomainError("target (%d, %d) lies behind the line" % (m, n))
    rows, cols = w.shape
    if not (i0 <= m < i0 + cols and j0 <= n < j0 + rows):
        raise DomainError("target outside the supplied weight grid")
    L = np.full((rows, cols), -np.inf)
    for r in range(rows):
        j = j0 + r
        for c in range(cols):
            i = i0 + c
            if i + j < 0:
                continue
            best = 0.0 if i + j == 0 else -np.inf
            if c > 0:
                best = max(best, L[r, c - 1])
            if r > 0:
                best = max(best, L[r - 1, c])
            if best != -np.inf:
                L[r, c] = w[r, c] + best
    out = L[n - j0, m - i0]
    if not np.isfinite(out):
        raise DomainError("target not reachable from the line")
    return float(out)


# ----------------------------------------------------------------------
# rolling-DP Monte Carlo core
# ----------------------------------------------------------------------


_U64 = 0xFFFFFFFFFFFFFFFF


def _mix_seed(seed: int, rep: int) -> int:
    """splitmix64 mix of (seed, rep), folded to 31 bits for the core RNG."""
    z = (int(seed) + 0x9E3779B97F4A7C15 * (rep + 1)) & _U64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _U64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _U64
    z = z ^ (z >> 31)
    return int(z & 0x7FFFFFFF)


if _HAVE_NUMBA:

    @_nb.njit(cache=True)
    def _dp_one(ell, m, alpha, seed31):  # pragma: no cover - jit
        """One replicate of L_{line -> (m, ell)} by an in-place rolling DP.

        Column array index c = i + ell for lattice column i in [-ell, m];
        rows run j = -m .. ell.  The anchor diagonal {i + j = 0} collects
        no weight, so the sweep writes c >= ell - j + 1 only; entries at
        or behind the line are never written and stay 0, which makes the
        boundary condition automatic.
        """
        np.random.seed(seed31)
        width = m + ell + 1
        L = np.zeros(width)
        mean_slow = 1.0 / alpha
        for j in range(-m, ell + 1):
            mean = mean_slow if j <= 0 else 1.0
            c0 = ell - j + 1
            if c0 < 1:
                c0 = 1
            for c in range(c0, width):
                w = np.random.exponential(mean)
                prev_left = L[c - 1]
                prev_down = L[c]
                L[c] = w + (prev_left if prev_left > prev_down else prev_down)
        return L[width - 1]

    @_nb.njit(parallel=True, cache=True)
    def _dp_many(ell, m, alpha, seeds):  # pragma: no cover - jit
        out = np.empty(seeds.shape[0])
        for r in _nb.prange(seeds.shape[0]):
            out[r] = _dp_one(ell, m, alpha, seeds[r])
        return out


def sample_l_resc(config: LppConfig) -> np.ndarray:
    """Monte Carlo samples of the rescaled passage time ``L_resc``.

    Weight fields are generated lazily row by row inside the DP (nothing is
    materialized); each replicate has its own counter-derived RNG stream, so
    results are bit-reproducible and independent of scheduling.
    """
    if not _HAVE_NUMBA:
        raise RuntimeError("sample_l_resc requires numba")
    seeds = np.array(
        [_mix_seed(config.seed, r) for r in range(config.replicates)],
        dtype=np.int64)
    raw = _dp_many(config.ell, config.m_target, config.alpha, seeds)
    return (raw - config.centering) / config.scale


def sample_passage_times(ell: int, m: int, alpha: float, replicates: int,
                         seed: int) -> np.ndarray:
    """Raw passage times L_{line -> (m, ell)} (no rescaling).

    Same convention as ``sample_l_resc``: the anchor diagonal collects no
    weight.
    """
    if not _HAVE_NUMBA:
        raise RuntimeError("sample_passage_times requires numba")
    if ell < 1 or m < 1:
        raise DomainError("ell and m must be >= 1")
    if not 0.0 < alpha <= 1.0:
        raise DomainError("alpha must lie in (0, 1]")
    seeds = np.array([_mix_seed(seed, r) for r in range(replicates)],
                     dtype=np.int64)
    return _dp_many(ell, m, alpha, seeds)


# ----------------------------------------------------------------------
# TASEP <-> LPP marginal identity
# ----------------------------------------------------------------------


def _jump_passage_times(m: int, n: int, alpha: float, replicates: int,
                        seed: int) -> np.ndarray:
    """Monte Carlo of the time particle ``n`` completes its ``m``-th jump.

    The completion times satisfy the corner-anchored recursion

        V(K, j) = w_{K,j} + max(V(K-1, j), V(K-1, j-1)),   V(0, .) = 0,

    where ``w_{K,j}`` is the exponential clock of particle ``j``'s
    ``K``-th jump (rate 1 for labels j >= 1, rate ``alpha`` for j <= 0):
    the K-th jump waits for the (K-1)-th jump of the same particle and,
    because the target site must be free, for the (K-1)-th jump of the
    particle ahead.  ``V(m, n)`` only depends on labels ``n-m+1 .. n``,
    so the sweep runs over that window with a zero column for the label
    below it (entries there never influence the returned value).
    """
    rng = np.random.default_rng(seed)
    v = np.zeros((replicates, m + 1))
    for _ in range(m):
        for r in range(m, 0, -1):
            label = n - m + r
            mean = 1.0 if label >= 1 else 1.0 / alpha
            w = rng.exponential(mean, size=replicates)
            v[:, r] = np.maximum(v[:, r], v[:, r - 1]) + w
    return v[:, m]


def check_identity(m: int, n: int, t: float, alpha: float, *,
                   replicates: int = 20000, seed: int = 0) -> dict:
    """Monte Carlo check of the particle/passage-time correspondence.

    The event that particle ``n`` has made at least ``m`` jumps by time
    ``t`` -- i.e. ``x_n(t) >= m - 2n`` for the initial condition
    ``x_n(0) = -2n`` -- has the same probability as ``{V(m, n) <= t}``
    for the jump-completion passage times of ``_jump_passage_times``.
    In line-anchored coordinates ``V(m, n)`` is ``L_{line -> (m-n, n)}``
    with the anchor diagonal collecting nothing, so this exercises the
    same convention the rescaled sampler relies on.  Both sides are
    estimated with independent randomness; returns the two estimates,
    their difference, and the combined binomial standard error.
    """
    from . import tasep_sim as _tasep

    if n < 1 or m < 1:
        raise DomainError("identity check needs m, n >= 1")
    if not 0.0 < alpha <= 1.0:
        raise DomainError("alpha must lie in (0, 1]")
    lpp_samples = _jump_passage_times(m, n, alpha, replicates, seed)
    p_lpp = float(np.mean(lpp_samples <= t))

    positions = _tasep.simulate_positions(
        alpha=alpha, t=t, observe=n, replicates=replicates,
        seed=seed + 0x5EED)
    p_tasep = float(np.mean(positions >= m - 2 * n))

    var = (p_lpp * (1 - p_lpp) + p_tasep * (1 - p_tasep)) / replicates
    return {
        "p_lpp": p_lpp,
        "p_tasep": p_tasep,
        "difference": p_lpp - p_tasep,
        "stderr": float(np.sqrt(var)),
    }

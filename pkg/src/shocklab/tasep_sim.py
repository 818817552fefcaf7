"""Continuous-time Monte Carlo of the two-speed exclusion process.

Particles are labeled right to left, ``x_n(t) > x_{n+1}(t)``, started from
``x_n(0) = -2n``; particle ``n`` jumps one site to the right at rate
``alpha`` for ``n <= 0`` and rate 1 for ``n > 0``, provided the target site
is empty.  The slow leading pack creates a shock; under the critical rate
``alpha = 1 - 2a(t/2)^{-1/3}`` the rescaled position

    X_t(u) = (x_{n(u,t)} - x(u,t)) / (-(t/2)^{1/3}),
    n(u,t) = floor(t/4 + (a+u)(t/2)^{2/3}),
    x(u,t) = floor(-2(a+u)(t/2)^{2/3}),

converges to the shock-crossover law computed by the distribution module.
This module provides exact finite-window simulation of the process, the
scaling maps, and the macroscopic density profiles used as sanity oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

try:
    import numba as _nb

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    _HAVE_NUMBA = False

from .lpp_sim import DomainError, _mix_seed


# ----------------------------------------------------------------------
# scaling maps
# ----------------------------------------------------------------------


def alpha_from(t: float, a: float) -> float:
    """Slow-particle rate ``alpha = 1 - 2a(t/2)^{-1/3}``; must stay positive."""
    if t <= 0:
        raise DomainError("t must be positive")
    alpha = 1.0 - 2.0 * a * (t / 2.0) ** (-1.0 / 3.0)
    if alpha <= 0.0:
        raise DomainError(
            "alpha = %g <= 0: a too large for this observation time" % alpha)
    return alpha


@dataclass(frozen=True)
class ScalingMap:
    """Deterministic lattice targets for the observation coordinate u."""

    n_of_u: int
    x_of_u: int


def scaling_map(u: float, t: float, a: float) -> ScalingMap:
    """Label and centering maps with floor semantics."""
    if t <= 0:
        raise DomainError("t must be positive")
    w = (t / 2.0) ** (2.0 / 3.0)
    n = math.floor(t / 4.0 + (a + u) * w)
    x = math.floor(-2.0 * (a + u) * w)
    if n < 1:
        raise DomainError("observed label n = %d is not a normal particle" % n)
    return ScalingMap(n_of_u=n, x_of_u=x)


# ----------------------------------------------------------------------
# configuration
# ----------------------------------------------------------------------


def _default_window(t: float) -> tuple:
    half = int(math.ceil(t / 2.0))
    return (-half, half)


@dataclass(frozen=True)
class SimConfig:
    """Monte Carlo configuration for one observation coordinate.

    ``label_window`` bounds the simulated labels [n_min, n_max]; labels in
    front of n_min are absent (their influence is tracked and offending
    replicates flagged), labels behind n_max never influence the observed
    particle, so the rear cut is exact.
    """

    t: float
    a: float
    u: float
    replicates: int
    seed: int
    label_window: tuple = None

    def __post_init__(self) -> None:
        if self.t < 0:
            raise DomainError("t must be nonnegative")
        if self.replicates < 1:
            raise DomainError("replicates must be positive")
        if self.label_window is None:
            object.__setattr__(self, "label_window",
                               _default_window(max(self.t, 1.0)))
        n_min, n_max = self.label_window
        if n_min > n_max:
            raise DomainError("label window must satisfy n_min <= n_max")
        if self.t > 0:
            alpha_from(self.t, self.a)  # validates the rate

    @property
    def alpha(self) -> float:
        return alpha_from(self.t, self.a) if self.t > 0 else 1.0

    @property
    def scaling(self) -> ScalingMap:
        return scaling_map(self.u, self.t, self.a)


@dataclass(frozen=True)
class SimResult:
    """Positions of the observed particle, one entry per kept replicate."""

    positions: np.ndarray
    flagged: int
    config: SimConfig


# ----------------------------------------------------------------------
# event-driven core
# ----------------------------------------------------------------------

if _HAVE_NUMBA:

    @_nb.njit(cache=True)
    def _run_one(n_labels, slow_upto, alpha, t_end, observe_idx,
                 seed31):  # pragma: no cover - jit
        """One replicate; returns (position of observed label, defect flag).

        Particles are indexed i = 0..n_labels-1 front to back; index i is
        slow when i <= slow_upto.  A particle is schedulable while the site
        ahead is empty (gap >= 2; index 0 is always schedulable); jumps are
        realized as a continuous-time chain over the schedulable set, which
        by memorylessness has the same law as per-particle exponential
        clocks with blocked attempts redrawn.  The defect front D tracks
        how far the influence of the missing front neighbors can have
        spread; a replicate is flagged when it reaches the observed label.
        """
        np.random.seed(seed31)
        pos = np.empty(n_labels, dtype=np.int64)
        for i in range(n_labels):
            pos[i] = -2 * i  # shifted by -2*n_min outside; relative is enough
        # active-set bookkeeping, separate slow/normal classes
        in_list = np.full(n_labels, -1, dtype=np.int64)
        slow_list = np.empty(n_labels, dtype=np.int64)
        norm_list = np.empty(n_labels, dtype=np.int64)
        n_slow = 0
        n_norm = 0
        for i in range(n_labels):
            if i <= slow_upto:
                slow_list[n_slow] = i
                in_list[i] = n_slow
                n_slow += 1
            else:
                norm_list[n_norm] = i
                in_list[i] = n_norm
                n_norm += 1
        defect = 0
        t_cur = 0.0
        while True:
            rate = alpha * n_slow + n_norm
            if rate <= 0.0:
                break
            t_cur += np.random.exponential(1.0 / rate)
            if t_cur > t_end:
                break
            # pick a schedulable particle proportionally to its rate
            r = np.random.random() * rate
            if r < alpha * n_slow:
                k = np.random.randint(0, n_slow)
                i = slow_list[k]
            else:
                k = np.random.randint(0, n_norm)
                i = norm_list[k]
            pos[i] += 1
            # the follower may become schedulable
            if i + 1 < n_labels and in_list[i + 1] < 0:
                if pos[i] - pos[i + 1] >= 2:
                    j = i + 1
                    if j <= slow_upto:
                        slow_list[n_slow] = j
                        in_list[j] = n_slow
                        n_slow += 1
                    else:
                        norm_list[n_norm] = j
                        in_list[j] = n_norm
                        n_norm += 1
            # the jumper may become blocked
            if i > 0 and pos[i - 1] - pos[i] == 1:
                k = in_list[i]
                if i <= slow_upto:
                    n_slow -= 1
                    moved = slow_list[n_slow]
                    slow_list[k] = moved
                    in_list[moved] = k
                else:
                    n_norm -= 1
                    moved = norm_list[n_norm]
                    norm_list[k] = moved
                    in_list[moved] = k
                in_list[i] = -1
            # conservative defect-front propagation from the missing
            # front boundary: influence passes only through contact
            while defect + 1 < n_labels and pos[defect] - pos[defect + 1] == 1:
                defect += 1
        # contamination requires at least one transmission event, so the
        # front particle itself (a free boundary by construction) is clean
        return pos[observe_idx], observe_idx > 0 and defect >= observe_idx

    @_nb.njit(parallel=True, cache=True)
    def _run_many(n_labels, slow_upto, alpha, t_end, observe_idx,
                  seeds):  # pragma: no cover - jit
        n = seeds.shape[0]
        out = np.empty(n, dtype=np.int64)
        flags = np.empty(n, dtype=np.bool_)
        for r in _nb.prange(n):
            p, f = _run_one(n_labels, slow_upto, alpha, t_end, observe_idx,
                            seeds[r])
            out[r] = p
            flags[r] = f
        return out, flags


def _simulate_window(alpha, t, n_min, n_max, observe, replicates, seed):
    """Positions of label ``observe`` at time t over the window [n_min, n_max]."""
    if not _HAVE_NUMBA:
        raise RuntimeError("simulation requires numba")
    if not (n_min <= observe <= n_max):
        raise DomainError("observed label outside the simulated window")
    n_labels = n_max - n_min + 1
    slow_upto = -n_min  # labels n <= 0 are slow; index i = n - n_min
    observe_idx = observe - n_min
    seeds = np.array([_mix_seed(seed, r) for r in range(replicates)],
                     dtype=np.int64)
    rel, flags = _run_many(n_labels, slow_upto, float(alpha), float(t),
                           observe_idx, seeds)
    positions = rel + (-2 * n_min)  # undo the index shift: x = -2n + jumps
    return positions, flags


def simulate(config: SimConfig) -> SimResult:
    """Monte Carlo positions ``x_{n(u,t)}(t)``, one per replicate.

    Replicates whose realization provably touched the front window
    boundary's influence cone are excluded and counted in ``flagged``.
    """
    n_min, n_max = config.label_window
    observe = config.scaling.n_of_u if config.t > 0 else max(n_min, 1)
    if config.t == 0:
        positions = np.full(config.replicates, -2 * observe, dtype=np.int64)
        return SimResult(positions=positions, flagged=0, config=config)
    positions, flags = _simulate_window(
        config.alpha, config.t, n_min, n_max, observe,
        config.replicates, config.seed)
    kept = positions[~flags]
    return SimResult(positions=kept, flagged=int(flags.sum()), config=config)


def simulate_positions(alpha: float, t: float, observe: int,
                       replicates: int, seed: int) -> np.ndarray:
    """Low-level helper: positions of label ``observe`` for a given rate.

    The label window is chosen from the information-propagation bound
    (influence crosses at most ~t labels in time t) so the estimate matches
    the infinite system to far below Monte Carlo resolution.
    """
    if not 0.0 < alpha <= 1.0:
        raise DomainError("alpha must lie in (0, 1]")
    buffer = int(math.ceil(t + 6.0 * math.sqrt(t + 1.0) + 20.0))
    n_min = min(0, observe) - buffer
    positions, flags = _simulate_window(
        alpha, t, n_min, max(observe, 1), observe, replicates, seed)
    return positions[~flags]


def rescale(positions, config: SimConfig) -> np.ndarray:
    """Exact affine map to ``X_t(u)``; note the sign flip in the scale."""
    sm = config.scaling
    scale = (config.t / 2.0) ** (1.0 / 3.0)
    return (sm.x_of_u - np.asarray(positions, dtype=float)) / scale


# ----------------------------------------------------------------------
# macroscopic density profiles
# ----------------------------------------------------------------------


def density_profile(xi: float, alpha: float) -> float:
    """Macroscopic density of normal particles at position ``xi * t``.

    For ``alpha >= 1`` a rarefaction fan; for ``alpha in [0, 1)`` a shock
    traveling at speed ``(alpha - 1)/2``.  Defined for ``xi <= alpha/2``
    (ahead of that only slow particles live).
    """
    if alpha < 0.0:
        raise DomainError("alpha must be nonnegative")
    if xi > alpha / 2.0 + 1e-12:
        raise DomainError("xi beyond the normal-particle region")
    if alpha >= 1.0:
        knee = min(1.0, alpha - 1.0)
        if xi <= 0.0:
            return 0.5
        if xi <= knee:
            return (1.0 - xi) / 2.0
        return max(0.0, 1.0 - alpha / 2.0)
    if xi <= (alpha - 1.0) / 2.0:
        return 0.5
    return 1.0 - alpha / 2.0

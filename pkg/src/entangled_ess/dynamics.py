"""Replicator dynamics for an incumbent strategy invaded by one mutant strategy.

Individuals are matched at random, so a player meets opponents drawn from the
population. Payoffs are multilinear, which means meeting random opponents pays
exactly the same as meeting the population-mean strategy. The mutant share
``x`` then follows::

    dx/dt = x (1 - x) (f_mutant(x) - f_incumbent(x))

The fitness gap is a polynomial of degree at most 2 in ``x``. Its
coefficients are recovered exactly from three population evaluations and
passed to a compiled fixed-step RK4 loop.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numba
import numpy as np

from . import closed_form as cf
from .game_model import SymmetricGame2, SymmetricGame3

DEFAULT_DT = 0.01
DEFAULT_T_MAX = 1000.0
DEFAULT_EPSILON = 0.01
BARRIER_CAP = 0.5
BARRIER_XTOL = 1e-6
NEUTRAL_TOL = 1e-9
# shares below this count as extinct; keeps the kernel out of subnormal arithmetic
EXTINCT = 1e-300


class Outcome(str, enum.Enum):
    REPELLED = "repelled"
    INVADED = "invaded"
    NEUTRAL = "neutral"


class Stability(str, enum.Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class InvasionScenario:
    incumbent: float
    mutant: float
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        for name in ("incumbent", "mutant"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v!r}")
        if abs(self.incumbent - self.mutant) <= 1e-9:
            raise ValueError("mutant must differ from the incumbent")
        if not 0.0 < self.epsilon <= 0.5:
            raise ValueError(f"epsilon must lie in (0, 0.5], got {self.epsilon!r}")


@dataclass(frozen=True)
class ReplicatorRun:
    times: np.ndarray
    mutant_share: np.ndarray
    outcome: Outcome

    @property
    def final_share(self) -> float:
        return float(self.mutant_share[-1])


def _payoff(game, b2, focal, population):
    if isinstance(game, SymmetricGame2):
        return cf.payoff2(game, b2, focal, population)
    if isinstance(game, SymmetricGame3):
        return cf.payoff3(game, b2, focal, population, population)
    raise TypeError(f"unsupported game type {type(game).__name__}")


def population_payoffs(game, b2: float, s: InvasionScenario, share: float) -> tuple[float, float]:
    """Fitness of incumbents and mutants when mutants make up ``share`` of the population."""
    if not 0.0 <= share <= 1.0:
        raise ValueError(f"share must lie in [0, 1], got {share!r}")
    mean = (1 - share) * s.incumbent + share * s.mutant
    mean = min(max(mean, 0.0), 1.0)
    return _payoff(game, b2, s.incumbent, mean), _payoff(game, b2, s.mutant, mean)


def fitness_gap_poly(game, b2: float, s: InvasionScenario) -> tuple[float, float, float]:
    """``(c0, c1, c2)`` with ``f_mutant - f_incumbent = c0 + c1 x + c2 x^2``."""

    def gap(x):
        f_inc, f_mut = population_payoffs(game, b2, s, x)
        return f_mut - f_inc

    g0, gh, g1 = gap(0.0), gap(0.5), gap(1.0)
    c2 = 2 * (g1 - 2 * gh + g0)
    c1 = g1 - g0 - c2
    return float(g0), float(c1), float(c2)


@numba.njit(inline="always")
def _rk4_step(x, c0, c1, c2, dt):
    k1 = x * (1 - x) * (c0 + x * (c1 + x * c2))
    y = x + 0.5 * dt * k1
    k2 = y * (1 - y) * (c0 + y * (c1 + y * c2))
    y = x + 0.5 * dt * k2
    k3 = y * (1 - y) * (c0 + y * (c1 + y * c2))
    y = x + dt * k3
    k4 = y * (1 - y) * (c0 + y * (c1 + y * c2))
    x = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if x < EXTINCT:
        return 0.0
    return min(x, 1.0)


@numba.njit
def _rk4_replicator(x0, c0, c1, c2, dt, n_steps):
    out = np.empty(n_steps + 1)
    out[0] = x0
    x = x0
    for i in range(n_steps):
        x = _rk4_step(x, c0, c1, c2, dt)
        out[i + 1] = x
    return out


@numba.njit
def _rk4_replicator_batch(x0, coeffs, dt, n_steps):
    """Final share and largest excursion from ``x0`` for each row of ``coeffs``.

    Independent runs advance together inside one loop, so the CPU overlaps
    them; each run sees exactly the arithmetic of ``_rk4_replicator``.
    """
    m = coeffs.shape[0]
    x = np.full(m, x0)
    excursion = np.zeros(m)
    for _ in range(n_steps):
        for j in range(m):
            xj = _rk4_step(x[j], coeffs[j, 0], coeffs[j, 1], coeffs[j, 2], dt)
            excursion[j] = max(excursion[j], abs(xj - x0))
            x[j] = xj
    return x, excursion


def _classify_run(final: float, excursion: float, x0: float) -> Outcome:
    if excursion < NEUTRAL_TOL:
        return Outcome.NEUTRAL
    # the flow is one-dimensional and autonomous, so the share moves monotonically
    return Outcome.INVADED if final > x0 else Outcome.REPELLED


def _outcome(shares: np.ndarray, x0: float) -> Outcome:
    return _classify_run(shares[-1], np.max(np.abs(shares - x0)), x0)


def _check_steps(dt, t_max) -> int:
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    if t_max < dt:
        raise ValueError("t_max must be at least dt")
    return int(round(t_max / dt))


def replicator_trajectory(
    game, b2: float, s: InvasionScenario, dt: float = DEFAULT_DT, t_max: float = DEFAULT_T_MAX
) -> ReplicatorRun:
    n_steps = _check_steps(dt, t_max)
    c0, c1, c2 = fitness_gap_poly(game, b2, s)
    shares = _rk4_replicator(s.epsilon, c0, c1, c2, dt, n_steps)
    times = np.arange(n_steps + 1) * dt
    return ReplicatorRun(times, shares, _outcome(shares, s.epsilon))


def replicator_outcomes(
    game,
    b2: float,
    incumbent: float,
    mutants,
    epsilon: float = DEFAULT_EPSILON,
    dt: float = DEFAULT_DT,
    t_max: float = DEFAULT_T_MAX,
) -> dict[float, Outcome]:
    """Outcome of :func:`replicator_trajectory` for every mutant, without storing trajectories."""
    n_steps = _check_steps(dt, t_max)
    scenarios = [InvasionScenario(incumbent, float(q), epsilon) for q in mutants]
    if not scenarios:
        return {}
    coeffs = np.array([fitness_gap_poly(game, b2, s) for s in scenarios])
    finals, excursions = _rk4_replicator_batch(float(epsilon), coeffs, dt, n_steps)
    return {
        s.mutant: _classify_run(f, e, epsilon) for s, f, e in zip(scenarios, finals, excursions)
    }


def _protected_near_zero(c: tuple[float, float, float]) -> bool:
    """Incumbent strictly ahead at every sufficiently small positive share."""
    tol = 1e-12 * (1 + max(abs(v) for v in c))
    for coef in c:
        if coef < -tol:
            return True
        if coef > tol:
            return False
    return False


def invasion_barrier(game, b2: float, incumbent: float, mutant: float, cap: float = BARRIER_CAP) -> float | None:
    """Largest share ``e <= cap`` below which the incumbent strictly out-earns the mutant.

    ``None`` when the mutant does at least as well at arbitrarily small shares.
    """
    s = InvasionScenario(incumbent, mutant)
    if not _protected_near_zero(fitness_gap_poly(game, b2, s)):
        return None

    def lead(x):
        f_inc, f_mut = population_payoffs(game, b2, s, x)
        return f_inc - f_mut

    scan = np.linspace(0.0, cap, 2001)[1:]
    lo = 0.0
    for x in scan:
        if lead(x) <= 0:
            hi = x
            break
        lo = x
    else:
        return cap
    if lo > 0 and not lead(lo) > 0:
        raise RuntimeError("barrier bracket lost its positive end")
    while hi - lo > BARRIER_XTOL:
        mid = 0.5 * (lo + hi)
        if lead(mid) > 0:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class StabilityReport:
    verdict: Stability
    witnesses: tuple[float, ...]
    outcomes: dict


def empirical_stability(
    game,
    b2: float,
    incumbent: float,
    mutant_grid,
    epsilon: float = DEFAULT_EPSILON,
    dt: float = DEFAULT_DT,
    t_max: float = DEFAULT_T_MAX,
) -> StabilityReport:
    """Release each mutant at share ``epsilon`` and watch whether it dies out.

    ``unstable`` if any mutant invades (the invaders are the witnesses),
    ``neutral`` if none invades but some neither grow nor shrink, and
    ``stable`` if all of them are pushed back.
    """
    mutants = [float(q) for q in mutant_grid if abs(float(q) - incumbent) > 1e-9]
    if not mutants:
        raise ValueError("mutant grid is empty once the incumbent is excluded")
    outcomes = replicator_outcomes(game, b2, incumbent, mutants, epsilon, dt, t_max)
    invaders = tuple(q for q, o in outcomes.items() if o is Outcome.INVADED)
    if invaders:
        return StabilityReport(Stability.UNSTABLE, invaders, outcomes)
    neutral = tuple(q for q, o in outcomes.items() if o is Outcome.NEUTRAL)
    if neutral:
        return StabilityReport(Stability.NEUTRAL, neutral, outcomes)
    return StabilityReport(Stability.STABLE, (), outcomes)

"""Symmetric Nash equilibria and their evolutionary stability.

A symmetric strategy ``p`` is an ESS when, against every single mutant ``q``:

1. ``P(p, p[, p]) > P(q, p[, p])``, or
2. condition 1 holds with equality and ``P(p, q[, p]) > P(q, q[, p])``.

Both differences have a simple structure here. Condition 1 is
``(p - q) * incentive(p)``, where the incentive is the slope ``s(p)`` for two
players and the Nash quadratic ``Q(p)`` for three. On a tie, condition 2 is
``(p - q)^2 * ratio`` with a ratio that does not depend on ``q``. That gives an
analytic verdict. A 101-point mutant grid cross-checks it and supplies the
witnesses.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import closed_form as cf
from .game_model import SymmetricGame2, SymmetricGame3

TOL = 1e-9
# Below this discriminant the two mixed roots merge into one and the margin is flat.
DISC_TOL = 1e-12
GRID = np.linspace(0.0, 1.0, 101)
GRID_EXCLUSION = 1e-6
# Grid and analytic ratios must disagree by more than this before the grid wins.
CROSS_CHECK_TOL = 1e-6


class Kind(str, enum.Enum):
    PURE0 = "pure-0"
    MIXED = "mixed"
    PURE1 = "pure-1"


class Condition1(str, enum.Enum):
    STRICT = "strict"
    TIE = "tie"
    VIOLATED = "violated"


class Condition2(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    VACUOUS = "vacuous"


class EssStatus(str, enum.Enum):
    YES = "yes"
    NO = "no"
    TIE = "degenerate-tie"


@dataclass(frozen=True)
class EssVerdict:
    condition1: Condition1
    condition2: Condition2
    is_ess: EssStatus
    witnesses: tuple[float, ...] = ()
    # analytic condition-2 ratio margin / (p - q)^2; meaningful on a condition-1 tie
    margin_ratio: float = float("nan")


@dataclass(frozen=True)
class EquilibriumCandidate:
    p: float
    kind: Kind
    is_ne: bool
    ne_strict: bool
    is_ess: EssStatus
    # min over the mutant grid of (condition-2 margin) / (p - q)^2
    margin_ratio: float
    continuum: bool = False
    verdict: EssVerdict | None = field(default=None, compare=False, repr=False)


def kind_of(p: float) -> Kind:
    if p <= TOL:
        return Kind.PURE0
    if p >= 1 - TOL:
        return Kind.PURE1
    return Kind.MIXED


def _check_game(game) -> None:
    if not isinstance(game, (SymmetricGame2, SymmetricGame3)):
        raise TypeError(f"expected SymmetricGame2 or SymmetricGame3, got {type(game).__name__}")


def incentive(game, b2: float, p: float) -> float:
    """``dP/dp`` when every opponent plays ``p``; zero at interior equilibria."""
    if isinstance(game, SymmetricGame2):
        return float(cf.ne_slope2_raw(game, b2, p))
    return float(cf.ne_quadratic3(game, b2)(p))


def tie_ratio(game, b2: float, p: float) -> float:
    """Condition-2 margin divided by ``(p - q)^2`` when condition 1 ties at ``p``."""
    if isinstance(game, SymmetricGame2):
        return game.sigma_sum
    return -cf.ne_quadratic3(game, b2).cross_slope(p)


def _condition1_diffs(game, b2, p, qs):
    return cf.symmetric_payoff_raw(game, b2, p, p) - cf.symmetric_payoff_raw(game, b2, qs, p)


def _condition2_margins(game, b2, p, qs):
    if isinstance(game, SymmetricGame2):
        return cf.payoff2_raw(game, b2, p, qs) - cf.payoff2_raw(game, b2, qs, qs)
    return cf.payoff3_raw(game, b2, p, qs, p) - cf.payoff3_raw(game, b2, qs, qs, p)


def _mutants(p: float) -> np.ndarray:
    return GRID[np.abs(GRID - p) >= GRID_EXCLUSION]


def _condition1(game, b2, p) -> Condition1:
    inc = incentive(game, b2, p)
    kind = kind_of(p)
    if kind is Kind.PURE0:
        # every mutant has q > p, so the payoff gap is -q * incentive
        signed = -inc
    elif kind is Kind.PURE1:
        signed = inc
    else:
        return Condition1.TIE if abs(inc) <= TOL else Condition1.VIOLATED
    if signed > TOL:
        return Condition1.STRICT
    if signed < -TOL:
        return Condition1.VIOLATED
    return Condition1.TIE


def grid_margin_ratio(game, b2: float, p: float) -> float:
    qs = _mutants(p)
    return float(np.min(_condition2_margins(game, b2, p, qs) / (p - qs) ** 2))


def _classify(game, b2: float, p: float) -> EssVerdict:
    _check_game(game)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"strategy must lie in [0, 1], got {p!r}")
    if not 0.0 <= b2 <= 1.0:
        raise ValueError(f"b2 must lie in [0, 1], got {b2!r}")
    qs = _mutants(p)
    ratio = tie_ratio(game, b2, p)
    c1 = _condition1(game, b2, p)
    if c1 is Condition1.STRICT:
        return EssVerdict(c1, Condition2.VACUOUS, EssStatus.YES, (), ratio)
    if c1 is Condition1.VIOLATED:
        diffs = _condition1_diffs(game, b2, p, qs)
        witnesses = tuple(float(q) for q in qs[diffs < -TOL])
        return EssVerdict(c1, Condition2.VACUOUS, EssStatus.NO, witnesses, ratio)

    grid_ratios = _condition2_margins(game, b2, p, qs) / (p - qs) ** 2
    flat = abs(ratio) <= TOL
    if isinstance(game, SymmetricGame3) and kind_of(p) is Kind.MIXED:
        flat = flat or abs(cf.discriminant3(game, b2)) <= DISC_TOL
    if flat:
        status = EssStatus.TIE
    elif ratio > 0:
        status = EssStatus.YES
        if grid_ratios.min() < -CROSS_CHECK_TOL:
            status = EssStatus.NO
    else:
        status = EssStatus.NO
    witnesses = tuple(float(q) for q in qs[grid_ratios < -TOL])
    c2 = Condition2.PASS if status is EssStatus.YES else Condition2.FAIL
    return EssVerdict(c1, c2, status, witnesses, ratio)


def classify_ess2(g: SymmetricGame2, b2: float, p: float) -> EssVerdict:
    if not isinstance(g, SymmetricGame2):
        raise TypeError("classify_ess2 needs a SymmetricGame2")
    return _classify(g, b2, p)


def classify_ess3(g: SymmetricGame3, b2: float, p: float) -> EssVerdict:
    if not isinstance(g, SymmetricGame3):
        raise TypeError("classify_ess3 needs a SymmetricGame3")
    return _classify(g, b2, p)


def classify_ess(game, b2: float, p: float) -> EssVerdict:
    return _classify(game, b2, p)


def classical_ess2(g: SymmetricGame2, p: float) -> EssVerdict:
    """Check both ESS conditions on the classical bimatrix game over a mutant grid.

    Works with explicit mixed-strategy vectors and the payoff matrix, without
    the slope formulas used by :func:`classify_ess2`.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"strategy must lie in [0, 1], got {p!r}")
    m = g.matrix()
    x = np.array([p, 1 - p])
    ys = np.union1d(GRID, [0.0, 1.0])
    ys = ys[np.abs(ys - p) >= GRID_EXCLUSION]
    pay = lambda a, b: a @ m @ b  # noqa: E731
    c1_gap, c2_gap = [], []
    for y in ys:
        yv = np.array([y, 1 - y])
        dist = abs(p - y)
        c1_gap.append((pay(x, x) - pay(yv, x)) / dist)
        c2_gap.append((pay(x, yv) - pay(yv, yv)) / dist**2)
    c1_gap, c2_gap = np.array(c1_gap), np.array(c2_gap)

    if np.all(c1_gap > TOL):
        return EssVerdict(Condition1.STRICT, Condition2.VACUOUS, EssStatus.YES)
    if np.any(c1_gap < -TOL):
        witnesses = tuple(float(y) for y in ys[c1_gap < -TOL])
        return EssVerdict(Condition1.VIOLATED, Condition2.VACUOUS, EssStatus.NO, witnesses)
    ratio = float(c2_gap.min())
    witnesses = tuple(float(y) for y in ys[c2_gap < -TOL])
    if witnesses:
        return EssVerdict(Condition1.TIE, Condition2.FAIL, EssStatus.NO, witnesses, ratio)
    if np.all(c2_gap > TOL):
        return EssVerdict(Condition1.TIE, Condition2.PASS, EssStatus.YES, (), ratio)
    return EssVerdict(Condition1.TIE, Condition2.FAIL, EssStatus.TIE, (), ratio)


def is_ne_sampled(game, b2: float, p: float) -> bool:
    return bool(np.all(_condition1_diffs(game, b2, p, GRID) >= -TOL))


def evaluate_candidate(game, b2: float, p: float, continuum: bool = False) -> EquilibriumCandidate:
    verdict = _classify(game, b2, p)
    is_ne = verdict.condition1 is not Condition1.VIOLATED and is_ne_sampled(game, b2, p)
    return EquilibriumCandidate(
        p=p,
        kind=kind_of(p),
        is_ne=is_ne,
        ne_strict=verdict.condition1 is Condition1.STRICT,
        is_ess=verdict.is_ess,
        margin_ratio=grid_margin_ratio(game, b2, p),
        continuum=continuum,
        verdict=verdict,
    )


def _mixed_roots(game, b2: float) -> tuple[list[float], bool]:
    if isinstance(game, SymmetricGame2):
        continuum = abs(game.sigma_sum) <= cf.COEF_TOL and abs(incentive(game, b2, 0.0)) <= cf.COEF_TOL
        root = cf.mixed_ne2(game, b2)
        roots = [] if root is None else [root]
    else:
        sol = cf.solve_ne3(game, b2)
        roots, continuum = list(sol.roots), sol.continuum
    return [r for r in roots if kind_of(r) is Kind.MIXED], continuum


def candidate_points(game, b2: float, include_non_ne: bool = False) -> tuple[list[float], bool]:
    """Strategies worth classifying, ordered pure-0, interior roots ascending, pure-1."""
    _check_game(game)
    roots, continuum = _mixed_roots(game, b2)
    points = []
    if include_non_ne or incentive(game, b2, 0.0) <= TOL:
        points.append(0.0)
    points.extend(roots)
    if include_non_ne or incentive(game, b2, 1.0) >= -TOL:
        points.append(1.0)
    return points, continuum


def find_symmetric_ne(game, b2: float) -> list[EquilibriumCandidate]:
    """All symmetric NE at entanglement ``b2``.

    When the Nash condition holds for every ``p`` the returned candidates carry
    ``continuum=True``; they are representatives, not the full set.
    """
    if not 0.0 <= b2 <= 1.0:
        raise ValueError(f"b2 must lie in [0, 1], got {b2!r}")
    points, continuum = candidate_points(game, b2)
    return [evaluate_candidate(game, b2, p, continuum) for p in points]


@dataclass(frozen=True)
class Transition:
    candidate: str
    b2_lo: float
    b2_hi: float
    event: str
    p_lo: float | None = None
    p_hi: float | None = None

    def __str__(self):
        return f"{self.candidate}: {self.event} in [{self.b2_lo!r}, {self.b2_hi!r}]"


def _match_roots(previous: list[float], current: list[float]) -> list[tuple[int | None, int | None]]:
    """Pair roots by nearest neighbour, closest pairs first."""
    pairs = sorted(
        ((abs(a - b), i, j) for i, a in enumerate(previous) for j, b in enumerate(current)),
    )
    used_i, used_j, matched = set(), set(), []
    for _, i, j in pairs:
        if i not in used_i and j not in used_j:
            used_i.add(i)
            used_j.add(j)
            matched.append((i, j))
    matched += [(i, None) for i in range(len(previous)) if i not in used_i]
    matched += [(None, j) for j in range(len(current)) if j not in used_j]
    return matched


def _diff_events(label, lo, hi, before: EquilibriumCandidate, after: EquilibriumCandidate):
    events = []
    if before.is_ne != after.is_ne:
        events.append(Transition(label, lo, hi, f"is_ne {before.is_ne} -> {after.is_ne}", before.p, after.p))
    if before.is_ess != after.is_ess:
        events.append(
            Transition(label, lo, hi, f"is_ess {before.is_ess.value} -> {after.is_ess.value}", before.p, after.p)
        )
    return events


def stability_transitions(game, b2_grid) -> list[Transition]:
    """Changes of NE or ESS status between adjacent points of a sorted ``b2`` grid.

    Pure strategies are tracked by kind. Interior roots are tracked by
    nearest-neighbour continuity and get ``appears``/``vanishes`` events when
    they enter or leave the interior.
    """
    grid = [float(b) for b in b2_grid]
    if not grid:
        raise ValueError("b2 grid is empty")
    if any(b < 0 or b > 1 for b in grid) or any(b > a for a, b in zip(grid[1:], grid)):
        raise ValueError("b2 grid must be sorted and within [0, 1]")

    def snapshot(b2):
        pure = {p: evaluate_candidate(game, b2, p) for p in (0.0, 1.0)}
        roots, continuum = _mixed_roots(game, b2)
        mixed = [evaluate_candidate(game, b2, r, continuum) for r in roots]
        return pure, mixed

    events: list[Transition] = []
    pure_prev, mixed_prev = snapshot(grid[0])
    track_ids = list(range(len(mixed_prev)))
    next_id = len(mixed_prev)
    for lo, hi in zip(grid, grid[1:]):
        pure_cur, mixed_cur = snapshot(hi)
        for p, label in ((0.0, Kind.PURE0.value), (1.0, Kind.PURE1.value)):
            events += _diff_events(label, lo, hi, pure_prev[p], pure_cur[p])
        new_ids: list[int | None] = [None] * len(mixed_cur)
        for i, j in _match_roots([c.p for c in mixed_prev], [c.p for c in mixed_cur]):
            if i is not None and j is not None:
                new_ids[j] = track_ids[i]
                events += _diff_events(f"mixed#{track_ids[i]}", lo, hi, mixed_prev[i], mixed_cur[j])
            elif i is not None:
                events.append(Transition(f"mixed#{track_ids[i]}", lo, hi, "vanishes", mixed_prev[i].p, None))
            else:
                new_ids[j] = next_id
                events.append(Transition(f"mixed#{next_id}", lo, hi, "appears", None, mixed_cur[j].p))
                next_id += 1
        pure_prev, mixed_prev, track_ids = pure_cur, mixed_cur, new_ids
    return events

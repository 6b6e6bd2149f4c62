"""Payoff structures for symmetric two- and three-player games.

Three-player tables use a fixed basis order shared by every module::

    |111>, |211>, |121>, |112>, |122>, |212>, |221>, |222>

where the first digit is player A's pure strategy (1 = S1, 2 = S2), the
second is B's and the third is C's.
"""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass, fields

import numpy as np

# (A, B, C) pure strategy indices for each basis position, 0 = S1 and 1 = S2.
BASIS3 = (
    (0, 0, 0),
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (0, 1, 1),
    (1, 0, 1),
    (1, 1, 0),
    (1, 1, 1),
)


class GameValidationError(ValueError):
    pass


def _require_finite(obj) -> None:
    for f in fields(obj):
        value = getattr(obj, f.name)
        if not math.isfinite(value):
            raise GameValidationError(f"{type(obj).__name__}.{f.name} must be finite, got {value!r}")


@dataclass(frozen=True)
class SymmetricGame2:
    """Two-player symmetric game.

    Row player's payoffs: ``alpha`` for (S1, S1), ``beta`` for (S1, S2),
    ``gamma`` for (S2, S1) and ``delta`` for (S2, S2).
    """

    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, float(getattr(self, f.name)))
        _require_finite(self)

    @property
    def n_players(self) -> int:
        return 2

    @property
    def sigma_sum(self) -> float:
        """(beta - delta) + (gamma - alpha); the sign decides mixed-strategy stability."""
        return (self.beta - self.delta) + (self.gamma - self.alpha)

    def matrix(self) -> np.ndarray:
        return np.array([[self.alpha, self.beta], [self.gamma, self.delta]])

    def __add__(self, other: SymmetricGame2) -> SymmetricGame2:
        return SymmetricGame2(*(x + y for x, y in zip(astuple(self), astuple(other))))


@dataclass(frozen=True)
class SymmetricGame3:
    """Three-player symmetric game given by the six independent constants.

    ``a1``: all play S1. ``a2``: focal plays S2 against two S1.
    ``a3``: focal S1 against one S1 and one S2. ``a5``: focal S1 against two S2.
    ``a6``: focal S2 against one S1 and one S2. ``a8``: all play S2.
    """

    a1: float
    a2: float
    a3: float
    a5: float
    a6: float
    a8: float

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, float(getattr(self, f.name)))
        _require_finite(self)

    @property
    def n_players(self) -> int:
        return 3

    @property
    def coefficients(self) -> Coefficients3:
        return coefficients3(self)

    def __add__(self, other: SymmetricGame3) -> SymmetricGame3:
        return SymmetricGame3(*(x + y for x, y in zip(astuple(self), astuple(other))))


@dataclass(frozen=True)
class Coefficients3:
    sigma: float
    eta: float
    omega: float


@dataclass(frozen=True)
class PayoffTable3:
    """The 24 constants of a three-player game, one 8-tuple per player in basis order."""

    alpha: tuple[float, ...]
    beta: tuple[float, ...]
    eta: tuple[float, ...]

    def __post_init__(self):
        for name in ("alpha", "beta", "eta"):
            values = tuple(float(v) for v in getattr(self, name))
            if len(values) != 8:
                raise GameValidationError(f"PayoffTable3.{name} needs 8 entries, got {len(values)}")
            if not all(math.isfinite(v) for v in values):
                raise GameValidationError(f"PayoffTable3.{name} must be finite")
            object.__setattr__(self, name, values)

    def for_player(self, player: str) -> tuple[float, ...]:
        return {"A": self.alpha, "B": self.beta, "C": self.eta}[player]


def make_game2(alpha, beta, gamma, delta) -> SymmetricGame2:
    return SymmetricGame2(alpha, beta, gamma, delta)


def make_game3(a1, a2, a3, a5, a6, a8) -> SymmetricGame3:
    return SymmetricGame3(a1, a2, a3, a5, a6, a8)


def coefficients3(g: SymmetricGame3) -> Coefficients3:
    return Coefficients3(sigma=g.a1 - g.a2, eta=g.a3 - g.a6, omega=g.a5 - g.a8)


def expand_symmetric3(g: SymmetricGame3) -> PayoffTable3:
    """Build the full 24-constant table of a symmetric three-player game.

    Player B's and C's entries are the focal-player constants permuted so that
    each payoff depends only on the strategies played, never on who plays them.
    """
    a1, a2, a3, a5, a6, a8 = g.a1, g.a2, g.a3, g.a5, g.a6, g.a8
    return PayoffTable3(
        alpha=(a1, a2, a3, a3, a5, a6, a6, a8),
        beta=(a1, a3, a2, a3, a6, a5, a6, a8),
        eta=(a1, a3, a3, a2, a6, a6, a5, a8),
    )


# Replacement rules that make a table symmetric: (player, index, alpha index), 1-based.
_REPLACEMENTS = (
    [("beta", i, j) for i, j in zip(range(1, 9), (1, 3, 2, 3, 6, 5, 6, 8))]
    + [("eta", i, j) for i, j in zip(range(1, 9), (1, 3, 3, 2, 6, 6, 5, 8))]
)


def validate_symmetry3(t: PayoffTable3, atol: float = 0.0) -> list[str]:
    """List every way ``t`` breaks player symmetry; empty when it is symmetric.

    The checks are the constant-level equivalent of requiring
    ``P_A(x,y,z) = P_A(x,z,y) = P_B(y,x,z) = P_B(z,x,y) = P_C(y,z,x) = P_C(z,y,x)``
    for every strategy triple.
    """
    violations = []
    for i, j in ((3, 4), (6, 7)):
        if abs(t.alpha[i - 1] - t.alpha[j - 1]) > atol:
            violations.append(
                f"alpha_{i} = alpha_{j} required, got {t.alpha[i - 1]!r} != {t.alpha[j - 1]!r}"
            )
    for name, i, j in _REPLACEMENTS:
        value = getattr(t, name)[i - 1]
        if abs(value - t.alpha[j - 1]) > atol:
            violations.append(f"{name}_{i} -> alpha_{j} replacement broken: {value!r} != {t.alpha[j - 1]!r}")
    return violations


def relabel2(g: SymmetricGame2) -> SymmetricGame2:
    """Swap the names of the two pure strategies."""
    return SymmetricGame2(g.delta, g.gamma, g.beta, g.alpha)


def payoff_scale(game) -> float:
    return max(1.0, *(abs(v) for v in astuple(game)))

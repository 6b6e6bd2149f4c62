"""Analytic payoffs, Nash conditions and stability margins.

For both arities the entangled payoff is a mixture of the classical game and
its fully flipped version::

    P(p, q[, r]) = (1 - b2) * P_cl(p, q[, r]) + b2 * P_cl(1-p, 1-q[, 1-r])

because flipping every qubit of ``|2...2>`` yields ``|1...1>`` and the payoff
operators are diagonal. Every function here is a polynomial in its
arguments; the ``_raw`` variants skip validation and broadcast over arrays.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .game_model import SymmetricGame2, SymmetricGame3, coefficients3

COEF_TOL = 1e-12
ROOT_TOL = 1e-9


def _check_unit(**values) -> None:
    for name, v in values.items():
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {v!r}")


# -- two players --------------------------------------------------------------


def classical_payoff2_raw(g: SymmetricGame2, p, q):
    return p * q * g.alpha + p * (1 - q) * g.beta + (1 - p) * q * g.gamma + (1 - p) * (1 - q) * g.delta


def payoff2_raw(g: SymmetricGame2, b2, p, q):
    a2 = 1 - b2
    return (
        p * q * (a2 * g.alpha + b2 * g.delta)
        + p * (1 - q) * (a2 * g.beta + b2 * g.gamma)
        + (1 - p) * q * (a2 * g.gamma + b2 * g.beta)
        + (1 - p) * (1 - q) * (a2 * g.delta + b2 * g.alpha)
    )


def payoff2(g: SymmetricGame2, b2: float, p: float, q: float) -> float:
    """Payoff to a player using the identity with probability ``p`` against one using it with ``q``."""
    _check_unit(b2=b2, p=p, q=q)
    return float(payoff2_raw(g, b2, p, q))


def ne_slope2_raw(g: SymmetricGame2, b2, q):
    return (1 - b2) * (g.beta - g.delta) + b2 * (g.gamma - g.alpha) - q * g.sigma_sum


def ne_slope2(g: SymmetricGame2, b2: float, q: float) -> float:
    """Slope ``s(q)`` with ``P(p', q) - P(p, q) = (p' - p) * s(q)``."""
    _check_unit(b2=b2, q=q)
    return float(ne_slope2_raw(g, b2, q))


def mixed_ne2(g: SymmetricGame2, b2: float) -> float | None:
    """Interior zero of the slope, or ``None`` if it is undefined or outside [0, 1]."""
    _check_unit(b2=b2)
    total = g.sigma_sum
    if abs(total) <= COEF_TOL:
        return None
    p = ((1 - b2) * (g.beta - g.delta) + b2 * (g.gamma - g.alpha)) / total
    if -ROOT_TOL <= p <= 1 + ROOT_TOL:
        return min(max(p, 0.0), 1.0)
    return None


def ess_margin2(g: SymmetricGame2, b2: float, pstar: float, q: float) -> float:
    """Condition-2 margin ``P(p*, q) - P(q, q)``."""
    return payoff2(g, b2, pstar, q) - payoff2(g, b2, q, q)


# -- three players ------------------------------------------------------------


def classical_payoff3_raw(g: SymmetricGame3, p, q, r):
    both_s1 = q * r
    one_s1 = q * (1 - r) + (1 - q) * r
    no_s1 = (1 - q) * (1 - r)
    return p * (both_s1 * g.a1 + one_s1 * g.a3 + no_s1 * g.a5) + (1 - p) * (
        both_s1 * g.a2 + one_s1 * g.a6 + no_s1 * g.a8
    )


def payoff3_raw(g: SymmetricGame3, b2, p, q, r):
    return (1 - b2) * classical_payoff3_raw(g, p, q, r) + b2 * classical_payoff3_raw(g, 1 - p, 1 - q, 1 - r)


def payoff3(g: SymmetricGame3, b2: float, p: float, q: float, r: float) -> float:
    _check_unit(b2=b2, p=p, q=q, r=r)
    return float(payoff3_raw(g, b2, p, q, r))


@dataclass(frozen=True)
class NeQuadratic:
    """``Q(p) = qa p^2 + qb p + qc``; a symmetric profile ``p`` is a NE iff ``(p - x) Q(p) >= 0`` for all ``x``."""

    qa: float
    qb: float
    qc: float

    def __call__(self, p):
        return (self.qa * p + self.qb) * p + self.qc

    def incentive(self, q, r):
        """``dP/dp`` against opponents ``q`` and ``r``; its diagonal ``q = r`` is ``Q``."""
        return self.qa * q * r + 0.5 * self.qb * (q + r) + self.qc

    def cross_slope(self, r):
        """``d incentive / dq`` at fixed ``r``."""
        return self.qa * r + 0.5 * self.qb

    @property
    def vanishes(self) -> bool:
        return max(abs(self.qa), abs(self.qb), abs(self.qc)) <= COEF_TOL


def ne_quadratic3(g: SymmetricGame3, b2: float) -> NeQuadratic:
    c = coefficients3(g)
    curv = c.sigma + c.omega - 2 * c.eta
    return NeQuadratic(
        qa=(1 - 2 * b2) * curv,
        qb=2 * (b2 * curv - c.omega + c.eta),
        qc=c.omega - b2 * (c.sigma + c.omega),
    )


def discriminant3(g: SymmetricGame3, b2: float) -> float:
    c = coefficients3(g)
    return ((c.sigma + c.omega) ** 2 - (2 * c.eta) ** 2) * b2 * (1 - b2) + (c.eta**2 - c.sigma * c.omega)


@dataclass(frozen=True)
class MixedSolution3:
    roots: tuple[float, ...]
    # True when the Nash condition holds identically, i.e. every p is a symmetric NE.
    continuum: bool = False


def _in_unit(values) -> list[float]:
    out = []
    for v in sorted(values):
        if -ROOT_TOL <= v <= 1 + ROOT_TOL:
            v = min(max(v, 0.0), 1.0)
            if not out or abs(v - out[-1]) > COEF_TOL:
                out.append(v)
    return out


def solve_ne3(g: SymmetricGame3, b2: float) -> MixedSolution3:
    """Roots of the Nash quadratic in [0, 1], with the degenerate cases resolved."""
    _check_unit(b2=b2)
    quad = ne_quadratic3(g, b2)
    qa, qb, qc = quad.qa, quad.qb, quad.qc
    if quad.vanishes:
        # Every p satisfies the Nash condition. With sigma == omega this is the
        # b2 = 1/2 point of a family whose two roots do not move with b2, so
        # report those roots as the limit members of the continuum.
        c = coefficients3(g)
        gap = c.eta - c.sigma
        if abs(c.sigma - c.omega) <= COEF_TOL and abs(gap) > COEF_TOL and c.eta**2 - c.sigma**2 >= 0:
            half_width = math.sqrt(c.eta**2 - c.sigma**2) / (2 * gap)
            return MixedSolution3(tuple(_in_unit([0.5 - half_width, 0.5 + half_width])), continuum=True)
        return MixedSolution3((), continuum=True)
    if abs(qa) <= COEF_TOL:
        if abs(qb) <= COEF_TOL:
            # nonzero constant: the incentive never changes sign
            return MixedSolution3(())
        return MixedSolution3(tuple(_in_unit([-qc / qb])))
    disc = qb * qb - 4 * qa * qc
    scale = max(qb * qb, abs(4 * qa * qc), 1.0)
    if disc < 0:
        if disc < -COEF_TOL * scale:
            return MixedSolution3(())
        disc = 0.0
    if disc == 0.0:
        # qc / t no longer pairs with t / qa once disc has been clamped
        return MixedSolution3(tuple(_in_unit([-qb / (2 * qa)])))
    t = -0.5 * (qb + math.copysign(math.sqrt(disc), qb))
    return MixedSolution3(tuple(_in_unit([t / qa, qc / t])))


def mixed_ne3(g: SymmetricGame3, b2: float) -> list[float]:
    return list(solve_ne3(g, b2).roots)


def ess_margin3(g: SymmetricGame3, b2: float, pstar: float, q: float) -> float:
    """Condition-2 margin ``P(p*, q, p*) - P(q, q, p*)``, by direct payoff evaluation."""
    return payoff3(g, b2, pstar, q, pstar) - payoff3(g, b2, q, q, pstar)


# -- arity dispatch -----------------------------------------------------------


def symmetric_payoff_raw(game, b2, focal, population):
    """Payoff to ``focal`` when every opponent plays ``population``."""
    if isinstance(game, SymmetricGame2):
        return payoff2_raw(game, b2, focal, population)
    return payoff3_raw(game, b2, focal, population, population)


def classical_payoff_enumerated(game, probs) -> float:
    """Classical payoff to player A by summing over every pure outcome.

    Independent of the polynomial forms above; used as a cross-check.
    """
    if isinstance(game, SymmetricGame2):
        m = game.matrix()
        total = 0.0
        for i, j in itertools.product((0, 1), repeat=2):
            total += (probs[0] if i == 0 else 1 - probs[0]) * (probs[1] if j == 0 else 1 - probs[1]) * m[i, j]
        return total
    lookup = {
        (0, 0, 0): game.a1, (1, 0, 0): game.a2, (0, 1, 0): game.a3, (0, 0, 1): game.a3,
        (0, 1, 1): game.a5, (1, 0, 1): game.a6, (1, 1, 0): game.a6, (1, 1, 1): game.a8,
    }  # fmt: skip
    total = 0.0
    for outcome in itertools.product((0, 1), repeat=3):
        weight = np.prod([p if s == 0 else 1 - p for p, s in zip(probs, outcome)])
        total += weight * lookup[outcome]
    return float(total)

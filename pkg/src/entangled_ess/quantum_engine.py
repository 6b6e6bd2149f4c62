"""Density-matrix evaluation of quantum games where players mix I and a flip.

Each player applies the identity with some probability and the flip operator
``C`` (``C|S1> = |S2>``, ``C|S2> = |S1>``) otherwise, acting on a shared
initial state ``sqrt(1-b2)|1...1> + sqrt(b2)|2...2>``. Payoffs are expectation
values of diagonal payoff operators in the final mixed state.

This module is deliberately literal: dense matrices, explicit enumeration of
all tactic combinations. It is the reference the closed forms are checked
against, not a fast path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .game_model import BASIS3, PayoffTable3, SymmetricGame2, SymmetricGame3, expand_symmetric3

IDENTITY = np.eye(2, dtype=complex)
FLIP = np.array([[0, 1], [1, 0]], dtype=complex)

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_FLOOR = -1e-10


class DimensionError(ValueError):
    pass


def _basis_permutation(n_players: int) -> np.ndarray:
    """Matrix taking tensor-product (kron) ordering to the module's basis order."""
    if n_players == 2:
        # |11>, |12>, |21>, |22> already coincides with kron order.
        return np.eye(4)
    perm = np.zeros((8, 8))
    for row, (a, b, c) in enumerate(BASIS3):
        perm[row, 4 * a + 2 * b + c] = 1.0
    return perm


_PERMS = {2: _basis_permutation(2), 3: _basis_permutation(3)}


@dataclass(frozen=True)
class EntanglementParam:
    """Weight ``b2 = |b|^2`` of the all-S2 component of the initial state."""

    b2: float

    def __post_init__(self):
        b2 = float(self.b2)
        if not 0.0 <= b2 <= 1.0:
            raise ValueError(f"b2 must lie in [0, 1], got {b2!r}")
        object.__setattr__(self, "b2", b2)

    @property
    def a2(self) -> float:
        return 1.0 - self.b2


@dataclass(frozen=True)
class MoveProfile:
    """Per-player probability of applying the identity (flip with the complement)."""

    probs: tuple[float, ...]

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        if len(probs) not in (2, 3):
            raise ValueError(f"move profile needs 2 or 3 players, got {len(probs)}")
        for p in probs:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"move probabilities must lie in [0, 1], got {p!r}")
        object.__setattr__(self, "probs", probs)

    @property
    def n_players(self) -> int:
        return len(self.probs)


class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite 4x4 or 8x8 matrix.

    Invariants are checked on construction; a violation raises ``ValueError``.
    """

    __slots__ = ("data",)

    def __init__(self, data, check: bool = True):
        data = np.array(data, dtype=complex)
        if data.shape not in ((4, 4), (8, 8)):
            raise DimensionError(f"density matrix must be 4x4 or 8x8, got {data.shape}")
        data.setflags(write=False)
        self.data = data
        if check:
            self.validate()

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def n_players(self) -> int:
        return 2 if self.dim == 4 else 3

    def validate(self) -> None:
        rho = self.data
        herm = np.max(np.abs(rho - rho.conj().T))
        if herm > HERMITIAN_TOL:
            raise ValueError(f"density matrix not Hermitian (max |rho - rho^H| = {herm:.3e})")
        tr = np.trace(rho)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace {tr} != 1")
        lam = np.linalg.eigvalsh(rho).min()
        if lam < PSD_FLOOR:
            raise ValueError(f"density matrix has negative eigenvalue {lam:.3e}")

    def populations(self) -> np.ndarray:
        return np.real(np.diag(self.data))

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


@dataclass(frozen=True)
class DiagonalPayoffOperator:
    diagonal: tuple[float, ...]

    def __post_init__(self):
        diagonal = tuple(float(v) for v in self.diagonal)
        if len(diagonal) not in (4, 8):
            raise DimensionError(f"payoff operator must have 4 or 8 diagonal entries, got {len(diagonal)}")
        object.__setattr__(self, "diagonal", diagonal)

    @property
    def dim(self) -> int:
        return len(self.diagonal)

    def matrix(self) -> np.ndarray:
        return np.diag(np.array(self.diagonal, dtype=complex))


def _as_param(e) -> EntanglementParam:
    return e if isinstance(e, EntanglementParam) else EntanglementParam(e)


def _as_profile(m) -> MoveProfile:
    return m if isinstance(m, MoveProfile) else MoveProfile(tuple(m))


def prepare_initial_state(e, n_players: int) -> DensityMatrix:
    """Projector onto ``sqrt(1-b2)|1...1> + sqrt(b2)|2...2>``."""
    e = _as_param(e)
    if n_players not in (2, 3):
        raise ValueError(f"n_players must be 2 or 3, got {n_players!r}")
    dim = 2**n_players
    psi = np.zeros(dim, dtype=complex)
    # all-S1 is the first basis state and all-S2 the last in either ordering
    psi[0] = np.sqrt(e.a2)
    psi[-1] = np.sqrt(e.b2)
    return DensityMatrix(np.outer(psi, psi.conj()))


def apply_move_profile(rho: DensityMatrix, m) -> DensityMatrix:
    """Mix ``(U_A x U_B [x U_C]) rho (...)^dagger`` over every choice of I or C per player."""
    m = _as_profile(m)
    if rho.dim != 2**m.n_players:
        raise DimensionError(f"{rho.dim}x{rho.dim} state does not fit a {m.n_players}-player profile")
    perm = _PERMS[m.n_players]
    out = np.zeros_like(rho.data)
    for tactics in itertools.product((0, 1), repeat=m.n_players):
        weight = 1.0
        ops = []
        for p, use_flip in zip(m.probs, tactics):
            weight *= (1.0 - p) if use_flip else p
            ops.append(FLIP if use_flip else IDENTITY)
        if weight == 0.0:
            continue
        u = perm @ reduce(np.kron, ops) @ perm.T
        out += weight * (u @ rho.data @ u.conj().T)
    return DensityMatrix(out)


def make_payoff_operator2(g: SymmetricGame2, player: str) -> DiagonalPayoffOperator:
    if player == "A":
        return DiagonalPayoffOperator((g.alpha, g.beta, g.gamma, g.delta))
    if player == "B":
        return DiagonalPayoffOperator((g.alpha, g.gamma, g.beta, g.delta))
    raise ValueError(f"two-player games have players A and B, got {player!r}")


def make_payoff_operator3(t: PayoffTable3, player: str) -> DiagonalPayoffOperator:
    if player not in ("A", "B", "C"):
        raise ValueError(f"three-player games have players A, B and C, got {player!r}")
    return DiagonalPayoffOperator(t.for_player(player))


def make_payoff_operator(game, player: str) -> DiagonalPayoffOperator:
    if isinstance(game, SymmetricGame2):
        return make_payoff_operator2(game, player)
    if isinstance(game, SymmetricGame3):
        game = expand_symmetric3(game)
    if isinstance(game, PayoffTable3):
        return make_payoff_operator3(game, player)
    raise TypeError(f"unsupported game type {type(game).__name__}")


def expected_payoff(rho: DensityMatrix, op: DiagonalPayoffOperator) -> float:
    if rho.dim != op.dim:
        raise DimensionError(f"operator of dim {op.dim} applied to state of dim {rho.dim}")
    value = np.trace(op.matrix() @ rho.data)
    if abs(value.imag) > 1e-12:
        raise ValueError(f"payoff expectation has imaginary part {value.imag:.3e}")
    return float(value.real)


def game_arity(game) -> int:
    if isinstance(game, SymmetricGame2):
        return 2
    if isinstance(game, (SymmetricGame3, PayoffTable3)):
        return 3
    raise TypeError(f"unsupported game type {type(game).__name__}")


def oracle_payoff(game, e, m, player: str = "A") -> float:
    """Payoff to ``player`` computed by building and tracing the final density matrix."""
    m = _as_profile(m)
    n = game_arity(game)
    if n != m.n_players:
        raise DimensionError(f"{n}-player game given a {m.n_players}-player profile")
    rho = apply_move_profile(prepare_initial_state(e, n), m)
    return expected_payoff(rho, make_payoff_operator(game, player))


def flip_conjugate(rho: DensityMatrix) -> DensityMatrix:
    """``rho`` conjugated by a flip on every qubit."""
    n = rho.n_players
    perm = _PERMS[n]
    u = perm @ reduce(np.kron, [FLIP] * n) @ perm.T
    return DensityMatrix(u @ rho.data @ u.conj().T)

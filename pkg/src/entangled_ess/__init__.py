"""Evolutionary stability in symmetric quantum games played on entangled states."""

from .closed_form import (
    NeQuadratic,
    discriminant3,
    ess_margin2,
    ess_margin3,
    mixed_ne2,
    mixed_ne3,
    ne_quadratic3,
    ne_slope2,
    payoff2,
    payoff3,
)
from .dynamics import (
    InvasionScenario,
    empirical_stability,
    invasion_barrier,
    population_payoffs,
    replicator_outcomes,
    replicator_trajectory,
)
from .equilibrium import (
    EssStatus,
    classical_ess2,
    classify_ess,
    classify_ess2,
    classify_ess3,
    find_symmetric_ne,
    stability_transitions,
)
from .game_model import (
    PayoffTable3,
    SymmetricGame2,
    SymmetricGame3,
    coefficients3,
    expand_symmetric3,
    make_game2,
    make_game3,
    relabel2,
    validate_symmetry3,
)
from .quantum_engine import (
    DensityMatrix,
    EntanglementParam,
    MoveProfile,
    apply_move_profile,
    expected_payoff,
    oracle_payoff,
    prepare_initial_state,
)

__version__ = "0.1.0"

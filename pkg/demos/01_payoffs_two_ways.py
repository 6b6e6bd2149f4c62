"""Build the final density matrix for one play of a three-player game and read off payoffs.

The same numbers come out of the closed-form polynomial, which is what the
rest of the package uses.
"""

import numpy as np

from entangled_ess import SymmetricGame3, payoff3
from entangled_ess.quantum_engine import apply_move_profile, oracle_payoff, prepare_initial_state

game = SymmetricGame3(0, 1, 2, 0, 0, 1)
b2 = 0.3
profile = (0.9, 0.2, 0.6)

rho = apply_move_profile(prepare_initial_state(b2, 3), profile)
print("populations of the 8 basis states after the moves:")
print(np.round(rho.populations(), 4))

for player, (p, q, r) in zip("ABC", [profile, (0.2, 0.9, 0.6), (0.6, 0.9, 0.2)]):
    dense = oracle_payoff(game, b2, profile, player)
    closed = payoff3(game, b2, p, q, r)
    print(f"player {player}: density matrix {dense:.12f}   closed form {closed:.12f}")

print("\nat b2 = 0 the entangled game is just the classical one:")
print(f"  quantum {payoff3(game, 0.0, *profile):.12f}")

"""A two-player game where entanglement turns a non-ESS NE into an ESS.

With gamma = alpha and beta < delta both pure strategies are NE for every b2.
Classically only pure 0 resists mutants; any entanglement makes pure 1 an ESS
too, and full entanglement takes the status away from pure 0.
"""

import numpy as np

from entangled_ess import SymmetricGame2, classify_ess2, stability_transitions

game = SymmetricGame2(alpha=1, beta=0, gamma=1, delta=1)

print(" b2    pure-0    pure-1")
for b2 in (0.0, 0.01, 0.5, 0.99, 1.0):
    verdicts = [classify_ess2(game, b2, p).is_ess.value for p in (0.0, 1.0)]
    print(f"{b2:4.2f}  {verdicts[0]:8s}  {verdicts[1]:8s}")

print("\nwhere the status changes on a 101-point grid:")
for t in stability_transitions(game, np.linspace(0, 1, 101)):
    print(" ", t)

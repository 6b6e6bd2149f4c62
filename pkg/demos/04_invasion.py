"""Replicator dynamics as an independent check on the ESS classifier.

A mutant is released at 1% of the population and integrated with RK4 until
t = 1000. An ESS pushes every mutant back; a non-ESS lets at least one in.
"""

import numpy as np

from entangled_ess import SymmetricGame2, SymmetricGame3, classify_ess, empirical_stability, invasion_barrier

mutants = np.linspace(0, 1, 21)
cases = [
    ("two-player interior NE", SymmetricGame2(3, 0, 5, 1), 0.5, 0.5),
    ("classical pure 1 of the flip-class game", SymmetricGame2(1, 0, 1, 1), 0.0, 1.0),
    ("upper mixed root, weak entanglement", SymmetricGame3(0, 1, 2, 0, 0, 1), 0.2, (3 + 3**0.5) / 6),
    ("lower mixed root, weak entanglement", SymmetricGame3(0, 1, 2, 0, 0, 1), 0.2, (3 - 3**0.5) / 6),
]
for label, game, b2, p in cases:
    verdict = classify_ess(game, b2, p).is_ess.value
    report = empirical_stability(game, b2, p, mutants)
    print(f"{label}: classifier says {verdict}, dynamics say {report.verdict.value}")
    if report.witnesses:
        print(f"    witnesses: {', '.join(f'{q:.2f}' for q in report.witnesses[:6])}")

print("\ninvasion barrier of p = 1/2 against q = 0.2 in the two-player game:",
      invasion_barrier(SymmetricGame2(3, 0, 5, 1), 0.5, 0.5, 0.2))

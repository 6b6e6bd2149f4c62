"""Two mixed NE that never move, while the ESS label hops between them.

For this game the Nash quadratic has roots (3 -+ sqrt 3)/6 at every b2. The
condition-2 margin at each root is +-sqrt(3)|1 - 2 b2| (p* - q)^2, so the ESS
sits on the upper root below b2 = 1/2, on the lower root above, and on neither
exactly at 1/2.
"""

from entangled_ess import SymmetricGame3, discriminant3, find_symmetric_ne

game = SymmetricGame3(0, 1, 2, 0, 0, 1)

for b2 in (0.0, 0.25, 0.5, 0.75, 1.0):
    rows = [c for c in find_symmetric_ne(game, b2) if c.kind.value == "mixed"]
    cells = ", ".join(f"p={c.p:.4f} {c.is_ess.value:14s} ratio {c.margin_ratio:+.4f}" for c in rows)
    print(f"b2={b2:4.2f}  disc={discriminant3(game, b2):.3f}  {cells}")

"""Exact search: the largest dispersion any guard set can reach.

Run: python scripts/exact_oracle.py
"""

from dispersive_agp.oracle import (OracleBudget, Timeout, classic_min_guards,
                                   enumerate_guard_sets, exact_max_dispersion, minimal_sets)
from dispersive_agp.polyomino import from_grid, random_simple
from dispersive_agp.verify import verify

u = from_grid("#.#\n###")
res = exact_max_dispersion(u)
print(f"U pentomino: best dispersion {res.best}, witness {sorted(map(tuple, res.witness.guards))}")

# All guard sets at that dispersion; here the two diagonal pairs.
sets = enumerate_guard_sets(u, res.best)
print("sets at", res.best, ":", [sorted(map(tuple, s.guards)) for s in minimal_sets(sets, u)])

# Once the right arm is covered from outside, one corner sees everything else,
# and a lone guard has no partner to be close to.
print("with (2,1) covered elsewhere:", exact_max_dispersion(u, pre_covered={(2, 1)}).best)

# Fewest guards, ignoring spacing, is a different question.
classic = classic_min_guards(u)
print(f"minimum guards: {len(classic)}, their dispersion "
      f"{verify(classic.guards, u).dispersion}")

big = random_simple(4, 300)
try:
    res = exact_max_dispersion(big, budget=OracleBudget(time_limit=0.5, node_limit=5))
    print(f"{len(big)} cells: best dispersion {res.best} within budget")
except Timeout as exc:
    print(f"{len(big)} cells: budget exhausted ({exc})")

"""Every simple polyomino admits guards that are pairwise at least 3 apart.

The recursive solver starts at one corner, looks at what stays hidden, and
places the next guard behind each "gate" between the seen and unseen parts.
This script runs it on random shapes and checks every result independently.

Run: python scripts/worstcase_three.py [count]
"""

import sys
import time

from dispersive_agp.gadgets import load_fixture_text
from dispersive_agp.polyomino import from_grid, random_simple
from dispersive_agp.verify import verify
from dispersive_agp.worstcase import solve_worstcase

count = int(sys.argv[1]) if len(sys.argv) > 1 else 50

t0 = time.perf_counter()
worst = float("inf")
for seed in range(count):
    p = random_simple(seed, 20 + (seed * 37) % 181)
    res = solve_worstcase(p)
    check = verify(res.guards.guards, p, 3 if len(res.guards) > 1 else None)
    assert check.ok and not res.violations, seed
    worst = min(worst, check.dispersion)
print(f"{count} shapes solved and verified in {time.perf_counter() - t0:.2f}s, "
      f"smallest dispersion seen: {worst}")

# On this shape no guard set does better than 3, so the bound is tight.
tight = from_grid(load_fixture_text("tight3.grid"))
res = solve_worstcase(tight)
print(f"tight example ({len(tight)} cells): dispersion "
      f"{verify(res.guards.guards, tight).dispersion} with {len(res.guards)} guards")
print("recursion trace (first lines):")
print("\n".join(res.trace_json().splitlines()[:12]))

"""Optimal dispersion on tree-shaped polyominoes via the border-tree DP.

Run: python scripts/tree_dp.py
"""

import time

from dispersive_agp.oracle import exact_max_dispersion
from dispersive_agp.polyomino import random_tree, render_grid
from dispersive_agp.treedp import build_borders, build_tree, dump_tables, solve_tree

p = random_tree(seed=11, cell_count=25)
print(render_grid(p.translated(-p.bbox[0], -p.bbox[1])))

st = build_borders(p)
tree = build_tree(p, st)
print(f"{len(st.maximal_rectangles)} maximal rectangles, {len(st.inner_borders)} inner and "
      f"{len(st.outer_borders)} outer borders, root cell {tuple(tree.root_cell)}")

t0 = time.perf_counter()
best, witness = solve_tree(p)
dp = time.perf_counter() - t0
t0 = time.perf_counter()
truth = exact_max_dispersion(p).best
search = time.perf_counter() - t0
print(f"DP optimum {best} ({dp * 1000:.1f} ms), exhaustive search {truth} ({search * 1000:.1f} ms)")
print("guards:", sorted(map(tuple, witness.guards)))

# The state tables of the DP can be dumped for inspection.
print("\n".join(dump_tables(p, best).splitlines()[:10]))

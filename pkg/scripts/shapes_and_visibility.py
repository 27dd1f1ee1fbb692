"""Polyominoes, their vertices, and what a corner guard can see.

Run: python scripts/shapes_and_visibility.py
"""

from dispersive_agp.polyomino import from_grid, random_simple, render_grid
from dispersive_agp.visibility import visibility_region

# A U-shaped pentomino: the notch at (1, 1) is missing.
u = from_grid("#.#\n###")
print(render_grid(u))
print("classification:", u.classify())
print("vertices:", sorted(map(tuple, u.vertices)))

# A guard sees a cell when the rectangle spanned by the guard and any point
# of the cell stays inside the shape.  The reflex corner (1, 1) sees the base
# and the left arm, but not the right arm: that rectangle crosses the notch.
region = visibility_region((1, 1), u)
print("seen from (1, 1):", sorted(map(tuple, region.cells)))

# A ring has a hole, so it is not simple; thin shapes never contain a 2x2 block.
ring = from_grid("###\n#.#\n###")
print("ring:", ring.classify())

p = random_simple(seed=7, cell_count=40)
print(f"\nrandom simple shape, {len(p)} cells, {len(p.vertices)} vertices:")
print(render_grid(p.translated(-p.bbox[0], -p.bbox[1])))

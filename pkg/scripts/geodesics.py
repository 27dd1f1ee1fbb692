"""Walking distances inside a polyomino and the dispersion of a guard set.

Run: python scripts/geodesics.py
"""

from dispersive_agp.geodesic import closest_pair, dispersion_distance, geodesic_distance
from dispersive_agp.polyomino import from_grid

u = from_grid("#.#\n###")

# The two top corners are 3 apart as the crow flies, but a path has to dip
# into the notch: down, across, up.
print("d((0,2), (3,2)) =", geodesic_distance((0, 2), (3, 2), u))

# Paths may run along walls, so corners on one wall are as close as they look.
guards = [(0, 0), (3, 0), (0, 2)]
print("dispersion of", guards, "=", dispersion_distance(guards, u))
p, q, d = closest_pair(guards, u)
print(f"closest pair: {tuple(p)} and {tuple(q)} at distance {d}")

# A single guard has no partner, so its dispersion is infinite.
print("dispersion of one guard:", dispersion_distance([(0, 0)], u))

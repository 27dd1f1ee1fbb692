"""The hardness gadgets and the behaviour each one is built to have.

Each check asks the exact search whether guards at distance >= 5 can cover
the gadget.  "Pre-covered" ports stand for coverage arriving from a
neighbouring gadget through that port.

Run: python scripts/gadgets.py
"""

from dispersive_agp.gadgets import (clause_gadget, connector_L, duplicator_gadget,
                                    variable_gadget)
from dispersive_agp.oracle import enumerate_guard_sets, exact_max_dispersion, feasible_guard_set
from dispersive_agp.polyomino import render_grid


def ok(bp, *ports):
    pre = frozenset().union(*(bp.zeta(p) for p in ports))
    return feasible_guard_set(bp.shape, 5, pre_covered=pre, blocked=bp.open_corners) is not None


v = variable_gadget()
print("variable\n" + render_grid(v.shape))
print("  best dispersion:", exact_max_dispersion(v.shape).best)
print("  the two settings:", [sorted(map(tuple, s.guards))
                              for s in enumerate_guard_sets(v.shape, 5)])

c = clause_gadget(3)
print("\nclause with three inputs\n" + render_grid(c.shape))
print("  alone:", ok(c), " one true input:", [ok(c, p.name) for p in c.inputs])
print("  stretched by 4 keeps that:",
      ok(clause_gadget(3, 4)), [ok(clause_gadget(3, 4), p.name) for p in c.inputs])

d = duplicator_gadget()
print("\nduplicator\n" + render_grid(d.shape))
print("  input true:", ok(d, "in"), " nothing:", ok(d),
      " one output from outside:", ok(d, "o1"), ok(d, "o2"), " both:", ok(d, "o1", "o2"))

w = connector_L()
print("\nL connector\n" + render_grid(w.shape))
print("  nothing:", ok(w), " input:", ok(w, "in"), " output:", ok(w, "out"))

"""From a formula and a layout to one polyomino, and from truth values to guards.

A satisfying assignment yields guards pairwise at least 5 apart; an
assignment that leaves a clause false forces two guards to distance 4.

Run: python scripts/reduction.py
"""

import itertools

from dispersive_agp.gadgets import load_fixture_text
from dispersive_agp.oracle import exact_max_dispersion
from dispersive_agp.reduction import compose, guards_from_assignment, parse_formula, parse_layout
from dispersive_agp.verify import verify

phi = parse_formula(load_fixture_text("reference.cnf"))
comp = compose(phi, parse_layout(load_fixture_text("reference.layout")))
p = comp.polyomino
print(f"{len(phi.clauses)} clauses over {phi.n} variables -> {len(p)} cells, "
      f"{len(comp.gadgets)} gadgets, {len(comp.routes)} wires")

for bits in [(0, 1, 1, 1, 0), (1, 1, 1, 1, 0)]:
    gs = guards_from_assignment(phi, comp, bits, strict=False)
    res = verify(gs.guards, p)
    print(f"assignment {bits}: {len(gs)} guards, covered {res.covered}, "
          f"dispersion {res.dispersion}, unsatisfied clauses {phi.satisfied(bits)}")

# With no satisfying assignment no guard set reaches 5 at all.
phi = parse_formula(load_fixture_text("unsat3.cnf"))
comp = compose(phi, parse_layout(load_fixture_text("unsat3.layout")))
assert all(phi.satisfied(b) for b in itertools.product((0, 1), repeat=phi.n))
print(f"\nunsatisfiable formula ({len(comp.polyomino)} cells): best dispersion "
      f"{exact_max_dispersion(comp.polyomino).best}")

"""File formats and SVG rendering, the same ones the command line uses.

Run: python scripts/files_and_svg.py [out.svg]
"""

import sys

from dispersive_agp.formats import (SolveReport, dump_guards, load_guards, render_svg,
                                    witness_annotations)
from dispersive_agp.gadgets import load_fixture_text
from dispersive_agp.polyomino import from_grid
from dispersive_agp.worstcase import solve_worstcase

p = from_grid(load_fixture_text("tight3.grid"))
guards = solve_worstcase(p).guards.guards

text = dump_guards(guards)
print("guard file:", text, end="")
assert dump_guards(load_guards(text)) == text

# Reports never trust the solver: coverage and dispersion are recomputed.
print("report:", SolveReport.build("tight3", "worstcase", guards, p, 0.0).to_json(), end="")

svg = render_svg(p, guards, witness_annotations(p, guards))
out = sys.argv[1] if len(sys.argv) > 1 else "tight3.svg"
with open(out, "w") as fh:
    fh.write(svg)
print(f"wrote {out} ({svg.count('<rect')} cells, {svg.count('<circle')} guards)")

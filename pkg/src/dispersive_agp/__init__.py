"""Dispersive art gallery problem on polyominoes with vertex guards."""

from .reduction import (Formula, Layout, UnsatisfiedClause, compose, guards_from_assignment,
                      parse_formula, parse_layout)
from .gadgets import (GadgetBlueprint, clause_gadget, connector_L, connector_Z, corridor,
                      duplicator_gadget, variable_gadget)
from .geodesic import INF, dispersion_distance, geodesic_distance
from .oracle import OracleBudget, Timeout, exact_max_dispersion, feasible_guard_set
from .polyomino import Cell, Point, Polyomino, from_grid, random_simple, random_tree, render_grid
from .treedp import solve_tree
from .verify import GuardSet, verify
from .worstcase import solve_worstcase

__all__ = [
    "INF", "Cell", "Formula", "GadgetBlueprint", "GuardSet", "Layout", "OracleBudget",
    "Point", "Polyomino", "Timeout", "UnsatisfiedClause", "clause_gadget", "compose",
    "connector_L", "connector_Z", "corridor", "dispersion_distance", "duplicator_gadget",
    "exact_max_dispersion", "feasible_guard_set", "from_grid", "geodesic_distance",
    "guards_from_assignment", "parse_formula", "parse_layout", "random_simple",
    "random_tree", "render_grid", "solve_tree", "solve_worstcase", "variable_gadget",
    "verify",
]

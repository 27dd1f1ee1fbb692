"""Small named shapes and the desk-scale polyomino corpus."""

from __future__ import annotations

from dispersive_agp.gadgets import connector_L, connector_Z, variable_gadget
from dispersive_agp.polyomino import Polyomino, from_grid, random_simple, random_tree

from oracles import free_polyominoes

L_TROMINO = Polyomino([(0, 0), (1, 0), (0, 1)])
U_PENTOMINO = Polyomino([(0, 0), (1, 0), (2, 0), (0, 1), (2, 1)])
PLUS = Polyomino([(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)])
BAR3 = from_grid("###")
BAR5 = from_grid("#####")
SQUARE = from_grid("##\n##")
RING8 = from_grid("###\n#.#\n###")


def comb(k: int, gap: int = 1) -> Polyomino:
    """A horizontal spine with ``k`` two-cell teeth ``gap`` cells apart."""
    width = k * (gap + 1) - gap
    cells = [(x, 0) for x in range(width)]
    cells += [(i * (gap + 1), y) for i in range(k) for y in (1, 2)]
    return Polyomino(cells)


NAMED = {
    "L_tromino": L_TROMINO,
    "U_pentomino": U_PENTOMINO,
    "plus": PLUS,
    "bar3": BAR3,
    "bar5": BAR5,
    "square": SQUARE,
    "ring8": RING8,
    "comb2": comb(2),
    "comb3": comb(3),
    "variable": variable_gadget().shape,
    "connector_L": connector_L().shape,
    "connector_Z": connector_Z().shape,
}


def small_corpus(max_cells: int = 16) -> list[tuple[str, Polyomino]]:
    """Every free polyomino up to 7 cells, the named shapes and seeded
    random shapes, all with at most ``max_cells`` cells."""
    out = [(f"free{n}_{i}", Polyomino(s))
           for n in range(1, 8) for i, s in enumerate(free_polyominoes(n))]
    out += [(k, p) for k, p in NAMED.items() if len(p) <= max_cells]
    out += [(f"simple_s{s}", random_simple(s, 8 + s % 9)) for s in range(24)]
    out += [(f"tree_s{s}", random_tree(100 + s, 8 + s % 9)) for s in range(16)]
    return out

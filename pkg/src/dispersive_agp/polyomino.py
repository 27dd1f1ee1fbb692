"""Polyominoes on the integer lattice.

A polyomino is a finite, edge-connected set of unit cells. Cell ``(x, y)``
occupies the closed square ``[x, x+1] x [y, y+1]`` and ``y`` grows upward.
Everything derived from the cell set (boundary cycles, corner vertices, the
dual graph and the simple/thin/tree-shaped flags) is computed lazily and then
cached, so a :class:`Polyomino` behaves as an immutable value.
"""

from __future__ import annotations

import random
from collections import deque
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np


class PolyominoError(ValueError):
    """Base class for invalid-shape errors."""


class EmptyShape(PolyominoError):
    pass


class Disconnected(PolyominoError):
    pass


class BadChar(PolyominoError):
    pass


class GrowthStuck(RuntimeError):
    pass


class Cell(NamedTuple):
    x: int
    y: int


class Point(NamedTuple):
    x: int
    y: int


class Side(NamedTuple):
    """A unit edge between two lattice points, stored with ``a < b``."""

    a: Point
    b: Point

    @property
    def horizontal(self) -> bool:
        return self.a.y == self.b.y

    @property
    def orientation(self) -> str:
        return "horizontal" if self.horizontal else "vertical"

    @classmethod
    def of(cls, p, q) -> "Side":
        p, q = Point(*p), Point(*q)
        if abs(p.x - q.x) + abs(p.y - q.y) != 1:
            raise ValueError(f"{p} and {q} are not unit-adjacent")
        return cls(p, q) if p < q else cls(q, p)


NEIGHBOURS = ((1, 0), (0, 1), (-1, 0), (0, -1))
_INT32 = 2**31 - 1

# Clockwise traversal with the interior on the right: for each side of a cell
# whose neighbour is missing, the directed edge (start, end) relative to (x, y).
_CELL_EDGES = {
    (0, 1): ((0, 1), (1, 1)),   # top, left -> right
    (1, 0): ((1, 1), (1, 0)),   # right, downward
    (0, -1): ((1, 0), (0, 0)),  # bottom, right -> left
    (-1, 0): ((0, 0), (0, 1)),  # left, upward
}


def _turn(d_in, d_out) -> int:
    """+1 for a right turn, -1 for a left turn, 0 for straight."""
    cross = d_in[0] * d_out[1] - d_in[1] * d_out[0]
    return -cross


class Polyomino:
    """An immutable, edge-connected set of unit cells."""

    def __init__(self, cells: Iterable):
        cells = frozenset(Cell(int(x), int(y)) for x, y in cells)
        if not cells:
            raise EmptyShape("a polyomino needs at least one cell")
        for c in cells:
            if not (-_INT32 <= c.x <= _INT32 and -_INT32 <= c.y <= _INT32):
                raise PolyominoError(f"cell {c} outside 32-bit range")
        self.cells = cells
        if len(self._components(cells)) != 1:
            raise Disconnected("cells are not edge-connected")

    # -- basic protocol -------------------------------------------------
    def __contains__(self, cell) -> bool:
        return cell in self.cells

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(sorted(self.cells))

    def __eq__(self, other) -> bool:
        return isinstance(other, Polyomino) and self.cells == other.cells

    def __hash__(self) -> int:
        return hash(self.cells)

    def __repr__(self) -> str:
        if len(self.cells) <= 8:
            return f"Polyomino({sorted(self.cells)})"
        return f"Polyomino(<{len(self.cells)} cells>)"

    @staticmethod
    def _components(cells) -> list[set]:
        seen, comps = set(), []
        for start in cells:
            if start in seen:
                continue
            comp = {start}
            seen.add(start)
            queue = deque([start])
            while queue:
                x, y = queue.popleft()
                for dx, dy in NEIGHBOURS:
                    n = (x + dx, y + dy)
                    if n in cells and n not in seen:
                        seen.add(n)
                        comp.add(Cell(*n))
                        queue.append(n)
            comps.append(comp)
        return comps

    # -- geometry -------------------------------------------------------
    @cached_property
    def bbox(self) -> tuple[int, int, int, int]:
        """``(xmin, ymin, xmax, ymax)`` of the cell indices."""
        xs = [c.x for c in self.cells]
        ys = [c.y for c in self.cells]
        return min(xs), min(ys), max(xs), max(ys)

    @cached_property
    def grid(self) -> np.ndarray:
        """Occupancy array indexed ``[x - xmin + 1, y - ymin + 1]`` with a
        one-cell empty margin on every side."""
        xmin, ymin, xmax, ymax = self.bbox
        occ = np.zeros((xmax - xmin + 3, ymax - ymin + 3), dtype=bool)
        for c in self.cells:
            occ[c.x - xmin + 1, c.y - ymin + 1] = True
        return occ

    @cached_property
    def prefix(self) -> np.ndarray:
        """2-D inclusive prefix sums of :attr:`grid` (with a leading zero row
        and column) for O(1) box-occupancy queries."""
        occ = self.grid.astype(np.int64)
        pre = np.zeros((occ.shape[0] + 1, occ.shape[1] + 1), dtype=np.int64)
        pre[1:, 1:] = occ.cumsum(0).cumsum(1)
        return pre

    def box_full(self, x0: int, y0: int, x1: int, y1: int) -> bool:
        """True iff every cell ``(i, j)`` with ``x0<=i<=x1, y0<=j<=y1`` is in P."""
        if x0 > x1:
            x0, x1 = x1, x0
        if y0 > y1:
            y0, y1 = y1, y0
        xmin, ymin, xmax, ymax = self.bbox
        if x0 < xmin or y0 < ymin or x1 > xmax or y1 > ymax:
            return False
        pre = self.prefix
        ax, ay = x0 - xmin + 1, y0 - ymin + 1
        bx, by = x1 - xmin + 2, y1 - ymin + 2
        total = pre[bx, by] - pre[ax, by] - pre[bx, ay] + pre[ax, ay]
        return int(total) == (x1 - x0 + 1) * (y1 - y0 + 1)

    def neighbours(self, cell) -> list[Cell]:
        x, y = cell
        return [Cell(x + dx, y + dy) for dx, dy in NEIGHBOURS
                if (x + dx, y + dy) in self.cells]

    @cached_property
    def dual_edges(self) -> frozenset:
        """Dual-graph edges as frozensets of two cells sharing a side."""
        edges = set()
        for c in self.cells:
            for n in ((c.x + 1, c.y), (c.x, c.y + 1)):
                if n in self.cells:
                    edges.add(frozenset((c, Cell(*n))))
        return frozenset(edges)

    @cached_property
    def boundary_sides(self) -> frozenset:
        """Unit sides lying between a cell of P and a cell outside P."""
        sides = set()
        for c in self.cells:
            for d, (s, e) in _CELL_EDGES.items():
                if (c.x + d[0], c.y + d[1]) not in self.cells:
                    sides.add(Side.of((c.x + s[0], c.y + s[1]),
                                      (c.x + e[0], c.y + e[1])))
        return frozenset(sides)

    @cached_property
    def boundary_cycles(self) -> tuple[tuple[Point, ...], ...]:
        """Boundary cycles as closed point sequences (first point not
        repeated), traversed with the interior of P on the right, i.e. the
        outer cycle runs clockwise and hole cycles counterclockwise.

        At a point where two cells touch only diagonally the tracer takes the
        left turn, which keeps each cycle hugging a single complement region,
        so there is exactly one cycle per hole plus the outer one.  The outer
        cycle comes first and starts at the leftmost vertex with minimal y.
        """
        out: dict[Point, list[Point]] = {}
        for c in self.cells:
            for d, (s, e) in _CELL_EDGES.items():
                if (c.x + d[0], c.y + d[1]) not in self.cells:
                    a = Point(c.x + s[0], c.y + s[1])
                    b = Point(c.x + e[0], c.y + e[1])
                    out.setdefault(a, []).append(b)
        unused = {(a, b) for a, bs in out.items() for b in bs}
        cycles = []
        while unused:
            first = min(unused, key=lambda e: (e[0].y, e[0].x, e[1].y, e[1].x))
            unused.discard(first)
            cycle = [first[0]]
            prev, cur = first
            while True:
                d_in = (cur.x - prev.x, cur.y - prev.y)
                # a pinch point offers two ways out; the left turn wins
                nxt = min(out[cur], key=lambda n: _turn(
                    d_in, (n.x - cur.x, n.y - cur.y)))
                if (cur, nxt) == first:
                    break
                cycle.append(cur)
                unused.discard((cur, nxt))
                prev, cur = cur, nxt
            cycles.append(tuple(cycle))
        outer = next(i for i, cyc in enumerate(cycles)
                     if self._turn_total(cyc) == 4)
        cycles.insert(0, cycles.pop(outer))
        cycles[0] = _rotate_to_corner(cycles[0])
        return tuple(cycles)

    @staticmethod
    def _turns(cycle) -> list[int]:
        n = len(cycle)
        turns = []
        for i in range(n):
            p, c, q = cycle[i - 1], cycle[i], cycle[(i + 1) % n]
            turns.append(_turn((c.x - p.x, c.y - p.y), (q.x - c.x, q.y - c.y)))
        return turns

    @classmethod
    def _turn_total(cls, cycle) -> int:
        return sum(cls._turns(cycle))

    @cached_property
    def corner_counts(self) -> list[tuple[int, int]]:
        """Per boundary cycle, ``(convex, reflex)`` corner counts."""
        res = []
        for cyc in self.boundary_cycles:
            t = self._turns(cyc)
            res.append((t.count(1), t.count(-1)))
        return res

    @cached_property
    def vertices(self) -> frozenset:
        """Lattice points where some boundary cycle changes direction."""
        verts = set()
        for cyc in self.boundary_cycles:
            for p, t in zip(cyc, self._turns(cyc)):
                if t != 0:
                    verts.add(p)
        return frozenset(verts)

    @cached_property
    def lattice_points(self) -> frozenset:
        """All lattice points of the closed polyomino."""
        pts = set()
        for c in self.cells:
            pts.update((Point(c.x, c.y), Point(c.x + 1, c.y),
                        Point(c.x, c.y + 1), Point(c.x + 1, c.y + 1)))
        return frozenset(pts)

    def contains_point(self, p) -> bool:
        x, y = p
        return any((x - dx, y - dy) in self.cells
                   for dx in (0, 1) for dy in (0, 1))

    def contains_unit_segment(self, p, q) -> bool:
        """True iff the unit segment pq lies in closed P."""
        (x0, y0), (x1, y1) = sorted((tuple(p), tuple(q)))
        if y0 == y1:   # horizontal: cells above or below
            return (x0, y0) in self.cells or (x0, y0 - 1) in self.cells
        return (x0, y0) in self.cells or (x0 - 1, y0) in self.cells

    # -- classification -------------------------------------------------
    @cached_property
    def holes(self) -> list[set]:
        """Bounded 4-connected components of the complement cells."""
        xmin, ymin, xmax, ymax = self.bbox
        empty = {(x, y) for x in range(xmin - 1, xmax + 2)
                 for y in range(ymin - 1, ymax + 2)} - self.cells
        comps = self._components(empty)
        return [c for c in comps if (xmin - 1, ymin - 1) not in c]

    @property
    def is_simple(self) -> bool:
        return len(self.boundary_cycles) == 1

    @property
    def is_thin(self) -> bool:
        cells = self.cells
        return not any((c.x + 1, c.y) in cells and (c.x, c.y + 1) in cells
                       and (c.x + 1, c.y + 1) in cells for c in cells)

    @property
    def is_tree_shaped(self) -> bool:
        return len(self.dual_edges) == len(self.cells) - 1

    def classify(self) -> dict[str, bool]:
        return {"simple": self.is_simple, "thin": self.is_thin,
                "tree_shaped": self.is_tree_shaped}

    def niches(self) -> frozenset:
        """Cells of dual degree exactly one."""
        return frozenset(c for c in self.cells if len(self.neighbours(c)) == 1)

    # -- transforms -----------------------------------------------------
    def translated(self, dx: int, dy: int) -> "Polyomino":
        return Polyomino((c.x + dx, c.y + dy) for c in self.cells)

    def transformed(self, sym: int) -> "Polyomino":
        return Polyomino(transform_cell(c, sym) for c in self.cells)


def _rotate_to_corner(cycle):
    """Rotate a cycle to start at its leftmost vertex of minimal y."""
    turns = Polyomino._turns(cycle)
    _, _, i = min((p.y, p.x, i) for i, (p, t) in enumerate(zip(cycle, turns))
                  if t)
    return cycle[i:] + cycle[:i]


# The 8 axis symmetries acting on lattice points: sym = rot + 4 * mirror,
# rot counted in quarter turns counterclockwise, mirror applied first (x -> -x).
def transform_point(p, sym: int) -> Point:
    x, y = p
    if sym >= 4:
        x = -x
    for _ in range(sym % 4):
        x, y = -y, x
    return Point(x, y)


def transform_cell(c, sym: int) -> Cell:
    # a cell is identified with its centre (x + 1/2, y + 1/2)
    x2, y2 = transform_point((2 * c[0] + 1, 2 * c[1] + 1), sym)
    return Cell((x2 - 1) // 2, (y2 - 1) // 2)


def inverse_symmetry(sym: int) -> int:
    for s in range(8):
        if transform_point(transform_point((3, 7), sym), s) == (3, 7):
            return s
    raise AssertionError


# -- text format ------------------------------------------------------------
def from_grid(text: str) -> Polyomino:
    """Parse '#'/'.' rows; the first line is the top row."""
    lines = text.split("\n")
    while lines and lines[-1].strip() == "":
        lines.pop()
    cells = []
    h = len(lines)
    for row, line in enumerate(lines):
        y = h - 1 - row
        for x, ch in enumerate(line.rstrip("\r")):
            if ch == "#":
                cells.append((x, y))
            elif ch not in ". ":
                raise BadChar(f"unexpected character {ch!r} at line {row + 1}")
    if not cells:
        raise EmptyShape("no '#' in grid text")
    return Polyomino(cells)


def render_grid(poly: Polyomino) -> str:
    """Inverse of :func:`from_grid` for shapes anchored at the origin;
    general shapes are rendered relative to their bounding box."""
    xmin, ymin, xmax, ymax = poly.bbox
    x0, y0 = min(xmin, 0), min(ymin, 0)
    rows = []
    for y in range(ymax, y0 - 1, -1):
        rows.append("".join("#" if (x, y) in poly.cells else "."
                            for x in range(x0, xmax + 1)).rstrip("."))
    return "\n".join(rows)


# -- random generation --------------------------------------------------------
def _creates_hole(cells: set, new) -> bool:
    """Would adding ``new`` to a hole-free cell set enclose a region?

    Walk the 8 cells around ``new``; consecutive ring cells are 4-adjacent.
    Each maximal run of empty ring cells that contains an edge neighbour of
    ``new`` was connected to the others through ``new``.  Since the occupied
    arcs between runs are joined through the (connected) shape, two or more
    such runs means one of them gets enclosed.
    """
    x, y = new
    ring = [(x - 1, y - 1), (x, y - 1), (x + 1, y - 1), (x + 1, y),
            (x + 1, y + 1), (x, y + 1), (x - 1, y + 1), (x - 1, y)]
    empty = [p not in cells for p in ring]
    if all(empty) or not any(empty):
        return False
    first = empty.index(False)
    runs, in_run, has_edge = 0, False, False
    for k in range(1, 9):
        i = (first + k) % 8
        if empty[i]:
            in_run = True
            has_edge = has_edge or i % 2 == 1
        else:
            if in_run and has_edge:
                runs += 1
            in_run, has_edge = False, False
    return runs >= 2


def _grow(seed, cell_count: int, accept) -> Polyomino:
    if cell_count < 1:
        raise ValueError("cell_count must be >= 1")
    for attempt in range(50):
        rng = random.Random(f"{seed}/{attempt}")
        cells = {(0, 0)}
        while len(cells) < cell_count:
            frontier = sorted({(x + dx, y + dy) for x, y in cells
                               for dx, dy in NEIGHBOURS} - cells)
            rng.shuffle(frontier)
            for cand in frontier:
                if accept(cells, cand):
                    cells.add(cand)
                    break
            else:
                break
        if len(cells) == cell_count:
            return Polyomino(cells)
    raise GrowthStuck(f"could not grow {cell_count} cells from seed {seed!r}")


def random_simple(seed, cell_count: int) -> Polyomino:
    """Random simple polyomino grown cell by cell, rejecting additions that
    would enclose a hole."""
    return _grow(seed, cell_count, lambda cells, c: not _creates_hole(cells, c))


def random_tree(seed, cell_count: int) -> Polyomino:
    """Random simple tree-shaped polyomino: each added cell touches exactly
    one existing cell and no addition may enclose a hole."""
    def accept(cells, c):
        x, y = c
        if sum((x + dx, y + dy) in cells for dx, dy in NEIGHBOURS) != 1:
            return False
        return not _creates_hole(cells, c)
    return _grow(seed, cell_count, accept)

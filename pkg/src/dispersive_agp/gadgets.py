"""Gadget blueprints for the hardness reduction.

A blueprint is a thin polyomino with named ports.  A port is the open end
of a strip: the side between ``cell`` and ``cell + dir``.  ``depth`` counts
the cells between the port side and the strip's junction cell.

Every blueprint carries per-state guard configurations used to build
witness guard sets for composed instances.  Geometry is read from the JSON
fixtures shipped in ``fixtures/``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources

from .polyomino import Cell, Point, Polyomino, from_grid, transform_cell, transform_point

FIXTURE_VERSION = 1

Vec = tuple[int, int]


class FixtureError(ValueError):
    pass


@dataclass(frozen=True)
class Port:
    name: str
    kind: str          # "in" or "out"
    cell: Cell
    dir: Vec
    depth: int

    @property
    def outside(self) -> Cell:
        return Cell(self.cell[0] + self.dir[0], self.cell[1] + self.dir[1])

    @property
    def junction(self) -> Cell:
        return Cell(self.cell[0] - self.depth * self.dir[0],
                    self.cell[1] - self.depth * self.dir[1])

    @property
    def corners(self) -> frozenset:
        """Endpoints of the open side."""
        x, y = self.cell
        dx, dy = self.dir
        if dx:
            px = x + (dx > 0)
            return frozenset({Point(px, y), Point(px, y + 1)})
        py = y + (dy > 0)
        return frozenset({Point(x, py), Point(x + 1, py)})

    def half_cells(self) -> tuple[Cell, ...]:
        """Cells of the port half strip, junction excluded."""
        return tuple(Cell(self.cell[0] - k * self.dir[0], self.cell[1] - k * self.dir[1])
                     for k in range(self.depth))

    def map(self, f_cell, f_vec) -> "Port":
        return replace(self, cell=f_cell(self.cell), dir=f_vec(self.dir))


@dataclass(frozen=True)
class Leg:
    port: str
    front: Point
    back: Point


@dataclass(frozen=True)
class State:
    guards: frozenset
    delivers: frozenset


@dataclass(frozen=True)
class GadgetBlueprint:
    name: str
    shape: Polyomino
    ports: dict = field(hash=False)
    marked_cells: dict = field(hash=False, default_factory=dict)
    states: dict = field(hash=False, default_factory=dict)
    caps: dict = field(hash=False, default_factory=dict)
    legs: tuple = ()

    @property
    def inputs(self) -> list[Port]:
        return [p for p in self.ports.values() if p.kind == "in"]

    @property
    def outputs(self) -> list[Port]:
        return [p for p in self.ports.values() if p.kind == "out"]

    @property
    def open_corners(self) -> frozenset:
        """Port side endpoints.  They are not vertices once a port is wired,
        so standalone analysis must not place guards there."""
        out = set()
        for p in self.ports.values():
            out |= p.corners
        return frozenset(out)

    def zeta(self, port: str) -> frozenset:
        """The whole strip behind a port: what an outside guard watching
        the port sees inside the gadget."""
        p = self.ports[port]
        cells, c = [], p.cell
        while c in self.shape:
            cells.append(c)
            c = Cell(c[0] - p.dir[0], c[1] - p.dir[1])
        return frozenset(cells)

    def _mapped(self, f_cell, f_point, f_vec, extra=()) -> "GadgetBlueprint":
        return GadgetBlueprint(
            self.name,
            Polyomino([f_cell(c) for c in self.shape.cells] + list(extra)),
            {k: p.map(f_cell, f_vec) for k, p in self.ports.items()},
            {k: tuple(f_cell(c) for c in v) for k, v in self.marked_cells.items()},
            {k: State(frozenset(f_point(g) for g in s.guards), s.delivers)
             for k, s in self.states.items()},
            {k: frozenset(f_point(g) for g in v) for k, v in self.caps.items()},
            tuple(Leg(l.port, f_point(l.front), f_point(l.back)) for l in self.legs),
        )

    def transformed(self, sym: int = 0, dx: int = 0, dy: int = 0) -> "GadgetBlueprint":
        """Apply one of the 8 lattice symmetries, then translate."""
        def f_cell(c):
            t = transform_cell(c, sym)
            return Cell(t.x + dx, t.y + dy)

        def f_point(p):
            t = transform_point(p, sym)
            return Point(t.x + dx, t.y + dy)

        def f_vec(v):
            return tuple(transform_point(v, sym))

        return self._mapped(f_cell, f_point, f_vec)

    def stretched(self, columns, k: int) -> "GadgetBlueprint":
        """Duplicate each listed column ``k`` times (columns in local x)."""
        if k == 0:
            return self
        cols = sorted(columns)

        def shift(x):
            # lattice x on the right side of column c moves with the cells
            return x + k * sum(1 for c in cols if x > c)

        def f_cell(c):
            return Cell(shift(c[0]), c[1])

        def f_point(p):
            return Point(shift(p[0]), p[1])

        extra = [Cell(shift(c) + i, cell[1])
                 for c in cols for cell in self.shape.cells if cell[0] == c
                 for i in range(1, k + 1)]
        return self._mapped(f_cell, f_point, lambda v: v, extra)


def _parse(data: dict) -> GadgetBlueprint:
    if data.get("version") != FIXTURE_VERSION:
        raise FixtureError(f"unsupported fixture version {data.get('version')!r}")
    ox, oy = data.get("origin", (0, 0))
    shape = from_grid("\n".join(data["grid"])).translated(ox, oy)
    ports = {k: Port(k, v["kind"], Cell(*v["cell"]), tuple(v["dir"]), int(v["depth"]))
             for k, v in data["ports"].items()}
    for p in ports.values():
        if p.cell not in shape or p.outside in shape:
            raise FixtureError(f"port {p.name} is not on an open side")
    marks = {k: tuple(Cell(*c) for c in v) for k, v in data.get("marks", {}).items()}
    states = {k: State(frozenset(Point(*g) for g in v["guards"]), frozenset(v["delivers"]))
              for k, v in data.get("states", {}).items()}
    caps = {k: frozenset(Point(*g) for g in v) for k, v in data.get("caps", {}).items()}
    legs = tuple(Leg(l["port"], Point(*l["front"]), Point(*l["back"]))
                 for l in data.get("legs", ()))
    return GadgetBlueprint(data["name"], shape, ports, marks, states, caps, legs)


@lru_cache(maxsize=None)
def _fixture(name: str) -> tuple[GadgetBlueprint, tuple]:
    path = resources.files(__package__) / "fixtures" / f"{name}.json"
    data = json.loads(path.read_text())
    return _parse(data), tuple(data.get("stretch_columns", ()))


def load_fixture_text(name: str) -> str:
    return (resources.files(__package__) / "fixtures" / name).read_text()


# -- public constructors --------------------------------------------------------

def variable_gadget() -> GadgetBlueprint:
    return _fixture("variable")[0]


def duplicator_gadget() -> GadgetBlueprint:
    return _fixture("duplicator")[0]


def connector_L() -> GadgetBlueprint:
    return _fixture("connector_L")[0]


def connector_Z() -> GadgetBlueprint:
    return _fixture("connector_Z")[0]


def clause_gadget(arity: int, stretch: int = 0) -> GadgetBlueprint:
    if arity not in (2, 3):
        raise ValueError("clause arity must be 2 or 3")
    if stretch < 0:
        raise ValueError("stretch must be non-negative")
    bp, cols = _fixture(f"clause{arity}")
    return bp.stretched(cols, stretch)


def corridor(length: int, spacing: int = 5) -> GadgetBlueprint:
    """A horizontal wire made of ``length`` alternating Z units."""
    if length < 0:
        raise ValueError("length must be non-negative")
    if spacing < 5:
        raise ValueError("units closer than 5 cells break the wire")
    cells = [Cell(0, 0), Cell(1, 0)]
    guards_true, guards_false = [], []
    x, y, up = 2, 0, True
    for _ in range(length):
        s = 1 if up else -1
        cells += [Cell(x, y), Cell(x, y + s), Cell(x, y + 2 * s)]
        # back junction (x, y) and front junction (x, y + 2s)
        guards_false.append(Point(x + 1, y + (s < 0)))
        guards_true.append(Point(x, y + 2 * s + (s > 0)))
        y += 2 * s
        run = spacing if _ < length - 1 else 3
        cells += [Cell(x + i, y) for i in range(1, run)]
        x += run
        up = not up
    if length == 0:
        cells.append(Cell(2, 0))
        x = 3
    last = cells[-1]
    ports = {"in": Port("in", "in", Cell(0, 0), (-1, 0), 2),
             "out": Port("out", "out", last, (1, 0), 2)}
    marks = {"in": (Cell(0, 0), Cell(1, 0)),
             "out": (Cell(last.x - 1, last.y), last)}
    states = {"true": State(frozenset(guards_true), frozenset({"out"})),
              "false": State(frozenset(guards_false), frozenset())}
    return GadgetBlueprint(f"corridor{length}", Polyomino(cells), ports, marks, states)


GADGETS = {
    "variable": variable_gadget,
    "duplicator": duplicator_gadget,
    "connector_L": connector_L,
    "connector_Z": connector_Z,
    "clause2": lambda stretch=0: clause_gadget(2, stretch),
    "clause3": lambda stretch=0: clause_gadget(3, stretch),
    "corridor": lambda length=1: corridor(length),
}


def gadget_by_name(name: str, stretch: int = 0) -> GadgetBlueprint:
    if name == "corridor":
        return corridor(stretch)
    if name.startswith("clause"):
        return GADGETS[name](stretch)
    if name not in GADGETS:
        raise KeyError(f"unknown gadget {name!r}")
    if stretch:
        raise ValueError(f"gadget {name!r} takes no stretch")
    return GADGETS[name]()

"""Recursive guard placement with dispersion at least 3 on simple polyominoes.

Starting from one guard ``g``, the cells it cannot see fall apart into
subshapes ``P_1..P_k``, each attached to ``V(g)`` along a *gate*.  Every gate
gets an orientation (clockwise or counterclockwise) from a small case table,
and the next guard is placed behind the gate on a rectangle pushed away from
it, on the side the orientation allows.  Recursion continues on
``P_i ∪ V(next guard)`` until nothing is left uncovered.

Gate geometry is read off the clockwise boundary cycle of ``V(g)``: a side of
that cycle is either a gate side (the cell across it is still uncovered) or a
boundary side of the current region.  Placement works in a canonical frame
reached by quarter turns, which keep the clockwise sense intact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .geodesic import lattice_graph
from .polyomino import Cell, Point, Polyomino, Side, transform_cell, transform_point
from .verify import GuardSet
from .visibility import cell_index

CW, CCW = "clockwise", "counterclockwise"
PARALLEL, ORTHOGONAL = "parallel", "orthogonal"


class NotSimple(ValueError):
    pass


class FullyVisible(Exception):
    """The guard already sees every remaining cell."""


class CaseGap(Warning):
    """Two gates with alpha > 1 and beta > 1: not covered by the case table."""


class PlacementError(RuntimeError):
    pass


@dataclass(frozen=True)
class Gate:
    segments: tuple            # ((start, end), ...) maximal straight runs, clockwise
    sides: tuple               # unit sides in clockwise order
    walls: tuple               # (wall at start, wall at end)
    kind: str
    subshape: frozenset        # cells of P_i
    orientation: str | None = None

    @property
    def endpoints(self) -> tuple:
        return self.segments[0][0], self.segments[-1][1]

    @property
    def points(self) -> frozenset:
        return frozenset(p for s in self.sides for p in s)

    def to_json(self) -> dict:
        return {
            "segments": [[list(a), list(b)] for a, b in self.segments],
            "walls": [[list(w.a), list(w.b)] for w in self.walls],
            "kind": self.kind,
            "orientation": self.orientation,
            "cells": len(self.subshape),
        }


@dataclass
class RecursionNode:
    guard: Point
    children: list = field(default_factory=list)
    gate_in: Gate | None = None
    flags: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "guard": list(self.guard),
            "gate": None if self.gate_in is None else self.gate_in.to_json(),
            "flags": list(self.flags),
            "children": [c.to_json() for c in self.children],
        }

    def walk(self):
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


@dataclass(frozen=True)
class Decomposition:
    guard: Point
    visible: frozenset
    gates: tuple
    alpha: int
    beta: int
    flags: tuple = ()


@dataclass
class WorstCaseResult:
    guards: GuardSet
    trace: RecursionNode
    violations: list = field(default_factory=list)
    case_gaps: int = 0

    def trace_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.trace.to_json(), indent=indent)


# -- decomposition ------------------------------------------------------------

def _left_cell(a: Point, b: Point) -> Cell:
    """Cell on the left of the directed unit edge a -> b."""
    dx, dy = b.x - a.x, b.y - a.y
    if dx == 1:
        return Cell(a.x, a.y)
    if dx == -1:
        return Cell(a.x - 1, a.y - 1)
    if dy == 1:
        return Cell(a.x - 1, a.y)
    return Cell(a.x, a.y - 1)


def _runs(points) -> list[tuple[Point, Point]]:
    """Maximal straight runs of a polyline given as consecutive points."""
    runs = []
    start = points[0]
    for i in range(1, len(points) - 1):
        a, b, c = points[i - 1], points[i], points[i + 1]
        if (b.x - a.x, b.y - a.y) != (c.x - b.x, c.y - b.y):
            runs.append((start, b))
            start = b
    runs.append((start, points[-1]))
    return runs


def _components(cells: set) -> list[frozenset]:
    left, out = set(cells), []
    while left:
        seed = left.pop()
        comp, stack = {seed}, [seed]
        while stack:
            x, y = stack.pop()
            for n in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                if n in left:
                    left.discard(n)
                    comp.add(Cell(*n))
                    stack.append(n)
        out.append(frozenset(comp))
    return out


def _walls(sub: frozenset, gate_sides: set, start: Point, end: Point):
    """The boundary sides of ``sub`` touching the gate run at its two ends."""
    cycle = Polyomino(sub).boundary_cycles[0]
    n = len(cycle)
    edges = [(cycle[i], cycle[(i + 1) % n]) for i in range(n)]
    on_gate = [Side.of(a, b) in gate_sides for a, b in edges]
    # rotate so the gate run is contiguous and starts at index 0
    i0 = next(i for i in range(n) if on_gate[i] and not on_gate[i - 1])
    edges = edges[i0:] + edges[:i0]
    on_gate = on_gate[i0:] + on_gate[:i0]
    run_end = on_gate.index(False)
    before, after = edges[-1], edges[run_end]
    w_before, w_after = Side.of(*before), Side.of(*after)
    # the sub-shape cycle walks the gate backwards: its "before" wall sits
    # at the gate's clockwise end
    by_point = {}
    for w in (w_before, w_after):
        for p in w:
            by_point.setdefault(p, w)
    return by_point.get(start, w_after), by_point.get(end, w_before)


def decompose(poly: Polyomino, g, region: frozenset | None = None) -> Decomposition:
    """Gates of ``region - V(g)`` in clockwise order from ``g`` along
    ``∂V(g)``, with the boundary run lengths ``alpha`` and ``beta``."""
    g = Point(*g)
    idx = cell_index(poly)
    visible = frozenset(idx.cells_of(idx.bits(g)))
    region = frozenset(poly.cells) if region is None else region
    uncovered = set(region - visible)
    if not uncovered:
        raise FullyVisible(f"{tuple(g)} sees the whole region")
    comps = _components(uncovered)
    comp_of = {c: i for i, comp in enumerate(comps) for c in comp}

    cycle = list(Polyomino(visible).boundary_cycles[0])
    try:
        i = cycle.index(g)
    except ValueError:
        raise PlacementError(f"{tuple(g)} is not on the boundary of its region") from None
    cycle = cycle[i:] + cycle[:i] + [g]
    labels = []
    for a, b in zip(cycle, cycle[1:]):
        labels.append(comp_of.get(_left_cell(a, b)))

    flags = []
    order: list[int] = []
    spans: dict[int, list[int]] = {}
    for k, lab in enumerate(labels):
        if lab is None:
            continue
        if lab not in spans:
            order.append(lab)
            spans[lab] = []
        spans[lab].append(k)
    gates = []
    for lab in order:
        ks = spans[lab]
        if ks[-1] - ks[0] + 1 != len(ks):
            flags.append("split-gate")
        ks = list(range(ks[0], ks[-1] + 1)) if len(ks) == ks[-1] - ks[0] + 1 else ks
        pts = [cycle[ks[0]]] + [cycle[k + 1] for k in ks]
        sides = tuple(Side.of(cycle[k], cycle[k + 1]) for k in ks)
        segments = tuple(_runs(pts))
        walls = _walls(comps[lab], set(sides), pts[0], pts[-1])
        kind = PARALLEL if walls[0].horizontal == walls[1].horizontal else ORTHOGONAL
        gates.append(Gate(segments, sides, walls, kind, comps[lab]))

    first = min(min(spans[l]) for l in order)
    last = max(max(spans[l]) for l in order)
    alpha = len(_runs(cycle[:first + 1]))
    beta = len(_runs(cycle[last + 1:]))
    return Decomposition(g, visible, tuple(gates), alpha, beta, tuple(flags))


def adjacent(a: Gate, b: Gate) -> bool:
    return bool(set(a.endpoints) & set(b.endpoints))


def orient_gates(gates, alpha: int, beta: int, strict: bool = False) -> list[str]:
    """Orientation per gate.  With ``strict`` the uncovered two-gate case
    raises :class:`CaseGap`; otherwise it falls back to (ccw, cw), or to
    (cw, cw) when the two gates touch."""
    k = len(gates)
    if k == 0:
        raise ValueError("no gates")
    if k == 1:
        return [CW if alpha == 1 else CCW]
    if k == 2:
        if alpha == 1 and beta == 1:
            return [CW, CCW]
        if alpha == 1:
            return [CW, CW]
        if beta == 1:
            return [CCW, CCW]
        if strict:
            raise CaseGap(f"k=2 with alpha={alpha}, beta={beta}")
        # gates sharing an endpoint must agree, so they follow the k >= 3 rule
        return [CW, CW] if adjacent(gates[0], gates[1]) else [CCW, CW]
    split = next((i for i in range(k - 1) if not adjacent(gates[i], gates[i + 1])),
                 k - 1)
    return [CW] * (split + 1) + [CCW] * (k - split - 1)


# -- placement ----------------------------------------------------------------

def _normal(side: Side, sub) -> tuple[int, int]:
    """Unit vector from the visible side of ``side`` into ``sub``."""
    a = side.a
    if side.horizontal:
        return (0, 1) if Cell(a.x, a.y) in sub else (0, -1)
    return (1, 0) if Cell(a.x, a.y) in sub else (-1, 0)


def _rot(v, r):
    return tuple(transform_point(v, r))


class _Frame:
    """A quarter-turn view of the gate and its subshape."""

    def __init__(self, gate: Gate, r: int):
        self.r = r
        self.sub = {transform_cell(c, r) for c in gate.subshape}
        self.sides = [Side.of(transform_point(s.a, r), transform_point(s.b, r))
                      for s in gate.sides]
        self.walls = [Side.of(transform_point(w.a, r), transform_point(w.b, r))
                      for w in gate.walls]

    def back(self, p) -> Point:
        return transform_point(p, (4 - self.r) % 4)


def _canonical(gate: Gate):
    """Pick a rotation and the case label for placement."""
    normals = {_normal(s, gate.subshape) for s in gate.sides}
    for r in range(4):
        nr = {_rot(n, r) for n in normals}
        if gate.kind == PARALLEL:
            if nr == {(0, 1)}:
                return _Frame(gate, r), "parallel"
        elif nr == {(0, 1), (-1, 0)}:
            return _Frame(gate, r), "corner"
        elif nr == {(0, 1)}:
            f = _Frame(gate, r)
            xs = [p.x for s in f.sides for p in s]
            y = f.sides[0].a.y
            left = Point(min(xs), y)
            if any(w.horizontal and left in w for w in f.walls):
                return f, "top-only"
        elif nr == {(-1, 0)}:
            f = _Frame(gate, r)
            ys = [p.y for s in f.sides for p in s]
            x = f.sides[0].a.x
            top = Point(x, max(ys))
            if any(not w.horizontal and top in w for w in f.walls):
                return f, "left-only"
    raise PlacementError(f"no canonical frame for gate {gate.segments}")


def _grow(sub, row) -> int:
    """How many times ``row`` (a cell generator per layer) fits in ``sub``."""
    h = 0
    while all(c in sub for c in row(h)):
        h += 1
    return h


def _first_vertex(c: Point, step, sub, is_vertex) -> Point:
    p = c
    while True:
        p = Point(p.x + step[0], p.y + step[1])
        if is_vertex(p) or not _touching(sub, [p]):
            return p


def _push(sub, row, line, is_vertex) -> int:
    """Sweep a gate segment away from the gate, one row at a time, until a
    vertex lies on it or the next row leaves ``sub``."""
    h = 0
    while all(c in sub for c in row(h)):
        h += 1
        if any(is_vertex(p) for p in line(h)):
            break
    return h


PUSH_ORTHOGONAL = True


def _candidates(frame: _Frame, case: str, orientation: str, is_vertex) -> list[Point]:
    sub = frame.sub
    hs = [s for s in frame.sides if s.horizontal]
    vs = [s for s in frame.sides if not s.horizontal]
    if case == "parallel":
        y = hs[0].a.y
        a = min(s.a.x for s in hs)
        b = max(s.b.x for s in hs)
        h = _grow(sub, lambda k: [Cell(x, y + k) for x in range(a, b)])
        top = y + h
        if orientation == CW:
            pts = [Point(x, top) for x in range(a + 1, b + 1)]
            pts += [Point(b, yy) for yy in range(y + 1, top)]
        else:
            pts = [Point(x, top) for x in range(a, b)]
            pts += [Point(a, yy) for yy in range(y + 1, top)]
        return pts
    if case == "corner":
        c = Point(min(s.a.x for s in hs), hs[0].a.y)
    elif case == "top-only":
        c = Point(min(s.a.x for s in hs), hs[0].a.y)
    else:
        c = Point(vs[0].a.x, max(s.b.y for s in vs))
    if orientation == CCW:
        if vs:
            lo = min(s.a.y for s in vs)
            row = lambda k: [Cell(c.x - 1 - k, yy) for yy in range(lo, c.y)]
            line = lambda k: [Point(c.x - k, yy) for yy in range(lo, c.y + 1)]
            w = _push(sub, row, line, is_vertex) if PUSH_ORTHOGONAL else _grow(sub, row)
            x = c.x - w
            return [Point(x, yy) for yy in range(lo, c.y + 1)]
        # horizontal gate only: L collapses onto the wall running left from
        # c, and the guard is the first vertex met along it
        return [_first_vertex(c, (-1, 0), sub, is_vertex)]
    if hs:
        hi = max(s.b.x for s in hs)
        row = lambda k: [Cell(xx, c.y + k) for xx in range(c.x, hi)]
        line = lambda k: [Point(xx, c.y + k) for xx in range(c.x, hi + 1)]
        h = _push(sub, row, line, is_vertex) if PUSH_ORTHOGONAL else _grow(sub, row)
        return [Point(xx, c.y + h) for xx in range(c.x, hi + 1)]
    # vertical gate only: T collapses onto the wall running up from c
    return [_first_vertex(c, (0, 1), sub, is_vertex)]


def place_next_guard(poly: Polyomino, gate: Gate, orientation: str | None = None) -> Point:
    """The guard placed behind ``gate``.  Among admissible vertices the one
    farthest (geodesically) from the gate wins, then the smallest point."""
    orientation = orientation or gate.orientation
    frame, case = _canonical(gate)
    pts = {frame.back(p) for p in _candidates(
        frame, case, orientation, lambda q: frame.back(q) in poly.vertices)}
    gate_pts = gate.points
    pts = [p for p in pts if p in poly.vertices and p not in gate_pts]
    if not pts:
        raise PlacementError(f"no admissible vertex behind gate {gate.segments}")
    graph = lattice_graph(poly)
    rows = graph.distances_from(sorted(gate_pts))
    near = rows.min(axis=0)
    idx = cell_index(poly)
    must_see = idx.mask_of(_touching(gate.subshape, gate_pts))

    def key(p):
        blind = must_see & ~idx.bits(p) != 0
        return (blind, -near[graph.index[p]], p)

    return min(pts, key=key)


# -- driver -------------------------------------------------------------------

def _touching(sub, pts) -> set:
    out = set()
    for p in pts:
        for c in (Cell(p.x, p.y), Cell(p.x - 1, p.y), Cell(p.x, p.y - 1),
                  Cell(p.x - 1, p.y - 1)):
            if c in sub:
                out.add(c)
    return out


def _check_gates(gates, orients, violations, guard):
    for i in range(len(gates)):
        for j in range(i + 1, len(gates)):
            a, b = gates[i], gates[j]
            if not adjacent(a, b):
                continue
            if orients[i] != orients[j]:
                violations.append(("same-orientation", tuple(guard), i, j))
            if a.kind != PARALLEL or b.kind != PARALLEL or len(a.segments) != 1 \
                    or len(b.segments) != 1 or a.sides[0].horizontal == b.sides[0].horizontal:
                violations.append(("parallel-orthogonal", tuple(guard), i, j))


def solve_worstcase(poly: Polyomino, start=None, debug: bool = True) -> WorstCaseResult:
    """Cover a simple polyomino with guards pairwise at distance >= 3."""
    if not poly.is_simple:
        raise NotSimple("the polyomino has holes")
    g0 = Point(*start) if start is not None else min(poly.vertices)
    if g0 not in poly.vertices:
        raise ValueError(f"{tuple(g0)} is not a vertex")
    idx = cell_index(poly)
    graph = lattice_graph(poly) if debug else None
    root = RecursionNode(g0)
    guards = {g0}
    violations: list = []
    gaps = 0
    stack = [(root, frozenset(poly.cells))]
    while stack:
        node, region = stack.pop()
        try:
            dec = decompose(poly, node.guard, region)
        except FullyVisible:
            continue
        node.flags.extend(dec.flags)
        orients = orient_gates(dec.gates, dec.alpha, dec.beta)
        if len(dec.gates) == 2 and dec.alpha > 1 and dec.beta > 1:
            node.flags.append("case-gap")
            gaps += 1
        gates = [replace(gt, orientation=o) for gt, o in zip(dec.gates, orients)]
        if debug:
            _check_gates(gates, orients, violations, node.guard)
        for gate in gates:
            nxt = place_next_guard(poly, gate)
            seen = frozenset(idx.cells_of(idx.bits(nxt)))
            child = RecursionNode(nxt, gate_in=gate)
            node.children.append(child)
            guards.add(nxt)
            if debug:
                sub = gate.subshape
                if not _touching(sub, [nxt]):
                    violations.append(("behind-gate", tuple(nxt), "outside subshape"))
                d = graph.distances_from([nxt])[0]
                if min(d[graph.index[p]] for p in gate.points) < 1:
                    violations.append(("behind-gate", tuple(nxt), "on gate"))
                if not _touching(sub, gate.points) <= seen:
                    violations.append(("gate-cells-seen", tuple(nxt)))
                if not (sub - seen) < sub:
                    violations.append(("progress", tuple(nxt)))
            if gate.subshape - seen:
                stack.append((child, frozenset(gate.subshape | seen)))
    result = GuardSet(frozenset(guards))
    return WorstCaseResult(result, root, violations, gaps)

"""Maximum-dispersion guard sets for tree-shaped polyominoes.

In a thin polyomino every maximal rectangle is a 1 x m *strip*, and a vertex
guard sees exactly the strips whose closure contains it.  So a cell is
covered iff one of its (one or two) strips is *hit* by a guard.

The strips cut the shape into pieces (the arrangement ``R'``): junction cells
lying in two strips, and runs of cells lying in one.  Pieces are separated by
*borders*: inner borders between two pieces and outer borders at the ends of
strips.  Rooted at a junction cell, the pieces form a tree, and a border
``b`` with endpoints ``p1, p2`` cleanly separates the shape: all traffic
between the two sides passes through ``p1`` or ``p2``, and only the strip
crossing ``b`` can be hit from one side while covering cells on the other.

The state of a border therefore records

* ``M``   which of ``p1, p2`` carry guards,
* ``D``   whether the crossing strip is hit from below (``below``), must be hit
          from above (``above``) or neither (``free``),
* ``e``   distances from ``p1`` and ``p2`` to the nearest guard strictly below,
          which differ by at most one and are capped at the target distance.

For a fixed target distance the pieces are processed leaves-first, folding
their child borders one at a time; for each ``(M, D)`` only Pareto-maximal
distance pairs survive.  The optimum is found by binary search over the
target distance.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .geodesic import INF, vertex_distances
from .polyomino import Cell, Point, Polyomino, Side
from .verify import GuardSet
from .visibility import cell_index


class NotTreeShaped(ValueError):
    pass


class DegenerateRectangle(ValueError):
    """A single 1 x m strip has no junction cell to root the border tree."""


@dataclass(frozen=True)
class Border:
    p1: Point
    p2: Point
    kind: str           # "inner" | "outer"
    side: Side

    @property
    def positions(self) -> tuple[Point, Point]:
        return self.p1, self.p2


@dataclass
class Piece:
    """One rectangle of the arrangement R'."""

    cells: tuple
    strips: tuple                  # strip ids (1 or 2)
    ports: tuple                   # rectangle corners
    borders: list = field(default_factory=list)
    parent: Border | None = None
    children: list = field(default_factory=list)

    @property
    def junction(self) -> bool:
        return len(self.strips) == 2


def _cell_sides(c):
    x, y = c
    return {
        (1, 0): Side.of((x + 1, y), (x + 1, y + 1)),
        (-1, 0): Side.of((x, y), (x, y + 1)),
        (0, 1): Side.of((x, y + 1), (x + 1, y + 1)),
        (0, -1): Side.of((x, y), (x + 1, y)),
    }


class BorderStructure:
    """Strips, pieces, borders and the rooted piece tree of a tree-shaped,
    simple polyomino."""

    def __init__(self, poly: Polyomino):
        if not poly.is_tree_shaped:
            raise NotTreeShaped("dual graph is not a tree")
        if not poly.is_simple:
            raise NotTreeShaped("tree-shaped polyomino with a pinched hole")
        self.poly = poly
        cells = poly.cells
        # strips: maximal runs of length >= 2, per direction
        self.strip_cells: list[tuple] = []
        self.strip_dir: list[str] = []
        self.hstrip: dict = {}
        self.vstrip: dict = {}
        for direction, (dx, dy), table in (("h", (1, 0), self.hstrip),
                                           ("v", (0, 1), self.vstrip)):
            for c in sorted(cells):
                if (c.x - dx, c.y - dy) in cells:
                    continue
                run = [c]
                while (run[-1].x + dx, run[-1].y + dy) in cells:
                    run.append(Cell(run[-1].x + dx, run[-1].y + dy))
                if len(run) >= 2:
                    sid = len(self.strip_cells)
                    self.strip_cells.append(tuple(run))
                    self.strip_dir.append(direction)
                    for r in run:
                        table[r] = sid
        order = {}
        for i, p in enumerate(poly.boundary_cycles[0]):
            order.setdefault(p, i)
        self.order = order
        self._build_pieces()

    def strips_of(self, c) -> tuple:
        return tuple(s for s in (self.hstrip.get(c), self.vstrip.get(c))
                     if s is not None)

    def crossing_strip(self, c, side_dir) -> int | None:
        """Strip of ``c`` running through its side in direction ``side_dir``."""
        return self.hstrip.get(c) if side_dir[0] else self.vstrip.get(c)

    def _border(self, side: Side, kind: str) -> Border:
        a, b = side
        p1, p2 = (a, b) if self.order[a] <= self.order[b] else (b, a)
        return Border(p1, p2, kind, side)

    def _build_pieces(self):
        poly = self.poly
        piece_of: dict = {}
        pieces: list[Piece] = []
        for c in sorted(poly.cells):
            if c in piece_of:
                continue
            strips = self.strips_of(c)
            if len(strips) != 1:
                run = [c]
            else:
                sid = strips[0]
                run_all = self.strip_cells[sid]
                i = run_all.index(c)
                j = i
                while j + 1 < len(run_all) and len(self.strips_of(run_all[j + 1])) == 1:
                    j += 1
                run = list(run_all[i:j + 1])
            for r in run:
                piece_of[r] = len(pieces)
            xs = [r.x for r in run]
            ys = [r.y for r in run]
            x0, x1, y0, y1 = min(xs), max(xs) + 1, min(ys), max(ys) + 1
            ports = (Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1))
            pieces.append(Piece(tuple(run), strips, ports))
        self.pieces = pieces
        self.piece_of = piece_of

        borders: dict[Side, Border] = {}
        self.border_cells: dict[Border, tuple] = {}   # (cell, outward dir, other)
        for c in sorted(poly.cells):
            for d, side in _cell_sides(c).items():
                n = Cell(c.x + d[0], c.y + d[1])
                if n in poly.cells:
                    if piece_of[n] != piece_of[c] and side not in borders:
                        borders[side] = self._border(side, "inner")
                else:
                    # strip end on the boundary
                    sid = self.crossing_strip(c, d)
                    if sid is not None:
                        run = self.strip_cells[sid]
                        if c in (run[0], run[-1]):
                            borders[side] = self._border(side, "outer")
                    elif not self.strips_of(c):
                        borders[side] = self._border(side, "outer")
                b = borders.get(side)
                if b is not None:
                    pieces[piece_of[c]].borders.append((b, c, d))
        self.borders = borders

    @cached_property
    def maximal_rectangles(self) -> list[tuple]:
        if not self.strip_cells:
            return [tuple(sorted(self.poly.cells))]
        return list(self.strip_cells)

    @cached_property
    def inner_borders(self) -> list[Border]:
        return sorted((b for b in self.borders.values() if b.kind == "inner"),
                      key=lambda b: b.side)

    @cached_property
    def outer_borders(self) -> list[Border]:
        return sorted((b for b in self.borders.values() if b.kind == "outer"),
                      key=lambda b: b.side)

    def partition(self) -> list[tuple]:
        """The arrangement R' as tuples of cells."""
        return [p.cells for p in self.pieces]


@dataclass
class BorderTree:
    root_cell: Cell
    root_piece: int
    parent: dict        # Border -> parent Border (None for borders of root)
    order: list         # piece indices, leaves first
    structure: BorderStructure

    @property
    def nodes(self) -> list[Border]:
        return list(self.parent)

    def children(self, border: Border | None) -> list[Border]:
        return [b for b, p in self.parent.items() if p == border]


def build_borders(poly: Polyomino) -> BorderStructure:
    return BorderStructure(poly)


def build_tree(poly: Polyomino, structure: BorderStructure | None = None) -> BorderTree:
    st = structure or BorderStructure(poly)
    junctions = sorted(c for c in poly.cells if len(st.strips_of(c)) == 2)
    if not junctions:
        raise DegenerateRectangle("a single 1 x m rectangle has no root cell")
    root_cell = junctions[0]
    root = st.piece_of[root_cell]
    pieces = st.pieces
    for p in pieces:
        p.parent, p.children = None, []
    seen = {root}
    queue = deque([root])
    bfs = []
    while queue:
        i = queue.popleft()
        bfs.append(i)
        piece = pieces[i]
        for b, c, d in piece.borders:
            if b is piece.parent:
                continue
            piece.children.append(b)
            if b.kind == "inner":
                other = Cell(c.x + d[0], c.y + d[1])
                j = st.piece_of[other]
                if j not in seen:
                    seen.add(j)
                    pieces[j].parent = b
                    queue.append(j)
    parent: dict = {}
    for i in bfs:
        piece = pieces[i]
        for b in piece.children:
            parent[b] = piece.parent
    return BorderTree(root_cell, root, parent, bfs[::-1], st)


# -- dynamic program ----------------------------------------------------------

_DIRS = ("below", "above", "free")


@dataclass(frozen=True)
class DPState:
    """One surviving row of a border table.

    ``order`` is ``d1 - d2`` for the distances from ``p1``/``p2`` to the
    nearest guard on or below the border; ``score`` is the distance to the
    nearest guard strictly below, saturated at the target distance.
    """

    order: int
    chosen: frozenset
    direction: str
    score: int


@dataclass
class _Entry:
    e: tuple            # capped distances from (p1, p2) to guards strictly below
    guards: frozenset   # points chosen on this piece level (incl. M)
    children: tuple     # child _Entry objects


def _pareto(items, key):
    """Keep items whose ``key`` vector is not dominated (componentwise >=)."""
    items = sorted(items, key=lambda it: tuple(-v for v in key(it)))
    kept = []
    for it in items:
        k = key(it)
        if not any(all(a >= b for a, b in zip(key(o), k)) for o in kept):
            kept.append(it)
    return kept


class _Solver:
    def __init__(self, poly: Polyomino):
        self.poly = poly
        self.structure = BorderStructure(poly)
        self.tree = build_tree(poly, self.structure)
        self.vertices = poly.vertices

    def feasible(self, ell: int, record: dict | None = None):
        st = self.structure
        cap = ell
        table: dict[Border, dict] = {} if record is None else record
        for b in st.outer_borders:
            table[b] = self._leaf(b, cap)
        for pi in self.tree.order:
            piece = st.pieces[pi]
            result = self._combine(piece, table, cap, ell)
            if piece.parent is None:
                return result or None
            if not result:
                return None
            table[piece.parent] = result
        return None

    def _leaf(self, b: Border, cap):
        out = {}
        for chosen in ((), (b.p1,), (b.p2,), (b.p1, b.p2)):
            if not all(p in self.vertices for p in chosen):
                continue
            if len(chosen) == 2 and cap > 1:
                continue
            key = (frozenset(chosen), "below" if chosen else "free")
            out[key] = [_Entry((cap, cap), frozenset(chosen), ())]
        return out

    def _combine(self, piece: Piece, table, cap, ell):
        st = self.structure
        ports = piece.ports
        pidx = {p: i for i, p in enumerate(ports)}
        dist = [[abs(a.x - b.x) + abs(a.y - b.y) for b in ports] for a in ports]
        strips = piece.strips
        sidx = {s: i for i, s in enumerate(strips)}
        on_border = set()
        for b, _, _ in piece.borders:
            on_border.update((b.p1, b.p2))
        own = [p for p in ports if p in self.vertices and p not in on_border]

        # fold state: (yin, decided, hit, need) -> list of (A, entry-list, pts)
        start = []
        for k in range(1 << len(own)):
            pts = [own[i] for i in range(len(own)) if k >> i & 1]
            if any(dist[pidx[a]][pidx[b]] < ell for a in pts for b in pts if a != b):
                continue
            yin = sum(1 << pidx[p] for p in pts)
            decided = sum(1 << pidx[p] for p in own)
            start.append(((yin, decided, 0, 0), ((cap,) * 4, ())))
        states: dict = {}
        for key, val in start:
            states.setdefault(key, []).append(val)

        for b, c, d in piece.borders:
            if b is piece.parent:
                continue
            child_states = table[b]
            sid = sidx[st.crossing_strip(c, d)]
            i1, i2 = pidx[b.p1], pidx[b.p2]
            bmask = (1 << i1) | (1 << i2)
            new_states: dict = {}
            for (yin, decided, hit, need), vals in states.items():
                for (m, dflag), entries in child_states.items():
                    mmask = sum(1 << pidx[p] for p in m)
                    if (yin ^ mmask) & decided & bmask:
                        continue
                    added = mmask & ~yin
                    # new points against existing points
                    if any(dist[a][y] < ell for a in _iter(added)
                           for y in _iter(yin | added) if a != y):
                        continue
                    nhit = hit | (1 << sid) if dflag == "below" else hit
                    nneed = need | (1 << sid) if dflag == "above" else need
                    nyin = yin | mmask
                    ndec = decided | bmask
                    nkey = (nyin, ndec, nhit, nneed)
                    for A, hist in vals:
                        if any(A[a] < ell for a in _iter(added)):
                            continue
                        for ent in entries:
                            e1, e2 = ent.e
                            if A[i1] + e1 < ell or A[i2] + e2 < ell:
                                continue
                            if any(min(dist[y][i1] + e1, dist[y][i2] + e2) < ell
                                   for y in _iter(yin)):
                                continue
                            nA = tuple(min(A[q], dist[q][i1] + e1, dist[q][i2] + e2, cap)
                                       for q in range(4))
                            new_states.setdefault(nkey, []).append((nA, hist + (ent,)))
            states = {k: _pareto(v, key=lambda it: it[0]) for k, v in new_states.items()}
            if not states:
                return {}

        parent = piece.parent
        out: dict = {}
        for (yin, decided, hit, need), vals in states.items():
            if parent is None:
                options = [(yin, frozenset())]
            else:
                options = []
                w = [parent.p1, parent.p2]
                for k in range(4):
                    chosen = [w[i] for i in range(2) if k >> i & 1]
                    if not all(p in self.vertices for p in chosen):
                        continue
                    wmask = sum(1 << pidx[p] for p in w)
                    cmask = sum(1 << pidx[p] for p in chosen)
                    if (yin ^ cmask) & decided & wmask:
                        continue
                    added = cmask & ~yin
                    if any(dist[a][y] < ell for a in _iter(added) for y in _iter(yin)):
                        continue
                    if any(dist[a][b2] < ell for a in _iter(added)
                           for b2 in _iter(added) if a != b2):
                        continue
                    options.append((yin | cmask, frozenset(chosen)))
            for nyin, m in options:
                added = nyin & ~yin
                h, nd = hit, need
                if nyin:
                    h |= (1 << len(strips)) - 1
                resolved = self._resolve(piece, h, nd)
                if resolved is None:
                    continue
                dflag = resolved
                pts = frozenset(ports[i] for i in _iter(nyin))
                for A, hist in vals:
                    if any(A[a] < ell for a in _iter(added)):
                        continue
                    if parent is None:
                        return _Entry((cap, cap), pts, hist)
                    i1, i2 = pidx[parent.p1], pidx[parent.p2]
                    below = [i for i in _iter(nyin) if ports[i] not in m]
                    e1 = min([A[i1]] + [dist[i1][y] for y in below] + [cap])
                    e2 = min([A[i2]] + [dist[i2][y] for y in below] + [cap])
                    ent = _Entry((e1, e2), pts, hist)
                    out.setdefault((m, dflag), []).append(ent)
        if parent is None:
            return None
        return {k: _pareto(v, key=lambda ent: ent.e) for k, v in out.items()}

    def _resolve(self, piece: Piece, hit: int, need: int):
        """Settle coverage inside ``piece``; return the parent border's
        seeing direction, or None when infeasible."""
        st = self.structure
        strips = piece.strips
        if piece.parent is None:
            up = None
        else:
            _, c, d = next(t for t in piece.borders if t[0] is piece.parent)
            up = strips.index(st.crossing_strip(c, d))
        for i in range(len(strips)):
            if i != up and need >> i & 1 and not hit >> i & 1:
                return None
        if not hit:
            # every cell of the piece needs one of its strips
            if up is None:
                return None
            need |= 1 << up
        if up is None:
            return "below"
        if hit >> up & 1:
            return "below"
        if need >> up & 1:
            return "above"
        return "free"

    def witness(self, root: _Entry) -> GuardSet:
        pts = set()
        stack = [root]
        while stack:
            ent = stack.pop()
            pts |= ent.guards
            stack.extend(ent.children)
        return GuardSet(frozenset(pts))


def _state_rows(border: Border, states: dict) -> list[DPState]:
    rows = []
    for (m, direction), entries in states.items():
        for ent in entries:
            d1 = 0 if border.p1 in m else (1 if border.p2 in m else ent.e[0])
            d2 = 0 if border.p2 in m else (1 if border.p1 in m else ent.e[1])
            d1, d2 = min(d1, ent.e[0]), min(d2, ent.e[1])
            rows.append(DPState(max(-1, min(1, d1 - d2)), m, direction,
                                min(ent.e)))
    return sorted(rows, key=lambda r: (sorted(r.chosen), r.direction, r.order))


def dump_tables(poly: Polyomino, ell: int) -> str:
    """Border tree and per-border state tables for target distance ``ell``,
    one border per block, children listed under their parent."""
    solver = _Solver(poly)
    table: dict = {}
    ok = solver.feasible(int(ell), record=table) is not None
    tree = solver.tree
    lines = [f"root_cell {tree.root_cell.x} {tree.root_cell.y}",
             f"ell {int(ell)} feasible {str(ok).lower()}"]

    def fmt(p):
        return f"({p.x},{p.y})"

    def walk(border, depth):
        for b in sorted(tree.children(border), key=lambda b: b.side):
            pad = "  " * depth
            lines.append(f"{pad}border {b.kind} {fmt(b.p1)} {fmt(b.p2)}")
            for r in _state_rows(b, table.get(b, {})):
                chosen = ",".join(fmt(p) for p in sorted(r.chosen)) or "-"
                lines.append(f"{pad}  O={r.order:+d} M={chosen} D={r.direction} s={r.score}")
            walk(b, depth + 1)

    walk(None, 0)
    return "\n".join(lines) + "\n"


def _iter(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _single_cover(poly: Polyomino):
    idx = cell_index(poly)
    for v in sorted(poly.vertices):
        if idx.visible(v).all():
            return v
    return None


def feasible_for(poly: Polyomino, ell) -> GuardSet | None:
    """A guard set with pairwise distance >= ``ell`` or ``None``."""
    if not poly.is_tree_shaped:
        raise NotTreeShaped("dual graph is not a tree")
    single = _single_cover(poly)
    if ell == INF:
        return None if single is None else GuardSet(frozenset([single]))
    if single is not None:
        return GuardSet(frozenset([single]))
    solver = _Solver(poly)
    root = solver.feasible(int(ell))
    return None if root is None else solver.witness(root)


def solve_tree(poly: Polyomino) -> tuple:
    """``(best dispersion, witness)`` for a tree-shaped polyomino."""
    if not poly.is_tree_shaped:
        raise NotTreeShaped("dual graph is not a tree")
    single = _single_cover(poly)
    if single is not None:
        return INF, GuardSet(frozenset([single]))
    solver = _Solver(poly)
    _, dist = vertex_distances(poly)
    lo, hi = 1, int(dist.max())
    best, best_root = None, None
    while lo <= hi:
        mid = (lo + hi) // 2
        root = solver.feasible(mid)
        if root is not None:
            best, best_root = mid, root
            lo = mid + 1
        else:
            hi = mid - 1
    if best is None:
        raise RuntimeError("no guard set found at distance 1")
    return best, solver.witness(best_root)

"""Formulas, layouts, and composition of gadgets into one polyomino."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .gadgets import GadgetBlueprint, Port, gadget_by_name
from .polyomino import Cell, Point, Polyomino
from .verify import GuardSet

DIRS = {"U": (0, 1), "D": (0, -1), "L": (-1, 0), "R": (1, 0)}
MIN_SPACING = 5


class FormulaError(ValueError):
    pass


class LayoutError(ValueError):
    pass


class Overlap(LayoutError):
    pass


class PortMismatch(LayoutError):
    pass


class Disconnected(LayoutError):
    pass


class UnsatisfiedClause(Exception):
    """Raised by :func:`guards_from_assignment`; ``guards`` still holds the
    (deliberately non-dispersive) guard set."""

    def __init__(self, clauses, guards: GuardSet):
        super().__init__(f"clauses {clauses} are not satisfied")
        self.clauses = clauses
        self.guards = guards


# -- formulas -----------------------------------------------------------------

@dataclass(frozen=True)
class Formula:
    n: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for i, cl in enumerate(self.clauses, 1):
            if len(cl) not in (2, 3):
                raise FormulaError(f"clause {i} has {len(cl)} literals, expected 2 or 3")
            if any(l == 0 or abs(l) > self.n for l in cl):
                raise FormulaError(f"clause {i} mentions a variable outside 1..{self.n}")
            if len({l > 0 for l in cl}) != 1:
                raise FormulaError(f"clause {i} is not monotone")

    def satisfied(self, assignment) -> list[int]:
        """Indices (1-based) of clauses the assignment leaves unsatisfied."""
        bad = []
        for i, cl in enumerate(self.clauses, 1):
            if not any((assignment[abs(l) - 1] == 1) == (l > 0) for l in cl):
                bad.append(i)
        return bad


def parse_formula(text: str) -> Formula:
    """DIMACS subset: ``c`` comments, one ``p cnf n m`` header, clauses
    ending in 0."""
    n = m = None
    lits: list[int] = []
    clauses = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf" or n is not None:
                raise FormulaError(f"line {lineno}: bad header")
            n, m = int(parts[2]), int(parts[3])
            continue
        if n is None:
            raise FormulaError(f"line {lineno}: clause before header")
        try:
            nums = [int(t) for t in line.split()]
        except ValueError as exc:
            raise FormulaError(f"line {lineno}: {exc}") from None
        for v in nums:
            if v == 0:
                clauses.append(tuple(lits))
                lits = []
            else:
                lits.append(v)
    if n is None:
        raise FormulaError("missing header")
    if lits:
        raise FormulaError("last clause is not terminated by 0")
    if len(clauses) != m:
        raise FormulaError(f"header announces {m} clauses, found {len(clauses)}")
    return Formula(n, tuple(clauses))


def format_formula(phi: Formula) -> str:
    lines = [f"p cnf {phi.n} {len(phi.clauses)}"]
    lines += [" ".join(map(str, cl)) + " 0" for cl in phi.clauses]
    return "\n".join(lines) + "\n"


def parse_assignment(text: str) -> tuple[int, ...]:
    s = text.strip()
    vals = s.replace(",", " ").split() if ("," in s or " " in s) else list(s)
    if not vals or any(v not in ("0", "1") for v in vals):
        raise FormulaError(f"bad assignment {text!r}")
    return tuple(int(v) for v in vals)


# -- layouts --------------------------------------------------------------------

@dataclass(frozen=True)
class Placement:
    gid: str
    kind: str
    x: int
    y: int
    sym: int = 0
    stretch: int = 0


@dataclass(frozen=True)
class Wire:
    src: tuple[str, str]
    dst: tuple[str, str]
    moves: tuple[tuple[str, int], ...]


@dataclass
class Layout:
    placements: dict = field(default_factory=dict)
    wires: list = field(default_factory=list)
    variables: dict = field(default_factory=dict)   # gid -> variable index
    clauses: dict = field(default_factory=dict)     # gid -> clause index


_SYM_FLAGS = {"mx": 4, "my": 6}
_MOVE = re.compile(r"^([UDLR])(\d+)$")


def parse_moves(text: str) -> tuple[tuple[str, int], ...]:
    out = []
    for tok in text.split():
        m = _MOVE.match(tok)
        if not m or int(m.group(2)) < 1:
            raise LayoutError(f"bad move {tok!r}")
        out.append((m.group(1), int(m.group(2))))
    return tuple(out)


def _endpoint(tok: str) -> tuple[str, str]:
    gid, dot, port = tok.partition(".")
    if not dot:
        raise LayoutError(f"expected gadget.port, got {tok!r}")
    return gid, port


def parse_layout(text: str) -> Layout:
    """Line format::

        gadget <id> <type> <x> <y> [mx|my|sym=N] [stretch=K]
        var <id> <variable index>
        clause <id> <clause index>
        wire <id>.<port> <id>.<port> <moves>
    """
    lay = Layout()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "gadget":
                gid, kind, x, y = parts[1], parts[2], int(parts[3]), int(parts[4])
                sym, stretch = 0, 0
                for opt in parts[5:]:
                    if opt in _SYM_FLAGS:
                        sym = _SYM_FLAGS[opt]
                    elif opt.startswith("sym="):
                        sym = int(opt[4:]) % 8
                    elif opt.startswith("stretch="):
                        stretch = int(opt[8:])
                    else:
                        raise LayoutError(f"unknown option {opt!r}")
                if gid in lay.placements:
                    raise LayoutError(f"duplicate gadget id {gid!r}")
                lay.placements[gid] = Placement(gid, kind, x, y, sym, stretch)
            elif parts[0] == "var":
                lay.variables[parts[1]] = int(parts[2])
            elif parts[0] == "clause":
                lay.clauses[parts[1]] = int(parts[2])
            elif parts[0] == "wire":
                lay.wires.append(Wire(_endpoint(parts[1]), _endpoint(parts[2]),
                                      parse_moves(" ".join(parts[3:]))))
            else:
                raise LayoutError(f"unknown directive {parts[0]!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, LayoutError):
                raise LayoutError(f"line {lineno}: {exc}") from None
            raise LayoutError(f"line {lineno}: malformed {parts[0]!r} line") from None
    return lay


def format_layout(lay: Layout) -> str:
    lines = []
    for p in lay.placements.values():
        opts = ([f"sym={p.sym}"] if p.sym else []) + ([f"stretch={p.stretch}"] if p.stretch else [])
        lines.append(" ".join(["gadget", p.gid, p.kind, str(p.x), str(p.y), *opts]))
    lines += [f"var {g} {i}" for g, i in lay.variables.items()]
    lines += [f"clause {g} {i}" for g, i in lay.clauses.items()]
    for w in lay.wires:
        moves = " ".join(f"{d}{n}" for d, n in w.moves)
        lines.append(f"wire {w.src[0]}.{w.src[1]} {w.dst[0]}.{w.dst[1]} {moves}")
    return "\n".join(lines) + "\n"


# -- routing -------------------------------------------------------------------

@dataclass(frozen=True)
class Turn:
    """A bend unit: ``back`` guards the incoming strip, ``front`` the
    outgoing one.  The two cannot coexist at distance 5."""
    back: Point
    front: Point


@dataclass(frozen=True)
class Route:
    wire: Wire
    cells: tuple[Cell, ...]
    turns: tuple[Turn, ...]
    junctions: tuple[int, ...]    # cell indices of strip junctions


def _corner(c, sx, sy) -> Point:
    return Point(c[0] + (sx > 0), c[1] + (sy > 0))


def build_route(start: Cell, moves) -> tuple[list[Cell], list[Turn], list[int], tuple]:
    """Cells of a wire starting at ``start``.  A change of direction d -> e
    inserts a bend: two cells along e, one jog cell along d, then the run
    continues along e from the jog cell."""
    cells = [Cell(*start)]
    turns, junctions = [], []
    prev = None
    for i, (dname, n) in enumerate(moves):
        e = DIRS[dname]
        if prev is not None:
            if e == prev or e == (-prev[0], -prev[1]):
                raise LayoutError(f"move {dname}{n} does not turn")
            ja = cells[-1]
            s1 = Cell(ja.x + e[0], ja.y + e[1])
            jb = Cell(s1.x + e[0], s1.y + e[1])
            jog = Cell(jb.x + prev[0], jb.y + prev[1])
            junctions += [len(cells) - 1, len(cells) + 2]
            cells += [s1, jb, jog]
            back = _corner(ja, prev[0] - e[0], prev[1] - e[1])
            front = _corner(jb, prev[0] + e[0], prev[1] + e[1])
            turns.append(Turn(back, front))
            n -= 1            # the jog cell opens the new run
        c = cells[-1]
        for _ in range(n if prev is not None else n - 1):
            c = Cell(c.x + e[0], c.y + e[1])
            cells.append(c)
        prev = e
    return cells, turns, junctions, prev


@dataclass
class Composition:
    polyomino: Polyomino
    gadgets: dict          # gid -> placed GadgetBlueprint
    routes: list
    port_map: dict         # (gid, port) -> wire index
    layout: Layout
    formula: Formula | None = None


def _place(p: Placement) -> GadgetBlueprint:
    try:
        bp = gadget_by_name(p.kind, p.stretch)
    except (KeyError, ValueError) as exc:
        raise LayoutError(str(exc)) from None
    return bp.transformed(p.sym, p.x, p.y)


def compose(phi: Formula | None, layout: Layout) -> Composition:
    if not layout.placements:
        raise Disconnected("layout places no gadgets")
    gadgets = {gid: _place(p) for gid, p in layout.placements.items()}
    owner: dict[Cell, str] = {}
    for gid, bp in gadgets.items():
        for c in bp.shape.cells:
            if c in owner:
                raise Overlap(f"gadgets {owner[c]} and {gid} overlap at {tuple(c)}")
            owner[c] = gid

    routes, port_map = [], {}
    joints = set()
    for k, w in enumerate(layout.wires):
        ends = []
        for gid, pname in (w.src, w.dst):
            if gid not in gadgets or pname not in gadgets[gid].ports:
                raise PortMismatch(f"unknown port {gid}.{pname}")
            if (gid, pname) in port_map:
                raise PortMismatch(f"port {gid}.{pname} wired twice")
            port_map[(gid, pname)] = k
            ends.append(gadgets[gid].ports[pname])
        sp, dp = ends
        if sp.kind != "out" or dp.kind != "in":
            raise PortMismatch(f"wire {k} must run from an output to an input")
        if not w.moves or DIRS[w.moves[0][0]] != sp.dir:
            raise PortMismatch(f"wire {k} must leave {w.src[0]}.{w.src[1]} along its direction")
        cells, turns, junctions, last = build_route(sp.outside, w.moves)
        if last != (-dp.dir[0], -dp.dir[1]) or dp.outside != cells[-1]:
            raise PortMismatch(f"wire {k} ends at {tuple(cells[-1])}, "
                               f"not at port {w.dst[0]}.{w.dst[1]}")
        marks = [-1 - sp.depth, *junctions, len(cells) + dp.depth]
        # runs between bends: source junction -> first bend -> ... -> target
        if any(b - a < MIN_SPACING for a, b in zip(marks[::2], marks[1::2])):
            raise LayoutError(f"wire {k} has junctions closer than {MIN_SPACING}")
        rid = f"wire{k}"
        for c in cells:
            if c in owner:
                raise Overlap(f"wire {k} runs through {owner[c]} at {tuple(c)}")
            owner[c] = rid
        joints |= {(rid, cells[0], w.src[0], sp.cell), (rid, cells[-1], w.dst[0], dp.cell)}
        routes.append(Route(w, tuple(cells), tuple(turns), tuple(junctions)))

    _check_contacts(owner, joints)
    for gid, bp in gadgets.items():
        for p in bp.inputs:
            if (gid, p.name) not in port_map:
                raise PortMismatch(f"input {gid}.{p.name} is not wired")
        if not bp.caps:
            for p in bp.outputs:
                if (gid, p.name) not in port_map:
                    raise PortMismatch(f"output {gid}.{p.name} is not wired")
    try:
        poly = Polyomino(owner)
    except ValueError as exc:
        raise Disconnected(str(exc)) from None
    comp = Composition(poly, gadgets, routes, port_map, layout, phi)
    if phi is not None:
        _check_bindings(comp, phi)
    return comp


def _check_contacts(owner, joints):
    allowed = set()
    for rid, rc, gid, gc in joints:
        allowed |= {(rc, gc), (gc, rc)}
    for c, who in owner.items():
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                d = Cell(c.x + dx, c.y + dy)
                other = owner.get(d)
                if other is None or other == who:
                    continue
                if abs(dx) + abs(dy) == 1 and (c, d) in allowed:
                    continue
                if abs(dx) + abs(dy) == 2 and any((c, g) in allowed or (d, g) in allowed
                                                  for g in (Cell(c.x, d.y), Cell(d.x, c.y))):
                    # diagonal contact right at a joint is part of the joint
                    if Cell(c.x, d.y) not in owner and Cell(d.x, c.y) not in owner:
                        raise Overlap(f"{who} and {other} touch at a corner near {tuple(c)}")
                    continue
                raise Overlap(f"{who} and {other} touch at {tuple(c)}")


def _sources(comp: Composition):
    """For each wired input: the (gid, port) feeding it."""
    return {w.dst: w.src for w in comp.layout.wires}


def trace_literal(comp: Composition, gid: str, port: str) -> tuple[str, str]:
    """Follow wires and duplicators back to a variable port."""
    feed = _sources(comp)
    seen = set()
    node = feed.get((gid, port))
    while node is not None:
        if node in seen:
            raise LayoutError("wiring contains a cycle")
        seen.add(node)
        g, p = node
        bp = comp.gadgets[g]
        if bp.caps:                       # a variable
            return node
        ins = bp.inputs
        if len(ins) != 1:
            raise LayoutError(f"{g} cannot forward a literal")
        node = feed.get((g, ins[0].name))
    raise PortMismatch(f"{gid}.{port} is not fed by a variable")


def _check_bindings(comp: Composition, phi: Formula):
    lay = comp.layout
    for gid, idx in lay.variables.items():
        if not comp.gadgets[gid].caps:
            raise LayoutError(f"{gid} is not a variable gadget")
        if not 1 <= idx <= phi.n:
            raise LayoutError(f"{gid} bound to missing variable {idx}")
    if sorted(lay.variables.values()) != list(range(1, phi.n + 1)):
        raise LayoutError("each variable needs exactly one gadget")
    if sorted(lay.clauses.values()) != list(range(1, len(phi.clauses) + 1)):
        raise LayoutError("each clause needs exactly one gadget")
    for gid, idx in lay.clauses.items():
        bp = comp.gadgets[gid]
        lits = []
        for leg in bp.legs:
            vg, vp = trace_literal(comp, gid, leg.port)
            if vg not in lay.variables:
                raise LayoutError(f"variable gadget {vg} is unbound")
            v = lay.variables[vg]
            lits.append(v if vp == "pos" else -v)
        if sorted(lits) != sorted(phi.clauses[idx - 1]):
            raise PortMismatch(f"clause gadget {gid} wires {sorted(lits)}, "
                               f"clause {idx} is {list(phi.clauses[idx - 1])}")


# -- witness guards --------------------------------------------------------------

def _delivery(comp: Composition, values: dict) -> tuple[dict, dict]:
    """Propagate truth from variables: returns (gadget state, delivered ports)."""
    delivered: dict[tuple[str, str], bool] = {}
    state: dict[str, str] = {}
    feed = _sources(comp)
    for gid, bp in comp.gadgets.items():
        if bp.caps:
            st = "true" if values[gid] else "false"
            state[gid] = st
            for p in bp.outputs:
                delivered[(gid, p.name)] = p.name in bp.states[st].delivers
    pending = [g for g in comp.gadgets if g not in state]
    while pending:
        progress = False
        for gid in list(pending):
            bp = comp.gadgets[gid]
            srcs = [feed[(gid, p.name)] for p in bp.inputs]
            if not all(s in delivered for s in srcs):
                continue
            ins = {p.name: delivered[s] for p, s in zip(bp.inputs, srcs)}
            for p in bp.inputs:
                delivered[(gid, p.name)] = ins[p.name]
            if bp.legs:
                state[gid] = "clause"
            else:
                st = "true" if all(ins.values()) else "false"
                state[gid] = st
                for p in bp.outputs:
                    delivered[(gid, p.name)] = p.name in bp.states[st].delivers
            pending.remove(gid)
            progress = True
        if not progress:
            raise LayoutError("wiring contains a cycle")
    return state, delivered


def witness_guards(comp: Composition, values: dict) -> tuple[set, list[str]]:
    """Guards for variable gadget truth values ``{gid: 0/1}``; also
    returns the clause gadgets left without a true input."""
    state, delivered = _delivery(comp, values)
    guards: set[Point] = set()
    failed = []
    for gid, bp in comp.gadgets.items():
        if bp.legs:
            on = [leg for leg in bp.legs if delivered[(gid, leg.port)]]
            for leg in bp.legs:
                guards.add(leg.front if leg in on else leg.back)
            if not on:
                # no input is true: the hub needs a guard too close to a leg
                guards.add(bp.legs[0].front)
                failed.append(gid)
            continue
        st = bp.states[state[gid]]
        guards |= st.guards
        for pname, cap in bp.caps.items():
            if (gid, pname) not in comp.port_map and pname not in st.delivers:
                guards |= cap
    for r in comp.routes:
        on = delivered[r.wire.src]
        guards |= {t.front if on else t.back for t in r.turns}
    return guards, failed


def guards_from_assignment(phi: Formula, layout: Layout | Composition, assignment,
                           strict: bool = True) -> GuardSet:
    """Witness guard set for a truth assignment.  When a clause is left
    unsatisfied the set still covers P but has dispersion below 5; with
    ``strict`` this raises :class:`UnsatisfiedClause` carrying the set."""
    comp = layout if isinstance(layout, Composition) else compose(phi, layout)
    assignment = tuple(int(a) for a in assignment)
    if len(assignment) != phi.n:
        raise FormulaError(f"assignment has {len(assignment)} values, formula has {phi.n} variables")
    values = {gid: assignment[i - 1] for gid, i in comp.layout.variables.items()}
    pts, failed = witness_guards(comp, values)
    gs = GuardSet(frozenset(pts))
    if failed and strict:
        raise UnsatisfiedClause(sorted(comp.layout.clauses[g] for g in failed), gs)
    return gs

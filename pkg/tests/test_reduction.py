import itertools

import pytest

from dispersive_agp.gadgets import load_fixture_text
from dispersive_agp.oracle import exact_max_dispersion, feasible_guard_set
from dispersive_agp.polyomino import Cell
from dispersive_agp.reduction import (Disconnected, FormulaError, Formula, LayoutError, Overlap,
                                      PortMismatch, UnsatisfiedClause, build_route, compose,
                                      format_formula, format_layout, guards_from_assignment,
                                      parse_assignment, parse_formula, parse_layout)
from dispersive_agp.verify import verify

ONE = """\
gadget x1 variable 0 0
var x1 1
gadget d1 duplicator 4 2
gadget C clause2 15 16
clause C 1
wire x1.pos d1.in R2
wire d1.o1 C.in0 U9 R4
wire d1.o2 C.in1 R7 U10 R4
"""
ONE_PHI = "p cnf 1 1\n1 1 0\n"


@pytest.fixture(scope="module")
def one():
    phi = parse_formula(ONE_PHI)
    return phi, compose(phi, parse_layout(ONE))


@pytest.fixture(scope="module")
def fig():
    phi = parse_formula(load_fixture_text("reference.cnf"))
    return phi, compose(phi, parse_layout(load_fixture_text("reference.layout")))


def test_parse_formula():
    phi = parse_formula("c demo\np cnf 3 2\n1 2 3 0\n-1 -2 0\n")
    assert phi == Formula(3, ((1, 2, 3), (-1, -2)))
    assert parse_formula(format_formula(phi)) == phi
    # clauses may span lines
    assert parse_formula("p cnf 2 1\n1\n2 0\n").clauses == ((1, 2),)


@pytest.mark.parametrize("text", [
    "p cnf 2 1\n1 -2 0\n",        # mixed signs
    "p cnf 2 1\n1 0\n",           # one literal
    "p cnf 4 1\n1 2 3 4 0\n",     # four literals
    "p cnf 2 1\n1 3 0\n",         # unknown variable
    "1 2 0\n",                    # no header
    "p cnf 2 2\n1 2 0\n",         # count mismatch
    "p cnf 2 1\n1 2\n",           # unterminated
    "p cnf 2 1\n1 x 0\n",
])
def test_bad_formulas(text):
    with pytest.raises(FormulaError):
        parse_formula(text)


def test_formula_satisfied():
    phi = parse_formula(load_fixture_text("reference.cnf"))
    assert phi.satisfied((0, 1, 1, 1, 0)) == []
    assert phi.satisfied((1, 1, 1, 1, 0)) == [4]


def test_parse_assignment():
    assert parse_assignment("01110") == (0, 1, 1, 1, 0)
    assert parse_assignment("0,1, 1") == (0, 1, 1)
    for bad in ("", "012", "a"):
        with pytest.raises(FormulaError):
            parse_assignment(bad)


def test_layout_round_trip():
    lay = parse_layout(load_fixture_text("reference.layout"))
    again = parse_layout(format_layout(lay))
    assert again == lay
    assert lay.placements["C4"].sym == 6 and lay.placements["C4"].stretch == 64


@pytest.mark.parametrize("text", [
    "gadget a variable 0\n",
    "gadget a variable 0 0 wobble\n",
    "gadget a variable 0 0\ngadget a variable 9 9\n",
    "frobnicate\n",
    "wire a b R3\n",
    "wire a.pos b.in R0\n",
    "wire a.pos b.in X3\n",
])
def test_bad_layouts(text):
    with pytest.raises(LayoutError):
        parse_layout(text)


def test_build_route_bend():
    cells, turns, junctions, last = build_route(Cell(0, 0), (("R", 3), ("U", 4)))
    assert cells[:3] == [(0, 0), (1, 0), (2, 0)]
    # two cells up, one jog cell right, then the run continues up
    assert cells[3:6] == [(2, 1), (2, 2), (3, 2)]
    assert cells[-1] == (3, 5) and last == (0, 1)
    assert junctions == [2, 5]
    t, = turns
    assert t.back == (3, 0) and t.front == (3, 3)


def test_small_instance(one):
    phi, comp = one
    p = comp.polyomino
    assert p.is_thin and len(p) == 76
    assert set(comp.gadgets) == {"x1", "d1", "C"}
    gs = guards_from_assignment(phi, comp, (1,))
    assert verify(gs.guards, p, 5).ok
    assert feasible_guard_set(p, 5) is not None


def test_small_instance_unsatisfied(one):
    phi, comp = one
    with pytest.raises(UnsatisfiedClause) as err:
        guards_from_assignment(phi, comp, (0,))
    res = verify(err.value.guards.guards, comp.polyomino)
    assert res.covered and res.dispersion == 4
    assert err.value.clauses == [1]
    relaxed = guards_from_assignment(phi, comp, (0,), strict=False)
    assert relaxed == err.value.guards


def test_assignment_length_checked(one):
    phi, comp = one
    with pytest.raises(FormulaError):
        guards_from_assignment(phi, comp, (1, 0))


def test_layout_object_accepted():
    phi = parse_formula(ONE_PHI)
    gs = guards_from_assignment(phi, parse_layout(ONE), (1,))
    assert len(gs) > 0


def _edit(old, new):
    return ONE.replace(old, new)


@pytest.mark.parametrize("layout, exc", [
    # leaves the port sideways
    (_edit("wire x1.pos d1.in R2", "wire x1.pos d1.in U2 R2"), PortMismatch),
    # misses the target port
    (_edit("wire d1.o1 C.in0 U9 R4", "wire d1.o1 C.in0 U8 R4"), PortMismatch),
    # input to input
    (_edit("wire x1.pos d1.in R2", "wire d1.in x1.pos R2"), PortMismatch),
    (_edit("wire d1.o1 C.in0 U9 R4", "wire d1.o1 C.nope U9 R4"), PortMismatch),
    (_edit("wire d1.o1 C.in0 U9 R4\n", ""), PortMismatch),
    (_edit("gadget d1 duplicator 4 2", "gadget d1 duplicator 1 0"), Overlap),
    (_edit("gadget C clause2 15 16", "gadget C clause7 15 16"), LayoutError),
    ("", Disconnected),
])
def test_composition_errors(layout, exc):
    with pytest.raises(exc):
        compose(parse_formula(ONE_PHI), parse_layout(layout))


def test_short_runs_rejected():
    text = "gadget x1 variable 0 0\nvar x1 1\ngadget d1 duplicator 4 2\n"
    text += "gadget C clause2 15 16\nclause C 1\nwire x1.pos d1.in R2\n"
    text += "wire d1.o1 C.in0 U2 R2 U7 R4\nwire d1.o2 C.in1 R7 U10 R4\n"
    with pytest.raises(LayoutError):
        compose(parse_formula(ONE_PHI), parse_layout(text))


def test_clause_bindings_checked():
    # the layout wires x1 twice into a clause that asks for x1 or x2
    with pytest.raises(LayoutError):
        compose(parse_formula("p cnf 2 1\n1 2 0\n"), parse_layout(ONE))
    with pytest.raises(PortMismatch):
        compose(parse_formula("p cnf 1 1\n-1 -1 0\n"), parse_layout(ONE))


def test_reference_instance_is_valid(fig):
    phi, comp = fig
    p = comp.polyomino
    assert p.is_thin
    variables = comp.layout.variables
    assert sorted(variables.values()) == [1, 2, 3, 4, 5]
    dups = [g for g, bp in comp.gadgets.items() if bp.name == "duplicator"]
    need = 0
    for v in range(1, phi.n + 1):
        for sign in (1, -1):
            uses = sum(1 for cl in phi.clauses if sign * v in cl)
            need += max(uses - 1, 0)
    assert len(dups) == need == 5


def test_reference_instance_all_assignments(fig):
    phi, comp = fig
    for bits in itertools.product((0, 1), repeat=phi.n):
        gs = guards_from_assignment(phi, comp, bits, strict=False)
        res = verify(gs.guards, comp.polyomino)
        assert res.covered
        assert (res.dispersion >= 5) == (not phi.satisfied(bits)), bits
        if phi.satisfied(bits):
            assert res.dispersion == 4


def test_unsatisfiable_formula_drops_below_five():
    phi = parse_formula(load_fixture_text("unsat3.cnf"))
    assert all(phi.satisfied(b) for b in itertools.product((0, 1), repeat=phi.n))
    comp = compose(phi, parse_layout(load_fixture_text("unsat3.layout")))
    assert feasible_guard_set(comp.polyomino, 5) is None
    assert exact_max_dispersion(comp.polyomino).best <= 4
    for bits in itertools.product((0, 1), repeat=phi.n):
        gs = guards_from_assignment(phi, comp, bits, strict=False)
        assert verify(gs.guards, comp.polyomino).dispersion == 4

import json

import pytest

from dispersive_agp.gadgets import (GADGETS, FixtureError, _parse, clause_gadget, connector_L,
                                    connector_Z, corridor, duplicator_gadget, gadget_by_name,
                                    load_fixture_text, variable_gadget)
from dispersive_agp.geodesic import dispersion_distance
from dispersive_agp.oracle import exact_max_dispersion
from dispersive_agp.verify import verify

from gadget_checks import clause_outcomes, connector_outcomes, duplicator_outcomes, feasible, zeta

WIRES = [connector_L, connector_Z, lambda: corridor(1), lambda: corridor(3)]


@pytest.mark.parametrize("name", sorted(GADGETS))
def test_gadget_shapes_are_thin_and_ports_are_open(name):
    bp = gadget_by_name(name)
    assert bp.shape.is_thin
    for p in bp.ports.values():
        assert p.cell in bp.shape and p.outside not in bp.shape
        assert p.corners <= bp.shape.lattice_points
    for cells in bp.marked_cells.values():
        assert set(cells) <= bp.shape.cells
    for st in bp.states.values():
        assert st.guards <= bp.shape.vertices


def test_variable_gadget_optimum():
    v = variable_gadget()
    assert exact_max_dispersion(v.shape).best == 5
    for name, st in v.states.items():
        other = "neg" if name == "true" else "pos"
        assert verify(st.guards | v.caps[other], v.shape, 5).ok


@pytest.mark.parametrize("arity", [2, 3])
@pytest.mark.parametrize("stretch", [0, 1, 2])
def test_clause_alone_versus_one_true_input(arity, stretch):
    bp = clause_gadget(arity, stretch)
    alone, single = clause_outcomes(bp)
    assert not alone
    assert single == [True] * arity


@pytest.mark.parametrize("arity", [2, 3])
def test_clause_leg_guards(arity):
    bp = clause_gadget(arity, 1)
    for leg in bp.legs:
        g = {l.front if l is leg else l.back for l in bp.legs}
        assert verify(g, bp.shape, 5, bp.zeta(leg.port)).ok
    # a leg's two guards can never be used together
    leg = bp.legs[0]
    assert dispersion_distance([leg.front, leg.back], bp.shape) == 4


def test_clause_stretch_grows_width():
    base = clause_gadget(3, 0)
    for k in (1, 2, 5):
        wide = clause_gadget(3, k)
        assert len(wide.shape) == len(base.shape) + 2 * k
        xs = [l.front.x for l in wide.legs]
        assert xs[-1] - xs[0] == [l.front.x for l in base.legs][-1] - base.legs[0].front.x + 2 * k


def test_clause_arguments_validated():
    with pytest.raises(ValueError):
        clause_gadget(4)
    with pytest.raises(ValueError):
        clause_gadget(2, -1)


def test_duplicator_behaviour():
    assert duplicator_outcomes(duplicator_gadget()) == {
        "none": False, "in": True, "o1": False, "o2": False, "both_out": True}


@pytest.mark.parametrize("make", WIRES)
def test_wire_behaviour(make):
    assert connector_outcomes(make()) == {"none": False, "in": True, "out": True}


@pytest.mark.parametrize("make", [duplicator_gadget, *WIRES])
def test_state_guards_realise_both_modes(make):
    bp = make()
    ins = zeta(bp, *(p.name for p in bp.inputs))
    outs = zeta(bp, *(p.name for p in bp.outputs))
    assert verify(bp.states["true"].guards, bp.shape, 5, ins).ok
    assert verify(bp.states["false"].guards, bp.shape, 5, outs).ok


def test_symmetries_preserve_behaviour():
    bp = connector_Z()
    for sym in range(8):
        t = bp.transformed(sym, 7, -3)
        assert len(t.shape) == len(bp.shape)
        assert connector_outcomes(t) == {"none": False, "in": True, "out": True}
        for p, q in zip(bp.ports.values(), t.ports.values()):
            assert q.cell in t.shape and q.outside not in t.shape


def test_corridor_validation():
    with pytest.raises(ValueError):
        corridor(-1)
    with pytest.raises(ValueError):
        corridor(2, spacing=4)
    assert len(corridor(0).shape) == 3


def test_gadget_by_name_errors():
    with pytest.raises(KeyError):
        gadget_by_name("nope")
    with pytest.raises(ValueError):
        gadget_by_name("variable", 2)


def test_fixture_version_checked():
    data = json.loads(load_fixture_text("variable.json"))
    data["version"] = 99
    with pytest.raises(FixtureError):
        _parse(data)
    data["version"] = 1
    data["ports"]["pos"]["cell"] = [5, 5]
    with pytest.raises(FixtureError):
        _parse(data)


def test_standalone_gadgets_need_smaller_spacing():
    for bp in (duplicator_gadget(), connector_L(), clause_gadget(3)):
        assert not feasible(bp) and feasible(bp, ell=3)

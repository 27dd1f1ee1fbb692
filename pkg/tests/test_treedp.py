import time

import pytest

from dispersive_agp.geodesic import INF, distance_field
from dispersive_agp.gadgets import load_fixture_text
from dispersive_agp.oracle import exact_max_dispersion
from dispersive_agp.polyomino import from_grid, random_simple, random_tree
from dispersive_agp.treedp import (DegenerateRectangle, NotTreeShaped, build_borders, build_tree,
                                   dump_tables, feasible_for, solve_tree)
from dispersive_agp.verify import verify
from dispersive_agp.visibility import point_sees_point

from corpus import BAR3, BAR5, L_TROMINO, PLUS, RING8, SQUARE


def strip_signature(p, c):
    """Maximal horizontal / vertical runs of length >= 2 through c, each
    named by its first cell."""
    sig = []
    for dx, dy in ((1, 0), (0, 1)):
        if (c[0] - dx, c[1] - dy) in p.cells or (c[0] + dx, c[1] + dy) in p.cells:
            x, y = c
            while (x - dx, y - dy) in p.cells:
                x, y = x - dx, y - dy
            sig.append((dx, x, y))
    return tuple(sig)


def count_inner(p):
    # inner borders separate neighbouring cells covered by different rectangle sets
    return sum(1 for e in p.dual_edges
               if len({strip_signature(p, c) for c in e}) == 2)


def _sides(c):
    from dispersive_agp.polyomino import Side
    x, y = c
    return {Side.of((x, y), (x + 1, y)), Side.of((x, y), (x, y + 1)),
            Side.of((x + 1, y), (x + 1, y + 1)), Side.of((x, y + 1), (x + 1, y + 1))}


def test_bar_borders():
    st = build_borders(BAR3)
    assert len(st.maximal_rectangles) == 1
    assert len(st.outer_borders) == 2 and len(st.inner_borders) == 0


def test_plus_borders():
    st = build_borders(PLUS)
    assert len(st.maximal_rectangles) == 2
    assert len(st.outer_borders) == 4 and len(st.inner_borders) == 4
    assert len(st.partition()) == 5
    centre = {b.side for b in st.inner_borders}
    assert all({(1, 1), (2, 1), (1, 2)} & {b.side.a, b.side.b} for b in st.inner_borders)
    assert len(centre) == 4


def test_l_tromino_borders():
    st = build_borders(L_TROMINO)
    assert len(st.maximal_rectangles) == 2
    # the corner cell is its own piece, split off from both arms
    assert len(st.inner_borders) == count_inner(L_TROMINO) == 2


def test_inner_border_count_matches_cell_census():
    for seed in range(30):
        p = random_tree(seed, 25)
        assert len(build_borders(p).inner_borders) == count_inner(p)


def test_border_invariants():
    for seed in range(20):
        p = random_tree(seed, 30)
        st = build_borders(p)
        for b in st.outer_borders:
            assert b.side in p.boundary_sides
        for b in st.inner_borders:
            assert b.side not in p.boundary_sides
        for b in st.outer_borders + st.inner_borders:
            if b.p1 in p.vertices or b.p2 in p.vertices:
                continue
            # a rectangle end flush against the wall of a crossing strip
            inside = [c for c in ((b.side.a.x, b.side.a.y), (b.side.a.x - 1, b.side.a.y),
                                  (b.side.a.x, b.side.a.y - 1)) if c in p.cells
                      and b.side in _sides(c)]
            assert b.kind == "outer" and len(inside) == 1
            assert len(strip_signature(p, inside[0])) == 2
        cells = [c for piece in st.partition() for c in piece]
        assert sorted(cells) == sorted(p.cells)


def test_tree_structure():
    t = build_tree(PLUS)
    assert len(t.nodes) == 8 and t.root_cell == (1, 1)
    assert build_tree(L_TROMINO).root_cell == (0, 0)
    with pytest.raises(DegenerateRectangle):
        build_tree(BAR5)


def test_tree_leaves_are_outer_borders():
    for seed in range(15):
        p = random_tree(seed, 30)
        if len(build_borders(p).maximal_rectangles) < 2:
            continue
        t = build_tree(p)
        for b in t.nodes:
            assert (not t.children(b)) == (b.kind == "outer")


def test_rejects_non_trees():
    for p in (SQUARE, RING8):
        with pytest.raises(NotTreeShaped):
            solve_tree(p)


def test_rectangle_needs_one_corner():
    gs = feasible_for(BAR3, 5)
    assert len(gs) == 1 and verify(gs.guards, BAR3, 5).ok
    best, wit = solve_tree(BAR5)
    assert best == INF and len(wit) == 1 and verify(wit.guards, BAR5).covered


def test_feasible_at_one_always():
    for seed in range(10):
        p = random_tree(seed, 30)
        gs = feasible_for(p, 1)
        assert gs is not None and verify(gs.guards, p).covered


def test_one_above_optimum_is_infeasible():
    for seed in range(15):
        p = random_tree(seed, 20)
        best, _ = solve_tree(p)
        if best != INF:
            assert feasible_for(p, best + 1) is None
            assert exact_max_dispersion(p).best == best


def test_monotone_feasibility():
    for seed in range(10):
        p = random_tree(200 + seed, 30)
        flags = [feasible_for(p, ell) is not None for ell in range(1, 12)]
        assert flags == sorted(flags, reverse=True)


def test_fixture_shape():
    p = from_grid(load_fixture_text("tight3.grid"))
    best, wit = solve_tree(p)
    assert best == 3 and verify(wit.guards, p, 3).ok


def test_witness_properties():
    for seed in range(20):
        p = random_tree(300 + seed, 30)
        best, wit = solve_tree(p)
        assert verify(wit.guards, p, best).ok
        if len(build_borders(p).maximal_rectangles) < 2:
            continue
        st = build_borders(p)
        fields = [distance_field(g, p) for g in wit.guards]
        for b in st.inner_borders + st.outer_borders:
            d1 = min(f[b.p1] for f in fields)
            d2 = min(f[b.p2] for f in fields)
            assert d1 - d2 in (-1, 0, 1)
        for b in st.inner_borders:
            assert any(point_sees_point(g, b.p1, p) and point_sees_point(g, b.p2, p)
                       for g in wit.guards)


def test_dump_tables():
    text = dump_tables(PLUS, 2)
    assert text.startswith("root_cell 1 1") and "border inner" in text


def test_dp_speed():
    shapes = [random_tree(s, 40) for s in range(20)]
    t0 = time.perf_counter()
    for p in shapes:
        solve_tree(p)
    assert time.perf_counter() - t0 < 5

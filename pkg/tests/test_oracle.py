import pytest

from dispersive_agp.geodesic import INF
from dispersive_agp.oracle import (OracleBudget, Timeout, classic_min_guards,
                                   enumerate_guard_sets, exact_max_dispersion,
                                   feasible_guard_set, minimal_sets)
from dispersive_agp.polyomino import random_simple
from dispersive_agp.verify import verify

from corpus import BAR3, NAMED, PLUS, SQUARE, U_PENTOMINO, comb
from oracles import NaiveSolver, cells_of


def test_square_is_seen_from_one_corner():
    res = exact_max_dispersion(SQUARE)
    assert res.best == INF and len(res.witness) == 1


def test_variable_shape_optimum():
    res = exact_max_dispersion(U_PENTOMINO)
    assert res.best == 5
    assert verify(res.witness.guards, U_PENTOMINO, 5).ok


def test_plus_is_seen_from_its_centre_corner():
    # the reflex corner at (1, 1) sees all five cells
    assert verify({(1, 1)}, PLUS).covered
    assert exact_max_dispersion(PLUS).best == INF


@pytest.mark.parametrize("name", sorted(NAMED))
def test_witness_soundness(name):
    p = NAMED[name]
    res = exact_max_dispersion(p)
    assert verify(res.witness.guards, p, res.best).ok


def test_pre_covered_relaxes_coverage():
    # covering the right arm from outside lets two guards sit further apart
    assert feasible_guard_set(U_PENTOMINO, 6) is None
    gs = feasible_guard_set(U_PENTOMINO, INF, pre_covered={(2, 1)})
    assert gs is not None and verify(gs.guards, U_PENTOMINO, INF, pre_covered={(2, 1)}).ok


def test_blocked_vertices_are_avoided():
    blocked = {(0, 0), (0, 2)}
    gs = feasible_guard_set(U_PENTOMINO, 1, blocked=blocked)
    assert gs is not None and not gs.guards & blocked


def test_enumerator_counts_on_variable_shape():
    sets = enumerate_guard_sets(U_PENTOMINO, 5)
    assert all(verify(s.guards, U_PENTOMINO, 5).ok for s in sets)
    minimal = minimal_sets(sets, U_PENTOMINO)
    assert sorted(sorted(s.guards) for s in minimal) == [[(0, 0), (3, 2)], [(0, 2), (3, 0)]]
    assert len({s.guards for s in sets}) == len(sets)
    assert {s.guards for s in sets} == naive_sets(U_PENTOMINO, 5)


def naive_sets(p, ell):
    import itertools
    solver = NaiveSolver(cells_of(p))
    n = len(solver.verts)
    found = set()
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            mask = 0
            for i in combo:
                mask |= solver.seen[i]
            if mask == solver.full and all(solver.d[i][j] >= ell
                                           for i, j in itertools.combinations(combo, 2)):
                found.add(frozenset(solver.verts[i] for i in combo))
    return found


def test_classic_min_guards():
    assert len(classic_min_guards(BAR3)) == 1
    assert len(classic_min_guards(PLUS)) == 1
    assert len(classic_min_guards(U_PENTOMINO)) == 2


@pytest.mark.parametrize("k", [2, 3])
def test_comb_classic_versus_dispersive(k):
    p = comb(k, gap=3)
    classic = classic_min_guards(p)
    assert len(classic) == k == NaiveSolver(cells_of(p)).min_guards()
    best = exact_max_dispersion(p).best
    assert verify(classic.guards, p).dispersion <= best


def test_budget_exhaustion_raises_timeout():
    p = random_simple(4, 120)
    with pytest.raises(Timeout):
        exact_max_dispersion(p, budget=OracleBudget(node_limit=5))


def test_determinism():
    p = random_simple(8, 40)
    a, b = exact_max_dispersion(p), exact_max_dispersion(p)
    assert a == b

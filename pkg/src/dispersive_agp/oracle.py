"""Exact branch-and-bound search over vertex guard sets.

All three searches share the same representation: cells and vertices are
numbered, the cells seen by each vertex form an int bitmask, and pairwise
geodesic distances between vertices are precomputed once.  The DFS always
branches on the uncovered cell with the fewest admissible guards, which is
what keeps the reduction gadgets (a few hundred cells) tractable.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .geodesic import INF, vertex_distances
from .polyomino import Point, Polyomino
from .verify import GuardSet
from .visibility import cell_index


class Timeout(RuntimeError):
    """The search budget ran out before an answer was proven."""


class Unguardable(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    node_limit: int = 50_000_000
    time_limit: float = 600.0


@dataclass(frozen=True)
class OracleResult:
    best: float | int          # maximum dispersion, or INF
    witness: GuardSet
    nodes: int = 0


class _Clock:
    def __init__(self, budget: OracleBudget):
        self.budget = budget
        self.nodes = 0
        self.deadline = time.monotonic() + budget.time_limit

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.node_limit:
            raise Timeout(f"node limit {self.budget.node_limit} exceeded")
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise Timeout(f"time limit {self.budget.time_limit}s exceeded")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class SearchSpace:
    """Vertex/cell incidence of one polyomino with some cells pre-covered."""

    def __init__(self, poly: Polyomino, pre_covered=frozenset(),
                 blocked=frozenset()):
        self.poly = poly
        idx = cell_index(poly)
        self.cells = idx.cells
        self.vertices, self.dist = vertex_distances(poly)
        self.nv = len(self.vertices)
        # blocked vertices stay in the distance matrix but never see anything
        self.sees = [0 if v in blocked else idx.bits(v) for v in self.vertices]
        self.usable = sum(1 << i for i, v in enumerate(self.vertices)
                          if v not in blocked)
        self.target = ((1 << len(self.cells)) - 1) & ~idx.mask_of(pre_covered)
        seers = [0] * len(self.cells)
        for v, m in enumerate(self.sees):
            for c in _bits(m):
                seers[c] |= 1 << v
        self.seers = seers
        for c in _bits(self.target):
            if not seers[c]:
                raise Unguardable(f"no vertex sees cell {self.cells[c]}")

    def compat(self, ell) -> list[int]:
        """Per vertex, the bitmask of other vertices at distance >= ell."""
        out = []
        for v in range(self.nv):
            ok = np.nonzero(self.dist[v] >= ell)[0]
            m = 0
            for u in ok:
                if u != v:
                    m |= 1 << int(u)
            out.append(m)
        return out

    def candidate_values(self) -> list[int]:
        if self.nv < 2:
            return []
        iu = np.triu_indices(self.nv, 1)
        return sorted({int(d) for d in self.dist[iu] if d > 0})

    def guards(self, chosen) -> GuardSet:
        return GuardSet(frozenset(self.vertices[v] for v in chosen))

    def single_cover(self):
        for v, m in enumerate(self.sees):
            if self.usable >> v & 1 and m & self.target == self.target:
                return v
        return None

    # -- search ------------------------------------------------------------
    def _pick_cell(self, uncovered: int, allowed: int):
        """Uncovered cell with the fewest admissible seers (None = dead end)."""
        best, best_count = -1, math.inf
        seers = self.seers
        for c in _bits(uncovered):
            k = (seers[c] & allowed).bit_count()
            if k < best_count:
                best, best_count = c, k
                if k <= 1:
                    break
        return best, best_count

    def _order(self, options: int, uncovered: int) -> list[int]:
        sees = self.sees
        return sorted(_bits(options),
                      key=lambda v: (-(sees[v] & uncovered).bit_count(), v))

    def feasible(self, ell, clock: _Clock):
        """A guard set covering the target with pairwise distance >= ell."""
        compat = self.compat(ell)
        failed: set = set()

        def dfs(uncovered, allowed, chosen):
            clock.tick()
            if not uncovered:
                return list(chosen)
            key = (uncovered, allowed)
            if key in failed:
                return None
            c, k = self._pick_cell(uncovered, allowed)
            if k == 0:
                failed.add(key)
                return None
            options = self.seers[c] & allowed
            for v in self._order(options, uncovered):
                chosen.append(v)
                res = dfs(uncovered & ~self.sees[v], allowed & compat[v], chosen)
                chosen.pop()
                if res is not None:
                    return res
                allowed &= ~(1 << v)
            failed.add(key)
            return None

        return dfs(self.target, self.usable, [])

    def enumerate(self, ell, clock: _Clock) -> list[frozenset]:
        """Every vertex set (not only minimal ones) that covers the target
        with pairwise distance >= ell.  Each set is produced exactly once by
        deciding vertices in index order."""
        compat = self.compat(ell)
        seers, sees, nv = self.seers, self.sees, self.nv
        results = []

        def dfs(i, uncovered, allowed, chosen):
            clock.tick()
            remaining = allowed >> i << i
            for c in _bits(uncovered):
                if not seers[c] & remaining:
                    return
            if i == nv or not remaining:
                if not uncovered:
                    results.append(frozenset(chosen))
                return
            v = (remaining & -remaining).bit_length() - 1
            chosen.append(v)
            dfs(v + 1, uncovered & ~sees[v], allowed & compat[v], chosen)
            chosen.pop()
            dfs(v + 1, uncovered, allowed & ~(1 << v), chosen)

        dfs(0, self.target, self.usable, [])
        return results

    def min_cardinality(self, clock: _Clock):
        best = [None]

        def greedy():
            uncovered, chosen = self.target, []
            while uncovered:
                v = max((u for u in range(self.nv) if self.usable >> u & 1),
                        key=lambda u: ((self.sees[u] & uncovered).bit_count(), -u))
                chosen.append(v)
                uncovered &= ~self.sees[v]
            return chosen

        best[0] = greedy()

        def lower_bound(uncovered):
            # cells with pairwise disjoint seer sets each need their own guard
            lb, used = 0, 0
            for c in _bits(uncovered):
                if not self.seers[c] & used:
                    used |= self.seers[c]
                    lb += 1
            return lb

        def dfs(uncovered, allowed, chosen):
            clock.tick()
            if not uncovered:
                if len(chosen) < len(best[0]):
                    best[0] = list(chosen)
                return
            if len(chosen) + lower_bound(uncovered) >= len(best[0]):
                return
            c, k = self._pick_cell(uncovered, allowed)
            if k == 0:
                return
            for v in self._order(self.seers[c] & allowed, uncovered):
                chosen.append(v)
                dfs(uncovered & ~self.sees[v], allowed & ~(1 << v), chosen)
                chosen.pop()
                allowed &= ~(1 << v)

        dfs(self.target, self.usable, [])
        return best[0]


@lru_cache(maxsize=32)
def _space(poly: Polyomino, pre_covered: frozenset, blocked: frozenset) -> SearchSpace:
    return SearchSpace(poly, pre_covered, blocked)


def _prep(poly, pre_covered, budget, blocked=frozenset()):
    pre = frozenset(tuple(c) for c in pre_covered)
    blk = frozenset(Point(*v) for v in blocked)
    return _space(poly, pre, blk), _Clock(budget or OracleBudget())


def feasible_guard_set(poly: Polyomino, ell, pre_covered=frozenset(),
                       budget: OracleBudget | None = None,
                       blocked=frozenset()) -> GuardSet | None:
    """A guard set with pairwise distance >= ``ell``, or ``None``.
    Vertices in ``blocked`` are never used as guards."""
    space, clock = _prep(poly, pre_covered, budget, blocked)
    if ell == INF:
        v = space.single_cover()
        return None if v is None else space.guards([v])
    res = space.feasible(ell, clock)
    return None if res is None else space.guards(res)


def exact_max_dispersion(poly: Polyomino, pre_covered=frozenset(),
                         budget: OracleBudget | None = None,
                         blocked=frozenset()) -> OracleResult:
    """Largest achievable dispersion over guard sets covering
    ``cells(P) - pre_covered``, with a witness."""
    space, clock = _prep(poly, pre_covered, budget, blocked)
    if not space.target:
        return OracleResult(INF, GuardSet(frozenset()), 0)
    v = space.single_cover()
    if v is not None:
        return OracleResult(INF, space.guards([v]), 0)
    values = space.candidate_values()
    lo, hi = 0, len(values) - 1
    best, witness = None, None
    while lo <= hi:
        mid = (lo + hi) // 2
        res = space.feasible(values[mid], clock)
        if res is not None:
            best, witness = values[mid], res
            lo = mid + 1
        else:
            hi = mid - 1
    if best is None:
        raise Unguardable("no guard set exists")
    # the witness may realise more than the probed threshold
    wit = space.guards(witness)
    return OracleResult(best, wit, clock.nodes)


def enumerate_guard_sets(poly: Polyomino, ell, pre_covered=frozenset(),
                         budget: OracleBudget | None = None,
                         blocked=frozenset()) -> list[GuardSet]:
    space, clock = _prep(poly, pre_covered, budget, blocked)
    found = space.enumerate(ell, clock)
    return sorted((space.guards(s) for s in found),
                  key=lambda g: sorted(g.guards))


def minimal_sets(sets: list[GuardSet], poly: Polyomino,
                 pre_covered=frozenset()) -> list[GuardSet]:
    """The inclusion-minimal members of ``sets``."""
    keys = [g.guards for g in sets]
    return [g for g in sets if not any(k < g.guards for k in keys)]


def classic_min_guards(poly: Polyomino, budget: OracleBudget | None = None,
                       pre_covered=frozenset(), blocked=frozenset()) -> GuardSet:
    """Minimum-cardinality vertex guard set (dispersion ignored)."""
    space, clock = _prep(poly, pre_covered, budget, blocked)
    return space.guards(space.min_cardinality(clock))

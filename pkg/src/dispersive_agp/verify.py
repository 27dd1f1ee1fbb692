"""Certificate checking: coverage and dispersion of a vertex guard set."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geodesic import INF, check_vertices, dispersion_distance
from .polyomino import Point, Polyomino
from .visibility import cell_index


@dataclass(frozen=True)
class GuardSet:
    """Guards on polyomino vertices, optionally with verified properties."""

    guards: frozenset
    covered: bool | None = None
    dispersion: float | int | None = None

    @classmethod
    def of(cls, guards, poly: Polyomino | None = None) -> "GuardSet":
        pts = frozenset(Point(*g) for g in guards)
        if poly is None:
            return cls(pts)
        res = verify(pts, poly)
        return cls(pts, res.covered, res.dispersion)

    def __iter__(self):
        return iter(sorted(self.guards))

    def __len__(self) -> int:
        return len(self.guards)


@dataclass(frozen=True)
class Verification:
    covered: bool
    dispersion: float | int
    ok: bool
    uncovered: frozenset = frozenset()


def covered_mask(guards, poly: Polyomino) -> np.ndarray:
    idx = cell_index(poly)
    seen = np.zeros(len(idx.cells), dtype=bool)
    for g in guards:
        seen |= idx.visible(g)
    return seen


def is_guard_set(guards, poly: Polyomino) -> bool:
    pts = check_vertices(guards, poly)
    return bool(covered_mask(pts, poly).all())


def verify(guards, poly: Polyomino, required_dispersion=None,
           pre_covered=frozenset()) -> Verification:
    """Check coverage of ``cells(P) - pre_covered`` and the dispersion
    requirement.  ``required_dispersion=None`` only checks coverage."""
    pts = check_vertices(guards, poly)
    idx = cell_index(poly)
    seen = covered_mask(pts, poly)
    for c in pre_covered:
        if c not in idx.index:
            raise ValueError(f"pre-covered cell {tuple(c)} is not in the polyomino")
        seen[idx.index[c]] = True
    uncovered = frozenset(c for c, s in zip(idx.cells, seen) if not s)
    disp = dispersion_distance(pts, poly) if pts else INF
    ok = not uncovered and (required_dispersion is None
                            or disp >= required_dispersion)
    return Verification(not uncovered, disp, ok, uncovered)

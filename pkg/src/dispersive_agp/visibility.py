"""Rectangular (r-)visibility inside a polyomino.

A point ``g`` sees a point ``q`` when the closed axis-parallel rectangle
spanned by the two lies in the closed polyomino.  For a cell ``c`` the
rectangles ``rect(g, q)`` over interior points ``q`` of ``c`` all meet the
same cell interiors, namely the *cell box* reaching from ``c`` to the cells
touching ``g``, so visibility of a whole cell reduces to one box-occupancy
query.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .polyomino import Cell, Point, Polyomino


class OutsideShape(ValueError):
    pass


@dataclass(frozen=True)
class VisibilityRegion:
    owner: Point
    cells: frozenset

    def __contains__(self, cell) -> bool:
        return cell in self.cells

    def __len__(self) -> int:
        return len(self.cells)


def _box(g, c) -> tuple[int, int, int, int]:
    gx, gy = g
    cx, cy = c
    x_end = gx if gx <= cx else gx - 1
    y_end = gy if gy <= cy else gy - 1
    return cx, cy, x_end, y_end


def cell_visible(g, c, poly: Polyomino) -> bool:
    if c not in poly.cells:
        raise OutsideShape(f"cell {tuple(c)} is not part of the polyomino")
    return poly.box_full(*_box(g, c))


class CellIndex:
    """Numbered cells of a polyomino plus vectorised box queries."""

    def __init__(self, poly: Polyomino):
        self.poly = poly
        self.cells = sorted(poly.cells)
        self.index = {c: i for i, c in enumerate(self.cells)}
        self.cx = np.array([c.x for c in self.cells], dtype=np.int64)
        self.cy = np.array([c.y for c in self.cells], dtype=np.int64)

    def visible(self, g) -> np.ndarray:
        """Boolean mask over :attr:`cells` of the cells visible from ``g``."""
        gx, gy = g
        cx, cy = self.cx, self.cy
        x_end = np.where(gx <= cx, gx, gx - 1)
        y_end = np.where(gy <= cy, gy, gy - 1)
        x0, x1 = np.minimum(cx, x_end), np.maximum(cx, x_end)
        y0, y1 = np.minimum(cy, y_end), np.maximum(cy, y_end)
        xmin, ymin, xmax, ymax = self.poly.bbox
        inside = (x0 >= xmin) & (y0 >= ymin) & (x1 <= xmax) & (y1 <= ymax)
        pre = self.poly.prefix
        ax = np.clip(x0 - xmin + 1, 0, pre.shape[0] - 1)
        ay = np.clip(y0 - ymin + 1, 0, pre.shape[1] - 1)
        bx = np.clip(x1 - xmin + 2, 0, pre.shape[0] - 1)
        by = np.clip(y1 - ymin + 2, 0, pre.shape[1] - 1)
        total = pre[bx, by] - pre[ax, by] - pre[bx, ay] + pre[ax, ay]
        return inside & (total == (x1 - x0 + 1) * (y1 - y0 + 1))

    def bits(self, g) -> int:
        """The visible mask packed into a Python int (bit i = cell i)."""
        mask = self.visible(g)
        packed = np.packbits(mask, bitorder="little")
        return int.from_bytes(packed.tobytes(), "little")

    def mask_of(self, cells) -> int:
        m = 0
        for c in cells:
            m |= 1 << self.index[c]
        return m

    def cells_of(self, mask: int) -> list[Cell]:
        out = []
        while mask:
            low = mask & -mask
            out.append(self.cells[low.bit_length() - 1])
            mask ^= low
        return out


@lru_cache(maxsize=128)
def cell_index(poly: Polyomino) -> CellIndex:
    return CellIndex(poly)


def visibility_region(g, poly: Polyomino) -> VisibilityRegion:
    idx = cell_index(poly)
    mask = idx.visible(g)
    return VisibilityRegion(Point(*g),
                            frozenset(c for c, m in zip(idx.cells, mask) if m))


def point_sees_point(p, q, poly: Polyomino) -> bool:
    """Closed rectangle spanned by ``p`` and ``q`` lies in closed P."""
    (px, py), (qx, qy) = p, q
    x0, x1 = sorted((px, qx))
    y0, y1 = sorted((py, qy))
    if x0 < x1 and y0 < y1:
        return poly.box_full(x0, y0, x1 - 1, y1 - 1)
    if x0 == x1 and y0 == y1:
        return poly.contains_point((x0, y0))
    if y0 == y1:
        return all(poly.contains_unit_segment((x, y0), (x + 1, y0))
                   for x in range(x0, x1))
    return all(poly.contains_unit_segment((x0, y), (x0, y + 1))
               for y in range(y0, y1))

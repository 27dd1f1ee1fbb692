"""Guard JSON, solve reports and SVG rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .geodesic import INF, closest_pair
from .polyomino import Point, Polyomino, render_grid  # noqa: F401  (re-export)
from .verify import verify

CELL = 32


def _disp_out(d):
    return "inf" if d == INF else int(d)


def _disp_in(d):
    if d == "inf":
        return INF
    if isinstance(d, bool) or not isinstance(d, int):
        raise ValueError(f"dispersion must be an integer or \"inf\", got {d!r}")
    return d


def _points(raw) -> list[Point]:
    if not isinstance(raw, list):
        raise ValueError("guards must be a list of [x, y] pairs")
    out = []
    for g in raw:
        if (not isinstance(g, list) or len(g) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in g)):
            raise ValueError(f"bad guard entry {g!r}")
        out.append(Point(*g))
    return out


def dump_guards(guards) -> str:
    pts = sorted(Point(*g) for g in guards)
    return json.dumps({"guards": [list(p) for p in pts]}) + "\n"


def load_guards(text: str) -> list[Point]:
    data = json.loads(text)
    if not isinstance(data, dict) or "guards" not in data:
        raise ValueError('expected an object with a "guards" key')
    return _points(data["guards"])


def load_cells(text: str) -> list[tuple[int, int]]:
    """Pre-covered cells: ``{"cells": [[x, y], ...]}`` or a bare list."""
    data = json.loads(text)
    if isinstance(data, dict):
        data = data.get("cells")
    return [tuple(p) for p in _points(data)]


@dataclass(frozen=True)
class SolveReport:
    instance: str
    algorithm: str
    guards: tuple
    dispersion: float | int
    covered: bool
    wall_time: float

    @classmethod
    def build(cls, instance: str, algorithm: str, guards, poly: Polyomino,
              wall_time: float, pre_covered=frozenset()) -> "SolveReport":
        """Dispersion and coverage always come from :func:`verify`."""
        res = verify(guards, poly, pre_covered=pre_covered)
        return cls(instance, algorithm, tuple(sorted(Point(*g) for g in guards)),
                   res.dispersion, res.covered, round(wall_time, 6))

    def to_json(self) -> str:
        return json.dumps({
            "instance": self.instance,
            "algorithm": self.algorithm,
            "guards": [list(g) for g in self.guards],
            "dispersion": _disp_out(self.dispersion),
            "covered": self.covered,
            "wall_time": self.wall_time,
        }) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SolveReport":
        d = json.loads(text)
        if not isinstance(d.get("covered"), bool):
            raise ValueError("covered must be a boolean")
        return cls(str(d["instance"]), str(d["algorithm"]), tuple(_points(d["guards"])),
                   _disp_in(d["dispersion"]), d["covered"], float(d["wall_time"]))


def render_svg(poly: Polyomino, guards=(), annotations: dict | None = None) -> str:
    """SVG of the cells, the boundary and guard markers.

    ``annotations`` may hold ``pairs`` (point pairs drawn as dashed links),
    ``sides`` (unit sides to highlight, e.g. gates or borders) and
    ``title``.
    """
    ann = annotations or {}
    xmin, ymin, xmax, ymax = poly.bbox
    w, h = (xmax - xmin + 1) * CELL, (ymax - ymin + 1) * CELL
    pad = CELL // 2

    def sx(x):
        return (x - xmin) * CELL + pad

    def sy(y):
        # data y grows upward; screen y grows downward
        return (ymax + 1 - y) * CELL + pad

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w + 2 * pad}" '
           f'height="{h + 2 * pad}" viewBox="0 0 {w + 2 * pad} {h + 2 * pad}">']
    if "title" in ann:
        out.append(f"<title>{escape(str(ann['title']))}</title>")
    out.append('<g class="cells" fill="#e8eef6" stroke="#c4cfdc" stroke-width="1">')
    for c in sorted(poly.cells):
        out.append(f'<rect x="{sx(c.x)}" y="{sy(c.y + 1)}" width="{CELL}" height="{CELL}"/>')
    out.append("</g>")
    for cyc in poly.boundary_cycles:
        d = " ".join(f"{'M' if i == 0 else 'L'}{sx(p.x)},{sy(p.y)}" for i, p in enumerate(cyc))
        out.append(f'<path class="boundary" d="{d} Z" fill="none" stroke="#23313f" stroke-width="3"/>')
    for a, b in ann.get("sides", ()):
        out.append(f'<line class="side" x1="{sx(a[0])}" y1="{sy(a[1])}" x2="{sx(b[0])}" '
                   f'y2="{sy(b[1])}" stroke="#d9822b" stroke-width="5"/>')
    for a, b in ann.get("pairs", ()):
        out.append(f'<line class="pair" x1="{sx(a[0])}" y1="{sy(a[1])}" x2="{sx(b[0])}" '
                   f'y2="{sy(b[1])}" stroke="#c23030" stroke-width="2" stroke-dasharray="6 4"/>')
    for g in sorted(Point(*g) for g in guards):
        out.append(f'<circle class="guard" cx="{sx(g.x)}" cy="{sy(g.y)}" r="{CELL // 5}" '
                   f'fill="#c23030"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def witness_annotations(poly: Polyomino, guards) -> dict:
    found = closest_pair(guards, poly)
    if found is None:
        return {}
    p, q, d = found
    return {"pairs": [(p, q)], "title": f"closest guards at distance {d}"}

"""Command line entry point.

Exit codes: 0 success, 1 infeasible or failed verification, 2 bad input,
3 timeout.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import reduction as cmp
from .formats import SolveReport, load_cells, load_guards, render_svg, witness_annotations
from .gadgets import gadget_by_name
from .geodesic import INF, NotAVertex
from .oracle import OracleBudget, Timeout, exact_max_dispersion
from .polyomino import PolyominoError, from_grid, random_simple, random_tree, render_grid
from .treedp import NotTreeShaped, solve_tree
from .verify import verify
from .worstcase import NotSimple, solve_worstcase

OK, FAIL, BAD_INPUT, TIMEOUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _grid(path: str):
    try:
        return from_grid(_read(path))
    except PolyominoError as exc:
        raise InputError(f"{path}: {exc}") from None


def _svg(args, poly, guards=(), annotations=None):
    if args.svg:
        ann = annotations if annotations is not None else witness_annotations(poly, guards)
        Path(args.svg).write_text(render_svg(poly, guards, ann))


def cmd_classify(args) -> int:
    poly = _grid(args.grid)
    info = {"cells": len(poly), **poly.classify()}
    print(json.dumps(info))
    _svg(args, poly)
    return OK


def cmd_solve(args) -> int:
    poly = _grid(args.grid)
    t0 = time.perf_counter()
    if args.algorithm == "worstcase":
        guards, claim = solve_worstcase(poly, debug=False).guards.guards, 3
    elif args.algorithm == "tree":
        claim, wit = solve_tree(poly)
        guards = wit.guards
    else:
        budget = OracleBudget(time_limit=args.budget) if args.budget else None
        res = exact_max_dispersion(poly, budget=budget)
        claim, guards = res.best, res.witness.guards
    report = SolveReport.build(Path(args.grid).stem, args.algorithm, guards, poly,
                               time.perf_counter() - t0)
    sys.stdout.write(report.to_json())
    _svg(args, poly, report.guards)
    # the report only stands if an independent check agrees with the claim
    if args.algorithm == "worstcase" and len(poly) == 1:
        claim = INF
    good = report.covered and report.dispersion >= claim
    return OK if good else FAIL


def cmd_verify(args) -> int:
    poly = _grid(args.grid)
    try:
        guards = load_guards(_read(args.guards))
        pre = load_cells(_read(args.pre_covered)) if args.pre_covered else ()
    except (ValueError, KeyError) as exc:
        raise InputError(f"bad JSON: {exc}") from None
    req = None
    if args.min_dispersion is not None:
        req = INF if args.min_dispersion.lower() in ("inf", "infinity") else int(args.min_dispersion)
    t0 = time.perf_counter()
    try:
        res = verify(guards, poly, req, pre_covered=pre)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report = SolveReport.build(Path(args.grid).stem, "verify", guards, poly,
                               time.perf_counter() - t0, pre_covered=pre)
    sys.stdout.write(report.to_json())
    _svg(args, poly, guards)
    return OK if res.ok else FAIL


def cmd_gadget(args) -> int:
    try:
        bp = gadget_by_name(args.name, args.stretch)
    except (KeyError, ValueError) as exc:
        raise InputError(str(exc).strip("'\"")) from None
    print(render_grid(bp.shape))
    _svg(args, bp.shape, (), {"title": bp.name})
    return OK


def _composition(args):
    try:
        phi = cmp.parse_formula(_read(args.formula))
        lay = cmp.parse_layout(_read(args.layout))
        return phi, cmp.compose(phi, lay)
    except (cmp.FormulaError, cmp.LayoutError) as exc:
        raise InputError(f"{type(exc).__name__}: {exc}") from None


def cmd_compose(args) -> int:
    _, comp = _composition(args)
    print(render_grid(comp.polyomino))
    _svg(args, comp.polyomino, (), {})
    return OK


def cmd_witness(args) -> int:
    phi, comp = _composition(args)
    try:
        assignment = cmp.parse_assignment(args.assignment)
    except cmp.FormulaError as exc:
        raise InputError(str(exc)) from None
    t0 = time.perf_counter()
    try:
        gs = cmp.guards_from_assignment(phi, comp, assignment, strict=False)
    except cmp.FormulaError as exc:
        raise InputError(str(exc)) from None
    report = SolveReport.build(Path(args.layout).stem, "witness", gs.guards,
                               comp.polyomino, time.perf_counter() - t0)
    sys.stdout.write(report.to_json())
    _svg(args, comp.polyomino, gs.guards)
    return OK if report.covered and report.dispersion >= 5 else FAIL


def cmd_gen(args) -> int:
    make = random_simple if args.kind == "simple" else random_tree
    if args.cells < 1:
        raise InputError("--cells must be positive")
    poly = make(args.seed, args.cells)
    print(render_grid(poly))
    _svg(args, poly)
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--svg", metavar="OUT", help="also write an SVG rendering")
    ap = argparse.ArgumentParser(prog="dispersive-agp",
                                 description="Dispersive vertex guards in polyominoes.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="report simple/thin/tree-shaped")
    p.add_argument("grid")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", parents=[common], help="compute a dispersive guard set")
    p.add_argument("algorithm", choices=["worstcase", "tree", "exact"])
    p.add_argument("grid")
    p.add_argument("--budget", type=float, help="time limit in seconds (exact only)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="check a guard set")
    p.add_argument("grid")
    p.add_argument("guards")
    p.add_argument("--min-dispersion", dest="min_dispersion")
    p.add_argument("--pre-covered", dest="pre_covered")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gadget", parents=[common], help="print a gadget as a grid")
    p.add_argument("name")
    p.add_argument("--stretch", type=int, default=0)
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("compose", parents=[common], help="build the polyomino of a formula")
    p.add_argument("formula")
    p.add_argument("layout")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("witness", parents=[common], help="guards from a truth assignment")
    p.add_argument("formula")
    p.add_argument("layout")
    p.add_argument("assignment")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("gen", parents=[common], help="random polyomino")
    p.add_argument("kind", choices=["simple", "tree"])
    p.add_argument("--cells", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else BAD_INPUT
    try:
        return args.func(args)
    except (InputError, NotTreeShaped, NotSimple, NotAVertex) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except Timeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return TIMEOUT


if __name__ == "__main__":
    sys.exit(main())

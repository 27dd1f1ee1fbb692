import json
import subprocess
import sys
from pathlib import Path

import pytest

from dispersive_agp.cli import main
from dispersive_agp.gadgets import clause_gadget, load_fixture_text

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def u5(tmp_path):
    path = tmp_path / "u5.grid"
    path.write_text("#.#\n###\n")
    return path


def test_classify(capsys, u5):
    code, out, _ = run(capsys, "classify", u5)
    assert code == 0
    assert json.loads(out) == {"cells": 5, "simple": True, "thin": True, "tree_shaped": True}


def test_solve_worstcase_fixture(capsys):
    code, out, _ = run(capsys, "solve", "worstcase", SAMPLES / "tight3.grid")
    rep = json.loads(out)
    assert code == 0 and rep["covered"] and rep["dispersion"] >= 3
    assert rep["instance"] == "tight3" and rep["algorithm"] == "worstcase"


def test_solve_tree_and_exact(capsys):
    code, out, _ = run(capsys, "solve", "tree", SAMPLES / "tight3.grid")
    assert code == 0 and json.loads(out)["dispersion"] == 3
    code, out, _ = run(capsys, "solve", "exact", SAMPLES / "variable_gadget.grid")
    assert code == 0 and json.loads(out)["dispersion"] == 5


def test_single_cell_reports_infinity(capsys, tmp_path):
    path = tmp_path / "one.grid"
    path.write_text("#\n")
    code, out, _ = run(capsys, "solve", "worstcase", path)
    assert code == 0 and json.loads(out)["dispersion"] == "inf"


def test_solve_tree_rejects_holes(capsys, tmp_path):
    path = tmp_path / "ring.grid"
    path.write_text("###\n#.#\n###\n")
    code, _, err = run(capsys, "solve", "tree", path)
    assert code == 2 and "error" in err
    assert run(capsys, "solve", "worstcase", path)[0] == 2


def test_exact_budget_timeout(capsys, tmp_path):
    from dispersive_agp.polyomino import random_simple, render_grid
    path = tmp_path / "big.grid"
    path.write_text(render_grid(random_simple(4, 400)))
    code, _, err = run(capsys, "solve", "exact", path, "--budget", "0.000001")
    assert code == 3 and "timeout" in err


def test_verify_exit_codes(capsys, u5, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"guards": [[0, 0], [1, 1]]}')
    good = tmp_path / "good.json"
    good.write_text('{"guards": [[0, 2], [3, 0]]}')
    assert run(capsys, "verify", u5, bad, "--min-dispersion", "5")[0] == 1
    code, out, _ = run(capsys, "verify", u5, good, "--min-dispersion", "5")
    assert code == 0 and json.loads(out)["dispersion"] == 5
    assert run(capsys, "verify", u5, good, "--min-dispersion", "inf")[0] == 1


def test_verify_pre_covered(capsys, u5, tmp_path):
    g = tmp_path / "g.json"
    g.write_text('{"guards": [[1, 1]]}')
    pre = tmp_path / "pre.json"
    pre.write_text('{"cells": [[2, 1]]}')
    assert run(capsys, "verify", u5, g)[0] == 1
    assert run(capsys, "verify", u5, g, "--pre-covered", pre)[0] == 0


@pytest.mark.parametrize("content", ['{"guards": [[1, 0]]}', "not json", '{"guards": [[0]]}'])
def test_verify_input_errors(capsys, u5, tmp_path, content):
    g = tmp_path / "g.json"
    g.write_text(content)
    assert run(capsys, "verify", u5, g)[0] == 2


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "classify", tmp_path / "missing.grid")[0] == 2
    bad = tmp_path / "bad.grid"
    bad.write_text("#.#\n")
    assert run(capsys, "classify", bad)[0] == 2
    assert run(capsys, "solve", "magic", bad)[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "gen", "simple", "--cells", "0", "--seed", "1")[0] == 2


def test_gadget(capsys):
    code, out, _ = run(capsys, "gadget", "variable")
    assert code == 0 and out == "##\n#\n##\n"
    code, out, _ = run(capsys, "gadget", "clause3", "--stretch", "2")
    assert code == 0 and out.count("#") == len(clause_gadget(3, 2).shape)
    assert run(capsys, "gadget", "nope")[0] == 2
    assert run(capsys, "gadget", "duplicator", "--stretch", "1")[0] == 2


def test_compose_and_witness(capsys, tmp_path):
    cnf, layout = SAMPLES / "reference.cnf", SAMPLES / "reference.layout"
    code, out, _ = run(capsys, "compose", cnf, layout)
    assert code == 0 and out.count("#") > 1000
    code, out, _ = run(capsys, "witness", cnf, layout, "01110")
    assert code == 0 and json.loads(out)["dispersion"] == 5
    code, out, _ = run(capsys, "witness", cnf, layout, "1,1,1,1,0")
    assert code == 1 and json.loads(out)["dispersion"] == 4
    assert run(capsys, "witness", cnf, layout, "011")[0] == 2
    empty = tmp_path / "empty.layout"
    empty.write_text("")
    assert run(capsys, "compose", cnf, empty)[0] == 2


def test_gen_is_deterministic(capsys):
    a = run(capsys, "gen", "tree", "--cells", "30", "--seed", "4")[1]
    b = run(capsys, "gen", "tree", "--cells", "30", "--seed", "4")[1]
    assert a == b and a.count("#") == 30


def test_svg_everywhere(capsys, tmp_path, u5):
    cnf, layout = SAMPLES / "reference.cnf", SAMPLES / "reference.layout"
    good = tmp_path / "g.json"
    good.write_text('{"guards": [[0, 2], [3, 0]]}')
    commands = [
        ["classify", u5], ["solve", "tree", u5], ["verify", u5, good],
        ["gadget", "connector_L"], ["compose", cnf, layout],
        ["witness", cnf, layout, "01110"], ["gen", "simple", "--cells", "9", "--seed", "1"],
    ]
    for i, argv in enumerate(commands):
        svg = tmp_path / f"{i}.svg"
        assert run(capsys, *argv, "--svg", svg)[0] in (0, 1)
        assert svg.read_text().startswith("<svg")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dispersive_agp", "solve", "tree",
                          str(SAMPLES / "tight3.grid")], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["dispersion"] == 3


def test_samples_match_packaged_fixtures():
    for name in ("tight3.grid", "reference.cnf", "reference.layout"):
        assert (SAMPLES / name).read_text() == load_fixture_text(name)

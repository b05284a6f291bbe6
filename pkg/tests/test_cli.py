import json
import subprocess
import sys

import pytest

from alexloci.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_alex_poly_pencil(capsys):
    code, out = run_json(capsys, "alex-poly", "--pres", "<x1,x2,x3 | [x1,x1x2x3],[x2,x1x2x3]>")
    assert code == 0 and out["delta"] == "t1*t2*t3 - 1"


def test_cover_betti_both(capsys):
    code, out = run_json(capsys, "cover-betti", "--pres", "<x1,x2|>", "--mod", "2", "--values", "x1=1,x2=1",
                         "--prime", "5", "--method", "both")
    assert code == 0 and out["b1"] == 3 and out["agreement"] is True


def test_tau1(capsys):
    code, out = run_json(capsys, "tau1", "--poly", "t1*t2 - 1")
    assert code == 0 and [s["normals"] for s in out["subspaces"]] == [[[1, 1]]]


@pytest.mark.parametrize("argv", [
    ["depth", "--fixture", "pencil:3", "--values", "2,2,2", "--prime", "7"],
    ["codim1", "--fixture", "baumslag-solitar"],
    ["congruence-b1", "--fixture", "free:2", "--mod", "2", "--prime", "5"],
    ["bns-bound", "--fixture", "abelian:2"],
    ["dwyer-fried", "--fixture", "free:2", "--class", "1,0"],
    ["resonance", "membership", "--fixture", "quadric", "--point", "0,0,1,0"],
    ["resonance", "membership", "--cup", '{"b1": 2, "b2": 1, "mu": [[1, 2, 1, 1]]}', "--point", "1,0"],
    ["resonance", "linearize", "--fixture", "heisenberg"],
    ["toric", "loci", "--complex", '{"vertices": [1, 2], "facets": [[1], [2]]}'],
    ["toric", "classify", "--graph", '{"vertices": [1, 2, 3], "edges": [[1, 2], [2, 3]]}'],
    ["toric", "sigma", "--graph", '{"vertices": [1, 2], "edges": []}', "--q", "1"],
    ["toric", "delta-status", "--graph", '{"vertices": [1, 2, 3], "edges": [[1, 2], [2, 3]]}'],
    ["arr", "lattice", "--arr", '{"lines": [["1", "0", "0"], [0, 1, 0], [1, 1, "-1/2"]]}'],
    ["arr", "resonance", "--arr", '{"combinatorics": {"n": 3, "multiple_points": [[1, 2, 3]]}}'],
    ["arr", "classify", "--arr", '{"combinatorics": {"n": 3, "parallel_classes": [[1, 2, 3]]}}'],
    ["arr", "alex", "--arr", '{"combinatorics": {"n": 4, "multiple_points": [[1, 2, 3, 4]]}}'],
    ["arr", "milnor-b1", "--fixture", "pencil:3", "--snf"],
    ["arr", "boundary", "--arr", '{"lines": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], "projective": true}'],
])
def test_subcommands_emit_json(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 0, out
    parsed = json.loads(out)
    assert json.loads(json.dumps(parsed)) == parsed
    code, text = run(capsys, *argv, "--format", "text")
    assert code == 0 and text.strip() and not text.lstrip().startswith("{")


def test_selected_values(capsys):
    assert run_json(capsys, "congruence-b1", "--fixture", "free:2", "--mod", "2", "--prime", "5")[1]["b1"] == 5
    assert run_json(capsys, "arr", "milnor-b1", "--fixture", "pencil:3")[1]["b1"] == 4
    assert run_json(capsys, "dwyer-fried", "--fixture", "abelian:2", "--class", "1,0")[1]["finite_betti"] is True


def test_input_errors_exit_2(capsys):
    for argv in (["depth", "--pres", "<x1 | x2>", "--values", "1", "--prime", "5"],
                 ["alex-poly"],
                 ["bogus"],
                 ["depth", "--fixture", "free:2", "--values", "1", "--prime", "5"],
                 ["arr", "lattice", "--arr", "{not json"],
                 ["alex-poly", "--fixture", "nope"]):
        code, out = run_json(capsys, *argv)
        assert code == 2 and out["error"]["type"] == "input_error"


def test_cap_exit_3(capsys):
    code, out = run_json(capsys, "alex-poly", "--fixture", "abelian:4", "--cap", "minors=3")
    assert code == 3 and out["error"]["type"] == "cap_exceeded"


def test_cap_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("ALEXLOCI_CAP_SUPPORT", "2")
    code, _ = run_json(capsys, "tau1", "--poly", "t1 + t2 + t3 - 3")
    assert code == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "alexloci", "tau1", "--poly", "t1 - 2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"nvars": 1, "subspaces": []}

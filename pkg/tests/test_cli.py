import io
import json
import subprocess
import sys

import pytest

from avalanche.cli import run
from avalanche.families import RootedTree, tree_poly


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_poly_text():
    assert call("poly", "--kind", "cycle", "--n", "3", "--format", "text") == (
        0, "2*x1*x2 + x1 + x2 + 2\n", "")


def test_poly_json_is_canonical():
    code, out, _ = call("poly", "--kind", "cycle", "--n", "3")
    assert code == 0
    data = json.loads(out)
    assert data["vars"] == 2
    assert data["terms"][0] == {"coef": "2", "exp": [1, 1]}
    assert out == call("poly", "--kind", "cycle", "--n", "3", "--threads", "2")[1]


def test_dist_and_burst():
    assert call("dist", "--kind", "complete", "--n", "4")[1] == '{"0":24,"1":9,"2":6,"3":9}\n'
    assert call("burst", "--kind", "complete", "--n", "4")[1] == '{"0":24,"1":9,"2":6,"3":9}\n'
    assert call("poly", "--kind", "cycle", "--n", "3", "--univariate", "--format", "text")[1] == (
        "2*x^2 + 2*x + 2\n")


def test_records(tmp_path):
    path = tmp_path / "r.jsonl"
    code, _, _ = call("poly", "--kind", "cycle", "--n", "3", "--records", str(path))
    assert code == 0
    lines = [json.loads(s) for s in path.read_text().splitlines()]
    assert len(lines) == 6
    assert lines[0] == {"burst": 0, "recurrent": [0, 1], "size": 0, "topplings": [0, 0], "vertex": 1}


def test_graph_file(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"vertices": 3, "sink": 0, "edges": [[0, 1], [1, 2], [2, 0]]}))
    assert call("poly", "--graph", str(path), "--format", "text")[1] == "2*x1*x2 + x1 + x2 + 2\n"


def test_recurrents():
    assert call("recurrents", "--kind", "cycle", "--n", "3")[1] == "0,1\n1,0\n1,1\n"
    assert call("recurrents", "--kind", "wheel", "--n", "4", "--count")[1] == "45\n"
    code, out, _ = call("recurrents", "--kind", "complete", "--n", "4", "--count", "--format", "json")
    assert json.loads(out) == {"recurrents": 16, "spanning_trees": 16, "states_scanned": 27}


def test_family_and_verify():
    assert call("family", "--kind", "wheel", "--n", "3")[1] == (
        "9*x0*x1*x2 + 2*x0*x1 + 2*x0*x2 + 2*x1*x2 + 3*x0 + 3*x1 + 3*x2 + 24\n")
    assert call("family", "--kind", "tree", "--parents", "3,3,0")[1] == (
        "x1^2*x2*x3 + x1*x2^2*x3 + x1*x2*x3\n")
    code, out, _ = call("verify", "--kind", "wheel", "--max-n", "6")
    assert code == 0
    assert [json.loads(s)["ok"] for s in out.splitlines()] == [True] * 4
    assert call("verify", "--kind", "tree", "--max-n", "5")[0] == 0


def test_tree_reconstruct(tmp_path):
    t = RootedTree.from_parents([0, 1, 1, 0, 4])
    path = tmp_path / "p.json"
    path.write_text(json.dumps(tree_poly(t).to_json()))
    assert call("tree-reconstruct", "--poly", str(path))[1] == '{"parents":[0,1,1,0,4]}\n'
    path.write_text(json.dumps({"vars": 1, "terms": [{"exp": [0], "coef": "2"}]}))
    code, _, err = call("tree-reconstruct", "--poly", str(path))
    assert code == 1 and "constant" in err


def test_phi(tmp_path):
    code, out, _ = call("phi", "--graph", "K10", "--sandpile", "8,7,8,1,0,3,7,2,4", "--vertex", "1")
    assert code == 0
    assert json.loads(out) == {"vertex": 1, "J": [2, 3, 7], "c1": [1, 2, 1], "c2": [1, 0, 3, 2, 4]}
    assert call("phi", "--graph", "K4", "--sandpile", "0,0,0", "--vertex", "1")[0] == 1
    assert call("phi", "--graph", "K4", "--sandpile", "2,2", "--vertex", "1")[0] == 1


def test_parking(tmp_path):
    path = tmp_path / "p.json"
    path.write_text("[0, 2, 0]")
    assert call("parking", "--check", str(path))[1] == '{"parking":true}\n'
    assert call("parking", "--from-sandpile", "2,2,2")[1] == '{"parking":[0,0,0]}\n'
    assert call("parking", "--to-sandpile", "0,1,0")[1] == '{"recurrent":[2,1,2]}\n'
    assert call("parking", "--to-sandpile", "1,1")[0] == 1


def test_snf():
    code, out, _ = call("snf", "--kind", "wheel", "--n", "5")
    assert json.loads(out) == {"invariant_factors": [1, 1, 1, 11, 11], "nontrivial": [11, 11],
                               "order": 121}
    assert call("snf", "--kind", "wheel", "--n", "4", "--format", "text")[1] == "3 15\n"


def test_grid_experiment_small():
    code, out, err = call("grid-experiment", "--rows", "3", "--cols", "4", "--drops", "50")
    assert code == 0 and "seed 0" in err
    report = json.loads(out)
    assert report["total"] == 50 and report["seed"] == 0
    assert "PCG64" in report["prng"]
    again = call("grid-experiment", "--rows", "3", "--cols", "4", "--drops", "50", "--seed", "0")
    assert again[1] == out and again[2] == ""


def test_limits(monkeypatch):
    code, _, err = call("poly", "--kind", "complete", "--n", "8", "--limit", "1000")
    assert code == 1 and "1000" in err
    assert call("poly", "--kind", "cycle", "--n", "3", "--limit", "0")[0] == 1
    monkeypatch.setenv("AVALANCHE_LIMIT", "5")
    assert call("recurrents", "--kind", "complete", "--n", "4")[0] == 1


def test_usage_errors():
    assert call("frobnicate")[0] == 2
    assert call("poly", "--kind", "cycle", "--n", "3", "--bogus")[0] == 2
    assert call("poly")[0] == 2
    assert call("poly", "--kind", "cycle")[0] == 1
    assert call("poly", "--kind", "grid", "--rows", "2")[0] == 1


def test_console_script_module():
    res = subprocess.run([sys.executable, "-m", "avalanche.cli", "family", "--kind", "cycle",
                          "--n", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "x1 + 1\n"

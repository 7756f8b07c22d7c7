from __future__ import annotations

import json

import pytest

from listqec.cli import main


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr()


def test_construct_and_verify_distance(tmp_path, capsys):
    cfg = write(tmp_path / "c.json", {"schema": 1, "object": "code", "name": "st", "code": {"family": "steane"}})
    code, _ = run(capsys, ["construct", cfg, "--out", str(tmp_path)])
    assert code == 0 and (tmp_path / "st.code").exists()
    code, out = run(capsys, ["verify", "--check", "distance", "--code", str(tmp_path / "st.code"), "--expect", "3"])
    assert code == 0 and json.loads(out.out)["distance"] == 3
    code, _ = run(capsys, ["verify", "--check", "distance", "--code", str(tmp_path / "st.code"), "--expect", "4"])
    assert code == 1


def test_matrix_code_without_recipe(tmp_path, capsys):
    cfg = write(tmp_path / "c.json", {"schema": 1, "object": "code", "name": "q",
                                      "code": {"family": "qgrs", "p": 7, "n": 6, "rate": "1/3"}})
    assert run(capsys, ["construct", cfg, "--out", str(tmp_path)])[0] == 0
    doc = json.loads((tmp_path / "q.code").read_text())
    doc.pop("recipe")
    write(tmp_path / "plain.code", doc)
    code, out = run(capsys, ["verify", "--check", "distance", "--code", str(tmp_path / "plain.code")])
    assert code == 0 and json.loads(out.out)["distance"] == 3


def test_verify_qld_and_decode(tmp_path, capsys):
    cfg = write(tmp_path / "c.json", {"schema": 1, "object": "code", "name": "st", "code": {"family": "steane"}})
    run(capsys, ["construct", cfg, "--out", str(tmp_path)])
    path = str(tmp_path / "st.code")
    assert run(capsys, ["verify", "--check", "qld", "--code", path, "--tau", "1/7", "--ell", "1"])[0] == 0
    assert run(capsys, ["verify", "--check", "qld", "--code", path, "--tau", "2/7", "--ell", "1"])[0] == 1
    code, out = run(capsys, ["decode", "--code", path, "--syndrome", "1 0 0 0 0 0", "--tau", "1/7"])
    assert code == 0 and json.loads(out.out)["list_size"] == 1
    assert run(capsys, ["decode", "--code", path, "--syndrome", "1 0", "--tau", "1/7"])[0] == 2


def test_graph_and_ptc(tmp_path, capsys):
    g = write(tmp_path / "g.json", {"schema": 1, "object": "graph", "name": "g",
                                    "graph": {"family": "random_regular", "n": 6, "r": 2, "seed": 1}})
    assert run(capsys, ["construct", g, "--out", str(tmp_path)])[0] == 0
    code, out = run(capsys, ["verify", "--check", "pseudorandom", "--graph", str(tmp_path / "g.graph"), "--eps", "1"])
    assert code == 0 and json.loads(out.out)["exhaustive"]
    p = write(tmp_path / "p.json", {"schema": 1, "object": "ptc", "name": "p", "ptc": {"p": 2, "lam": 2, "n_ptc": 4}})
    assert run(capsys, ["construct", p, "--out", str(tmp_path)])[0] == 0
    code, out = run(capsys, ["verify", "--check", "ptc-eps", "--ptc", str(tmp_path / "p.ptc")])
    assert code == 0 and json.loads(out.out)["ok"]


def test_simulate_private_writes_tables(tmp_path, capsys):
    cfg = write(tmp_path / "s.json", {
        "schema": 1, "pipeline": "private", "trials": 20,
        "qld": {"family": "random_css", "p": 3, "n": 12, "k": 4, "seed": 7},
        "ptc": {"p": 3, "lam": 2, "n_ptc": 4}, "delta": "1/12",
        "adversary": {"weight": 1},
    })
    code, _ = run(capsys, ["simulate", cfg, "--seed", "5", "--out", str(tmp_path / "o")])
    assert code == 0
    summary = json.loads((tmp_path / "o" / "summary.json").read_text())
    assert summary["trials"] == 20 and summary["master_seed"] == 5
    assert (tmp_path / "o" / "trials.csv").read_text().startswith("trial,seed")
    code, out = run(capsys, ["--format", "csv", "simulate", cfg])
    assert code == 0 and out.out.count("\n") == 21


def test_plan_and_bound(capsys):
    code, out = run(capsys, ["plan", "--rate", "0.5", "--gamma", "0.25"])
    res = json.loads(out.out)
    assert code == 0 and res["gamma2"] == "1/16" and res["R1"] == "8/15"
    code, out = run(capsys, ["bound", "--n", "100", "--k", "80", "--q", "4", "--delta", "1/10", "--format", "csv"])
    assert code == 0 and "bound,80.0" in out.out
    assert run(capsys, ["bound", "--n", "100", "--k", "81", "--q", "4", "--delta", "1/10"])[0] == 1


@pytest.mark.parametrize("doc", [
    {"object": "code", "code": {"family": "steane"}},
    {"schema": 2, "object": "code", "code": {"family": "steane"}},
    {"schema": 1, "object": "code", "code": {"family": "steane"}, "colour": 1},
    {"schema": 1, "object": "code", "code": {"family": "nope"}},
    {"schema": 1, "object": "code", "code": {"family": "qgrs", "p": 7, "n": 7, "rate": "1/3"}},
])
def test_config_errors_exit_2(tmp_path, capsys, doc):
    cfg = write(tmp_path / "bad.json", doc)
    assert run(capsys, ["construct", cfg, "--out", str(tmp_path)])[0] == 2


def test_argument_errors_exit_2(tmp_path, capsys):
    (tmp_path / "nan.json").write_text('{"schema": 1, "object": NaN}')
    assert run(capsys, ["construct", str(tmp_path / "nan.json")])[0] == 2
    assert run(capsys, ["plan", "--rate", "x", "--gamma", "1"])[0] == 2
    assert run(capsys, ["frobnicate"])[0] == 2
    assert run(capsys, ["plan", "--rate", "0.5", "--gamma", "0.25", "--threads", "0"])[0] == 2

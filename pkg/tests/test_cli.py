import dataclasses
import json
from fractions import Fraction as F

import pytest

from pasim import cli
from pasim.fixtures import example_one, matching_pennies, single_state
from pasim.lp import LinearProgram, build_canfollow_lp
from pasim.model import dump_pgs, parse_pgs
from pasim.orderings import pair_from_document
from pasim.refine import gcpp


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, g in (("ex1", example_one()), ("mp", matching_pennies()), ("one", single_state())):
        path = tmp_path / f"{name}.json"
        path.write_text(dump_pgs(g))
        out[name] = str(path)
    return out


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(files, tmp_path, capsys):
    assert run(capsys, "validate", files["ex1"])[0] == 0
    doc = json.loads(open(files["ex1"]).read())
    doc["transitions"][0]["dist"] = {"s1": "1/2", "s2": "1/3"}
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, err = run(capsys, "validate", bad)
    assert code == 1 and out == "" and "(s0, 0, 0)" in err
    empty = tmp_path / "empty.json"
    empty.write_text("")
    code, out, err = run(capsys, "validate", empty)
    assert code == 1 and out == "" and "position 0" in err
    code, out, _ = run(capsys, "validate", tmp_path / "missing.json")
    assert code == 1 and out == ""


def test_solve_relation(files, capsys):
    code, out, _ = run(capsys, "solve", files["ex1"], "--player", "1", "--emit", "relation")
    assert code == 0
    assert json.loads(out) == {"relation": [["s0", "s0"], ["s1", "s1"], ["s2", "s2"]]}
    code, out, _ = run(capsys, "solve", files["one"])
    doc = json.loads(out)
    assert doc["partition"]["blocks"] == [["s"]] and doc["relation"] == [["s", "s"]]


def test_solve_stats_and_round_trip(files, tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, err = run(capsys, "solve", files["mp"], "--stats", "--out", target)
    assert code == 0 and out == ""
    stats = dict(line.split("=", 1) for line in err.splitlines())
    assert int(stats["outer_iterations"]) <= 5
    assert int(stats["relation_size"]) >= 4
    doc = json.loads(target.read_text())
    assert ["s", "t"] in doc["relation"] and ["t", "s"] in doc["relation"]
    g = matching_pennies()
    assert pair_from_document(doc["partition"], g).same_as(gcpp(g).pair)


def test_solve_dot(files, capsys):
    code, out, _ = run(capsys, "solve", files["mp"], "--emit", "dot")
    assert code == 0 and out.startswith("digraph")
    assert '"s" -> "t";' in out and '"x" -> "x";' not in out


def test_solve_reports_order_cycles(files, capsys, monkeypatch):
    from pasim.orderings import OrderCycleError

    def broken(*a, **k):
        raise OrderCycleError("cycle between blocks 0 and 1")
    monkeypatch.setattr(cli, "gcpp", broken)
    code, out, err = run(capsys, "solve", files["ex1"])
    assert code == 2 and out == "" and "invariant" in err


def test_query(files, capsys):
    assert run(capsys, "query", files["ex1"], "s0", "s1")[:2] == (3, "false\n")
    assert run(capsys, "query", files["ex1"], "s0", "s0")[:2] == (0, "true\n")
    code, out, err = run(capsys, "query", files["ex1"], "s0", "nope")
    assert code == 1 and out == "" and "nope" in err
    code, out, _ = run(capsys, "query", files["mp"], "s", "t", "-v")
    assert code == 0
    assert "follow a: alpha = {a: 1/2, b: 1/2}" in out
    assert "follow b: alpha = {a: 1/2, b: 1/2}" in out


@pytest.mark.parametrize("name", ["ex1", "mp", "one"])
@pytest.mark.parametrize("player", ["1", "2"])
def test_oracle_agrees_on_fixtures(files, capsys, name, player):
    code, out, _ = run(capsys, "oracle", files[name], "--player", player)
    assert code == 0 and out.startswith("agree")


def test_oracle_catches_a_corrupted_coefficient(files, capsys, monkeypatch):
    def corrupted(*args, **kw):
        flp = build_canfollow_lp(*args, **kw)
        rows = list(flp.program.constraints)
        k = min(i for i, (_, rel, _) in enumerate(rows) if rel == "<=")
        c, rel, b = rows[k]
        rows[k] = (c, rel, b - F(1, 2))
        prog = LinearProgram(flp.program.num_vars, tuple(rows), flp.program.bounds)
        return dataclasses.replace(flp, program=prog)

    monkeypatch.setattr(cli, "gcpp", lambda g, player=1, **kw: gcpp(g, player, lp_builder=corrupted))
    code, out, err = run(capsys, "oracle", files["mp"])
    assert code == 4 and out == ""
    assert "only brute force has (s, t)" in err


def test_gen(tmp_path, capsys):
    args = ["gen", "--states", 5, "--actions1", 2, "--actions2", 2, "--denominator", 4, "--seed", 7]
    code, first, _ = run(capsys, *args)
    assert code == 0 and run(capsys, *args)[1] == first
    path = tmp_path / "g.json"
    path.write_text(first)
    assert run(capsys, "validate", path)[0] == 0
    assert run(capsys, "oracle", path)[0] == 0


def test_gen_minimal_model(capsys):
    code, out, _ = run(capsys, "gen", "--states", 1, "--actions1", 1, "--actions2", 1)
    g = parse_pgs(out)
    assert code == 0 and g.n_states == 1 and g.delta(0, 0, 0).support() == {0}


@pytest.mark.parametrize("flag", ["--states", "--actions1", "--denominator", "--branch", "--labels"])
def test_gen_rejects_bad_parameters(capsys, flag):
    code, out, err = run(capsys, "gen", flag, 0)
    assert code == 1 and out == "" and err.startswith("error:")


def test_gen_respects_distribution_shape(capsys):
    _, out, _ = run(capsys, "gen", "--states", 6, "--denominator", 3, "--branch", 2, "--seed", 4)
    g = parse_pgs(out)
    for row in g.transitions:
        for cell in row:
            for d in cell:
                assert len(d.support()) <= 2
                assert all(v.denominator <= 3 for _, v in d.entries)

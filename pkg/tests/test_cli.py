# tests/test_cli.py
import json

import pytest

import app
from acquaintance.formats import read_graph, read_strategy, write_graph, write_strategy
from models import Strategy
from tests.helpers import family


@pytest.fixture
def graph_file(tmp_path):
    def make(g, name="g.txt"):
        path = tmp_path / name
        write_graph(g, str(path))
        return str(path)

    return make


def test_gen_then_exact(tmp_path, capsys):
    path = str(tmp_path / "p4.txt")
    assert app.main(["gen", "--family", "path", "--params", "4", "-o", path]) == 0
    assert read_graph(path) == family("path", 4)
    capsys.readouterr()
    assert app.main(["exact", path]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_gen_prints_graph_without_output(capsys):
    assert app.main(["gen", "--family", "cycle", "--params", "4"]) == 0
    assert capsys.readouterr().out == "4 4\n0 1\n0 3\n1 2\n2 3\n"


def test_gen_planted_writes_coloring(tmp_path):
    graph, coloring = str(tmp_path / "g.txt"), str(tmp_path / "c.txt")
    args = ["gen", "--family", "planted", "--params", "6", "3", "0.5", "--seed", "2", "-o", graph, "--coloring", coloring]
    assert app.main(args) == 0
    out = str(tmp_path / "h.txt")
    assert app.main(["reduce", graph, coloring, "--t", "2", "-o", out]) == 0
    assert read_graph(out).n == 18


def test_unknown_family_is_an_error():
    assert app.main(["gen", "--family", "petersen", "--params", "10"]) == 2


def test_strat_kbip_then_verify(tmp_path, graph_file, capsys):
    graph = graph_file(family("kbip", 8, 8))
    out = str(tmp_path / "s.json")
    assert app.main(["strat", graph, "--method", "kbip", "-o", out]) == 0
    assert len(read_strategy(out)) == 3
    assert app.main(["verify", graph, out]) == 0
    assert "witness: 3 rounds" in capsys.readouterr().out


def test_strat_writes_to_stdout(graph_file, capsys):
    graph = graph_file(family("path", 6))
    assert app.main(["strat", graph, "--method", "path"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["n"] == 6
    assert data["metadata"]["generator"] == "path"


def test_strat_rejects_wrong_family(graph_file):
    graph = graph_file(family("cycle", 5))
    assert app.main(["strat", graph, "--method", "tree"]) == 2


def test_verify_reordered_rounds_fails(tmp_path, graph_file, capsys):
    graph = graph_file(family("path", 4))
    path = str(tmp_path / "s.json")
    write_strategy(Strategy.from_rounds(4, [[(0, 1)], [(0, 1)], [(2, 3)]]), path)
    trace = str(tmp_path / "trace.csv")
    assert app.main(["--json", "verify", graph, path, "--trace", trace]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["witness"] is False
    assert report["never_met"]
    with open(trace) as fh:
        assert fh.readline().strip() == "round,met_pairs"


def test_verify_invalid_round_exits_two(tmp_path, graph_file):
    graph = graph_file(family("path", 4))
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"n": 4, "rounds": [[[0, 2]]]}))
    assert app.main(["verify", graph, str(path)]) == 2


def test_exact_round_cap(graph_file, capsys):
    graph = graph_file(family("path", 4))
    assert app.main(["exact", graph, "--max-rounds", "1"]) == 1
    assert "exceeded: AC > 1" in capsys.readouterr().out


def test_bounds_json(graph_file, capsys):
    graph = graph_file(family("octopus", 3, 2))
    assert app.main(["--json", "bounds", graph]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["separator"] == [6]
    assert report["best_lower"] >= 1


def test_ac1_audit_certifies_path(graph_file, capsys):
    graph = graph_file(family("path", 6))
    assert app.main(["ac1", graph]) == 3
    assert "edge count" in capsys.readouterr().out


def test_ac1_strategies_on_cycle(tmp_path, graph_file):
    graph = graph_file(family("cycle", 4))
    for mode in ("det", "rand"):
        out = str(tmp_path / f"{mode}.json")
        assert app.main(["ac1", graph, "--mode", mode, "-o", out]) == 0
        assert app.main(["verify", graph, out]) == 0


def test_double_writes_witness(tmp_path, graph_file):
    graph = graph_file(family("cycle", 5))
    out, witness = str(tmp_path / "d.txt"), str(tmp_path / "w.json")
    assert app.main(["double", graph, "-o", out, "--witness", witness]) == 0
    assert len(read_strategy(witness, read_graph(out))) == 1
    assert app.main(["verify", out, witness]) == 0


def test_audit_with_pairs(graph_file):
    graph = graph_file(family("cycle", 4))
    assert app.main(["audit", graph, "--pairs", "0-1"]) == 0
    assert app.main(["audit", graph, "--pairs", "0-1,x"]) == 2


def test_missing_file_and_bad_flags(tmp_path):
    assert app.main(["bounds", str(tmp_path / "missing.txt")]) == 2
    assert app.main(["bounds", "--no-such-flag"]) == 2


def test_gen_from_file_family(tmp_path, graph_file, capsys):
    source = graph_file(family("barbell", 3), "barbell.txt")
    assert app.main(["gen", "--family", "file", "--input", source]) == 0
    assert capsys.readouterr().out.startswith("6 7\n")


def test_bad_log_level_is_a_usage_error(graph_file):
    graph = graph_file(family("path", 4))
    assert app.main(["--log-level", "chatty", "bounds", graph]) == 2
    assert app.main(["--log-level", "debug", "bounds", graph]) == 0

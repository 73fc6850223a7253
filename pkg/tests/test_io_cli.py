import json
import subprocess
import sys
from fractions import Fraction

import pytest

from reorient import io
from reorient.core import MixedGraph


def run_cli(args, cwd=None):
    proc = subprocess.run(
        [sys.executable, "-m", "reorient.cli", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )
    return proc


# -- formats ------------------------------------------------------------------


def test_parse_digon():
    g = io.parse_graph("a 0 1\na 1 0\n")
    assert g.m_arcs == 2 and g.arc_pairs() == [(0, 1), (1, 0)]


def test_parse_loop_is_error_with_line():
    with pytest.raises(io.FormatError) as err:
        io.parse_graph("e 0 1\ne 2 2\n")
    assert "line 2" in str(err.value)


def test_parse_comments_and_header():
    g = io.parse_graph("# hello\nv 5\ne 0 1  # trailing\n\na 3 4\n")
    assert g.n == 5 and g.m_edges == 1 and g.m_arcs == 1


def test_parse_unknown_record():
    with pytest.raises(io.FormatError):
        io.parse_graph("q 1 2\n")


def test_emit_parse_round_trip_idempotent():
    text = "e 0 1\ne 0 1\na 2 0\nv 4\n"
    once = io.emit_graph(io.parse_graph(text))
    twice = io.emit_graph(io.parse_graph(once))
    assert once == twice


def test_json_round_trip():
    g = io.parse_graph("v 3\ne 0 1\na 1 2\n")
    doc = io.graph_to_json(g)
    assert io.graph_from_json(json.loads(json.dumps(doc))) == g


def test_sat_round_trip():
    sat = io.parse_sat("c comment\np cnf 2 3\n1 2 0\n1 -2 0\n-1 2 0\n")
    assert sat.num_vars == 2 and len(sat.clauses) == 3
    assert io.parse_sat(io.emit_sat(sat)) == sat
    with pytest.raises(io.FormatError):
        io.parse_sat("p cnf 2 1\n1 2 3 0\n")
    with pytest.raises(io.FormatError):
        io.parse_sat("1 2 0\n")


def test_requirement_and_weights():
    req = io.parse_requirement("r 0 1 2\nr 1 0 1\n")
    assert req.get(0, 1) == 2 and req.get(1, 0) == 1 and req.get(0, 2) == 0
    assert io.parse_requirement(io.emit_requirement(req)).pairs == req.pairs
    w = io.parse_weights("w e 0 1/2\nw e 2 3\nw a 1 7/3\n")
    assert w[("e", 0)] == Fraction(1, 2)
    assert w[("a", 1)] == Fraction(7, 3)
    g = MixedGraph.graph(2, [(0, 1), (0, 1), (0, 1)])
    assert io.edge_weight_list(g, w) == [Fraction(1, 2), Fraction(1), Fraction(3)]
    with pytest.raises(io.FormatError):
        io.parse_weights("w e 0 1/0\n")


def test_labels_sidecar():
    from reorient.reductions import build_rocket

    r = build_rocket("out", 1)
    side = io.emit_labels(r.graph)
    assert "label a" in side
    # the sidecar still parses as an instance
    g = io.parse_graph(side)
    assert g.m_arcs == r.graph.m_arcs


# -- CLI ----------------------------------------------------------------------


def test_cli_exit_codes(tmp_path):
    good = tmp_path / "k3b.txt"
    good.write_text("a 0 1\na 1 0\na 1 2\na 2 1\na 0 2\na 2 0\n")
    assert run_cli(["check", "--mode", "arc-strong", "--k", "2", "--input", str(good)]).returncode == 0
    bad = tmp_path / "c4.txt"
    bad.write_text("a 0 1\na 1 2\na 2 3\na 3 0\n")
    assert run_cli(["check", "--mode", "arc-strong", "--k", "2", "--input", str(bad)]).returncode == 1
    loops = tmp_path / "loop.txt"
    loops.write_text("e 1 1\n")
    assert run_cli(["check", "--mode", "strong", "--input", str(loops)]).returncode == 2
    assert run_cli(["check", "--mode", "strong", "--input", str(tmp_path / "nope.txt")]).returncode == 2


def test_cli_solve_budget_contract(tmp_path):
    c5 = tmp_path / "c5.txt"
    c5.write_text("\n".join(f"e {i} {(i + 1) % 5}" for i in range(5)) + "\n")
    ok = run_cli(["--format", "json", "poly", "w23eda", "--input", str(c5)])
    doc = json.loads(ok.stdout)
    assert doc["optimum"] == 4 and ok.returncode == 0
    # doubling with a budget below the optimum is an infeasible run
    tight = run_cli(["solve", "doubling", "--c", "3", "--budget", "3", "--input", str(c5)])
    assert tight.returncode == 1
    loose = run_cli(["solve", "doubling", "--c", "3", "--budget", "4", "--input", str(c5)])
    assert loose.returncode == 0


def test_cli_gen_deterministic(tmp_path):
    a = run_cli(["--format", "json", "gen", "random-digraph", "--n", "5", "--m", "8", "--seed", "11"])
    b = run_cli(["--format", "json", "gen", "random-digraph", "--n", "5", "--m", "8", "--seed", "11"])
    da, db = json.loads(a.stdout), json.loads(b.stdout)
    da.pop("timing_ms")
    db.pop("timing_ms")
    assert da == db


def test_cli_gen_rocket_and_shape_checks():
    out = run_cli(["--format", "json", "gen", "rocket", "--k", "2", "--direction", "out"])
    doc = json.loads(out.stdout)
    assert doc["vertices"] == 11 and doc["arcs"] == 16
    sat = run_cli(["--format", "json", "gen", "s3b-sat", "--vars", "2", "--seed", "1"])
    assert sat.returncode == 0
    cactus = run_cli(["--format", "json", "gen", "cactus", "--n", "6", "--seed", "7"])
    assert cactus.returncode == 0


def test_cli_witness_replays(tmp_path):
    g = tmp_path / "g.txt"
    g.write_text("e 0 1\ne 1 2\ne 2 0\ne 0 3\ne 3 1\n")
    res = run_cli(["--format", "json", "solve", "doubling", "--c", "3", "--input", str(g)])
    doc = json.loads(res.stdout)
    graph = io.parse_graph(g.read_text())
    doubled = graph.double_edges(doc["witness"])
    replay = tmp_path / "doubled.txt"
    replay.write_text(io.emit_graph(doubled))
    check = run_cli(["check", "--mode", "edge-connectivity", "--k", "3", "--input", str(replay)])
    assert check.returncode == 0


def test_cli_reduce_emits_sidecar(tmp_path):
    cnf = tmp_path / "inst.cnf"
    cnf.write_text("p cnf 2 3\n1 2 0\n1 -2 0\n-1 2 0\n")
    out = tmp_path / "d.txt"
    side = tmp_path / "d.labels"
    res = run_cli([
        "--format", "json", "reduce", "3sdo", "--input", str(cnf),
        "--ell", "3", "--output", str(out), "--sidecar", str(side),
    ])
    doc = json.loads(res.stdout)
    assert doc["budget"] == 12
    d = io.parse_graph(out.read_text())
    assert d.n == 44
    assert "label v" in side.read_text()


def test_cli_verify_reduction_3sdo(tmp_path):
    cnf = tmp_path / "inst.cnf"
    cnf.write_text("p cnf 2 3\n1 2 0\n1 -2 0\n-1 2 0\n")
    res = run_cli(["--format", "json", "verify-reduction", "3sdo", "--input", str(cnf), "--ell", "3"])
    doc = json.loads(res.stdout)
    assert res.returncode == 0 and doc["source_positive"] and doc["target_positive"]


def test_cli_verify_reduction_m2sar(tmp_path):
    inst = tmp_path / "m.txt"
    inst.write_text("v 3\ne 0 1\na 1 2\n")
    res = run_cli(["verify-reduction", "m2sar", "--input", str(inst), "--t", "0"])
    assert res.returncode == 0


def test_cli_check_cactus_threads(tmp_path):
    g = tmp_path / "cac.txt"
    g.write_text("e 0 1\ne 1 2\ne 2 0\ne 2 3\ne 3 4\ne 4 2\n")
    one = run_cli(["check", "--mode", "cactus", "--input", str(g)])
    four = run_cli(["check", "--mode", "cactus", "--input", str(g), "--threads", "4"])
    assert one.returncode == four.returncode == 0


def test_cli_size_cap_is_error(tmp_path):
    g = tmp_path / "big.txt"
    g.write_text("\n".join(f"e 0 {1 + i % 3}" for i in range(23)) + "\n")
    res = run_cli(["solve", "maxpo", "--target", "2-arc-strong", "--input", str(g)])
    assert res.returncode == 2

import json
import random

import pytest

from recolour import ReconfigInstance, new_graph
from recolour.cli import CliError, RunReport, main, pick_solver
from recolour.io import format_instance, parse_instance, parse_roles, parse_witness

from .support import random_coloured_graph, random_walk


def write(tmp_path, name, g, k, a, b, ell):
    path = tmp_path / name
    path.write_text(format_instance(ReconfigInstance(g, k, a, b, ell)))
    return str(path)


EDGE = new_graph(2, [(0, 1)])
TRIANGLE = new_graph(3, [(0, 1), (1, 2), (0, 2)])


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_solve_identity_k3(tmp_path, capsys):
    path = write(tmp_path, "id.inst", EDGE, 3, (1, 2), (1, 2), 0)
    code, rep = run_json(capsys, ["--json", "solve", path])
    assert code == 0
    assert rep["decision"] == "yes" and rep["distance"] == 0 and rep["solver"] == "solver3"
    assert rep["schema"] == 1


def test_solve_edge_swap_over_budget(tmp_path, capsys):
    path = write(tmp_path, "e.inst", EDGE, 3, (2, 3), (3, 2), 2)
    code, rep = run_json(capsys, ["solve", path, "--json"])
    assert code == 1 and rep["decision"] == "no" and rep["distance"] == 3


def test_solve_k4_writes_verified_witness(tmp_path, capsys):
    path = write(tmp_path, "k4.inst", EDGE, 4, (1, 2), (2, 1), 3)
    wpath = tmp_path / "w.txt"
    code, rep = run_json(capsys, ["--json", "solve", path, "--witness", str(wpath)])
    assert code == 0 and rep["solver"] == "fpt" and rep["witness_length"] == 3
    assert len(parse_witness(wpath.read_text(), 2, 4)) == 3
    assert main(["verify", path, str(wpath)]) == 0


def test_solve_k3_witness_then_verify(tmp_path, capsys):
    path = write(tmp_path, "e.inst", EDGE, 3, (2, 3), (3, 2), 3)
    wpath = tmp_path / "w.txt"
    assert main(["solve", path, "--witness", str(wpath)]) == 0
    out = capsys.readouterr().out
    assert "decision=yes" in out and "distance=3" in out
    code, rep = run_json(capsys, ["--json", "verify", path, str(wpath)])
    assert code == 0 and rep["witness_length"] == 3


def test_solve_unreachable(tmp_path, capsys):
    path = write(tmp_path, "t.inst", TRIANGLE, 3, (1, 2, 3), (2, 3, 1), 50)
    code, rep = run_json(capsys, ["--json", "solve", path])
    assert code == 1 and rep["reason"] == "unreachable"


def test_solve_small_k(tmp_path, capsys):
    path = write(tmp_path, "k2.inst", new_graph(2, []), 2, (1, 1), (2, 1), 1)
    code, rep = run_json(capsys, ["--json", "solve", path])
    assert code == 0 and rep["solver"] == "exact-small-k" and rep["distance"] == 1


@pytest.mark.parametrize("forced", ["fpt", "oracle", "solver3"])
def test_force_solver_agrees(tmp_path, capsys, forced):
    path = write(tmp_path, "e.inst", EDGE, 3, (2, 3), (3, 2), 3)
    code, rep = run_json(capsys, ["--json", "solve", path, "--force-solver", forced])
    assert code == 0 and rep["solver"] == forced


def test_force_solver_rejected(tmp_path, capsys):
    path = write(tmp_path, "k4.inst", EDGE, 4, (1, 2), (2, 1), 3)
    assert main(["solve", path, "--force-solver", "solver3"]) == 3
    assert "needs k=3" in capsys.readouterr().err


def test_pick_solver():
    assert pick_solver(1, None) == "exact-small-k"
    assert pick_solver(3, None) == "solver3"
    assert pick_solver(7, None) == "fpt"
    assert pick_solver(3, "fpt") == "fpt"
    with pytest.raises(CliError):
        pick_solver(3, "exact-small-k")


def test_oracle_examples(tmp_path, capsys):
    path = write(tmp_path, "id.inst", EDGE, 3, (1, 2), (1, 2), 0)
    code, rep = run_json(capsys, ["--json", "oracle", path])
    assert code == 0 and rep["distance"] == 0
    path = write(tmp_path, "t.inst", TRIANGLE, 3, (1, 2, 3), (2, 3, 1), 5)
    code, rep = run_json(capsys, ["--json", "oracle", path])
    assert code == 1 and rep["decision"] == "no"
    path = write(tmp_path, "e.inst", EDGE, 3, (2, 3), (3, 2), 5)
    code, rep = run_json(capsys, ["--json", "oracle", path])
    assert code == 0 and rep["distance"] == 3


def test_oracle_cap_inconclusive(tmp_path, capsys):
    path = write(tmp_path, "big.inst", new_graph(6, []), 3, (1,) * 6, (3,) * 6, 10)
    code, rep = run_json(capsys, ["--json", "oracle", path, "--max-states", "5"])
    assert code == 2 and rep["decision"] == "inconclusive"


def test_verify_final_mismatch(tmp_path, capsys):
    path = write(tmp_path, "e.inst", EDGE, 3, (2, 3), (3, 2), 3)
    wpath = tmp_path / "w.txt"
    wpath.write_text("r 2 1\n")
    code, rep = run_json(capsys, ["--json", "verify", path, str(wpath)])
    assert code == 1 and rep["reason"] == "final mismatch"


def test_verify_reports_step(tmp_path, capsys):
    path = write(tmp_path, "e.inst", EDGE, 3, (2, 3), (3, 2), 3)
    wpath = tmp_path / "w.txt"
    wpath.write_text("r 2 1\nr 1 1\n")
    code, rep = run_json(capsys, ["--json", "verify", path, str(wpath)])
    assert code == 1 and rep["failing_step"] == 2


def test_verify_empty_identity(tmp_path, capsys):
    path = write(tmp_path, "id.inst", EDGE, 3, (1, 2), (1, 2), 0)
    wpath = tmp_path / "w.txt"
    wpath.write_text("")
    assert main(["verify", path, str(wpath)]) == 0


def test_gen_hs_two_singletons(tmp_path, capsys):
    src = tmp_path / "hs.txt"
    src.write_text("h 2 2 2\nf 1\nf 2\n")
    code, rep = run_json(capsys, ["--json", "gen-hs", str(src), "--out", str(tmp_path / "g")])
    assert code == 0 and rep["vertices"] == 16 and rep["ell"] == 19
    inst = parse_instance((tmp_path / "g.inst").read_text())
    assert inst.graph.n == 16 and inst.ell == 19 and inst.k == 4
    roles = parse_roles((tmp_path / "g.roles").read_text())
    assert roles[0] == "s" and len(roles) == 16


def test_gen_hs_figure(tmp_path, capsys):
    src = tmp_path / "fig.txt"
    src.write_text("h 4 2 1\nf 1 2 4\nf 2 3 4\n")
    assert main(["gen-hs", str(src), "--out", str(tmp_path / "fig")]) == 0
    assert "|V|=34" in capsys.readouterr().out
    code, rep = run_json(capsys, ["--json", "gen-hs", str(src), "--out", str(tmp_path / "raw"), "--no-preprocess"])
    assert rep["vertices"] == 34


def test_gen_hs_errors(tmp_path, capsys):
    src = tmp_path / "empty.txt"
    src.write_text("h 2 0 1\n")
    assert main(["gen-hs", str(src), "--out", str(tmp_path / "x")]) == 3
    src.write_text("h 2 1 1\nf 1\n")
    assert main(["gen-hs", str(src), "-k", "3", "--out", str(tmp_path / "x")]) == 3
    src.write_text("h 3 1 1\nf 1\n")
    assert main(["gen-hs", str(src), "--no-preprocess", "--out", str(tmp_path / "x")]) == 3


def test_errors_exit_three(tmp_path, capsys):
    bad = tmp_path / "bad.inst"
    bad.write_text("p recolour 2 1 3 1\ne 1 2\na 1 1\n")
    assert main(["solve", str(bad)]) == 3
    assert main(["solve", str(tmp_path / "missing.inst")]) == 3
    err = capsys.readouterr().err
    assert "missing 'a' assignment for vertex 2" in err


def test_usage_error_exit_three(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 3


def test_seed_accepted_globally(tmp_path, capsys):
    path = write(tmp_path, "id.inst", EDGE, 3, (1, 2), (1, 2), 0)
    assert main(["--seed", "7", "solve", path]) == 0
    assert main(["solve", "--seed", "7", path]) == 0


def test_report_json_roundtrip():
    rep = RunReport("yes", "fpt", 3, "w.txt", 3, None, None, {"solve": 1.5})
    assert RunReport.from_json(rep.to_json()) == rep
    assert "distance=3" in rep.summary()


def test_dispatch_agrees_with_oracle(tmp_path, capsys):
    rng = random.Random(17)
    for i in range(20):
        k = rng.choice((2, 3, 4))
        g, a = random_coloured_graph(rng, rng.randint(1, 5), k)
        b = random_walk(g, k, a, 4, rng)
        path = write(tmp_path, f"r{i}.inst", g, k, a, b, rng.randint(0, 4))
        assert main(["solve", path]) == main(["oracle", path])
    capsys.readouterr()

import io
import json

import pytest

from hypercube_ex.bounds import theorem1_pipeline
from hypercube_ex.cli import main
from hypercube_ex.construct import make_params, run_construction
from hypercube_ex.cycles import census
from hypercube_ex.exact import ex_cube
from hypercube_ex.hypergraph import cycle_graph, dump_hypergraph, two_lift
from hypercube_ex.partite import build_representation


def run(argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def strip_times(text):
    doc = json.loads(text)
    for key in ("started", "finished"):
        doc["manifest"].pop(key)
    return doc


def test_rep_build_verify_round_trip(monkeypatch):
    code, out, _ = run(["rep", "build", "--ell", "7"])
    assert code == 0
    assert json.loads(out)["result"] == build_representation(7).as_dict()
    code, out2, _ = run(["rep", "verify"], stdin=out, monkeypatch=monkeypatch)
    doc = json.loads(out2)
    assert code == 0 and doc["result"]["passed"]
    assert [c["clause"] for c in doc["result"]["clauses"]][0] == "i-cycle"


def test_rep_verify_failure_exit(monkeypatch, tmp_path):
    d = build_representation(7).as_dict()
    d["a_seq"][2] = [1, 4, 5]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(d))
    code, out, _ = run(["rep", "verify", "--input", str(path)])
    assert code == 1
    assert json.loads(out)["result"]["clauses"][0]["passed"] is False


def test_bounds():
    code, out, _ = run(["bounds", "--ell", "7"])
    doc = json.loads(out)
    assert code == 0 and doc["result"]["final"] == "11/12"
    assert doc["result"]["pipeline"] == theorem1_pipeline(7).as_dict()
    code, text, _ = run(["bounds", "--ell", "9", "--format", "text"])
    assert "8/9" in text


def test_cycles_count():
    code, out, _ = run(["cycles", "count", "--n", "3", "--two-ell", "4"])
    res = json.loads(out)["result"]
    c = census(3, 4)
    assert code == 0 and (res["N"], res["x"]) == (c.total, c.x) == (6, 2)


def test_check_bound_csv():
    code, out, err = run(["cycles", "check-bound", "--n-range", "2,3,4", "--two-ell", "4", "--format", "csv"])
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "n,two_ell,N,x,ratio" and len(lines) == 4
    assert "manifest" in json.loads(err)


def test_enumerate_from_file(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("dim=2\n{}-{1}\n{1}-{1,2}\n{2}-{1,2}\n{}-{2}\n")
    code, out, _ = run(["cycles", "enumerate", "--graph", str(path), "--two-ell", "4"])
    res = json.loads(out)["result"]
    assert res["count"] == 1 and "cycle: {} {1} {1,2} {2}" in res["witnesses"][0]


def test_construct_matches_library():
    code, out, _ = run(["construct", "--n", "6", "--ell", "2", "--c", "0.5", "--seed", "1"])
    res = json.loads(out)["result"]
    lib = run_construction(make_params(6, 2, 0.5, 1)).as_dict()
    assert code == 0 and res == json.loads(json.dumps(lib))


def test_construct_sweep_csv():
    code, out, _ = run(["construct", "--sweep-n", "6,7", "--trials", "3", "--format", "csv"])
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 3 and lines[0].startswith("n,ell,c")


def test_lll_report():
    code, out, _ = run(["lll-report", "--n", "2", "--ell", "2"])
    res = json.loads(out)["result"]
    assert code == 0 and res["D_bound"] == 4.0


def test_exact_commands():
    code, out, _ = run(["exact", "graph", "--n", "5", "--pattern", "C4"])
    assert code == 0 and json.loads(out)["result"]["value"] == 6
    code, out, _ = run(["exact", "cube", "--n", "3", "--two-ell", "4"])
    assert json.loads(out)["result"]["value"] == ex_cube(3, 4).value == 9


def test_lift_commands(tmp_path):
    code, out, _ = run(["lift", "build", "--graph", "C4"])
    res = json.loads(out)["result"]
    assert code == 0 and res["file"] == dump_hypergraph(two_lift(cycle_graph(4)))
    path = tmp_path / "g.txt"
    path.write_text(res["file"])
    code, out, _ = run(["lift", "extract", "--input", str(path), "--target", "C4"])
    res = json.loads(out)["result"]
    assert code == 0 and res["pipeline"]["success"] and res["stars"]["upper_q_bound_check"]


@pytest.mark.parametrize("argv,code", [
    (["rep", "build", "--ell", "6"], 2),
    (["nonsense"], 2),
    (["construct", "--n", "4", "--c", "10"], 2),
    (["cycles", "count", "--n", "6", "--two-ell", "8", "--budget", "100"], 3),
    (["exact", "cube", "--n", "5", "--two-ell", "4"], 3),
])
def test_exit_codes(argv, code, capsys):
    assert run(argv)[0] == code


def test_budget_flag_after_subcommand():
    assert run(["cycles", "count", "--n", "6", "--two-ell", "8", "--budget", "100"])[0] == 3
    assert run(["--budget", "100", "cycles", "count", "--n", "6", "--two-ell", "8"])[0] == 3


def test_manifest_and_determinism():
    argv = ["construct", "--n", "7", "--seed", "5", "--emit-edges"]
    a, b = strip_times(run(argv)[1]), strip_times(run(argv)[1])
    assert a == b
    m = a["manifest"]
    assert m["subcommand"] == "construct" and m["seed"] == 5 and len(m["output_digest"]) == 64

import json
import subprocess
import sys
from pathlib import Path


from qpsilt.cli import cmd_verify_mizuno, main
from qpsilt.session import Session

DATA = Path(__file__).parent.parent / "src" / "qpsilt" / "data"
J3_FILE = str(DATA / "three_cycle.qps")
A2_FILE = str(DATA / "a2.qps")


def run_json(capsys, *argv):
    code = main(list(argv) + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_verify_mizuno_pass(capsys):
    code, rep = run_json(capsys, "verify-mizuno", J3_FILE, "W", "--vertices", "1", "--sides", "L")
    assert code == 0 and rep["verdict"] == "invariant-level PASS"
    assert rep["endomorphism_side"]["arrows"] == [["1", "3"], ["2", "1"]]
    assert rep["qp_side"]["dim"] == 6


def test_verify_mizuno_empty_sequence(capsys):
    code, rep = run_json(capsys, "verify-mizuno", J3_FILE, "J")
    assert code == 0 and rep["checks"] == {"quiver": True, "dim": True, "rad_layers": True}


def test_verify_mizuno_leaving_the_window(capsys):
    code, rep = run_json(capsys, "verify-mizuno", J3_FILE, "W", "--vertices", "1", "2", "3",
                         "--sides", "L", "R", "L")
    assert code == 1 and rep["error"] == "LeavesWindowError"
    assert rep["message"].startswith("step 1:")


def test_verify_mizuno_not_self_injective(tmp_path, capsys):
    f = tmp_path / "line.qps"
    f.write_text("quiver L { vertices 1 2; arrows a: 1 -> 2; }\npotential Z on L = 0;\n")
    code, rep = run_json(capsys, "verify-mizuno", str(f), "Z", "--vertices", "1")
    assert code == 1 and rep["verdict"] == "FAIL" and not rep["self_injective"]


def test_two_cycle_vertex_is_a_legality_error(tmp_path, capsys):
    f = tmp_path / "two_cycle.qps"
    f.write_text("quiver T { vertices 1 2 3; arrows a: 1 -> 2, b: 2 -> 1, c: 2 -> 3; }\n"
                 "potential W on T = 0;\n")
    code, rep = run_json(capsys, "mutate-qp", str(f), "W", "--vertices", "3", "1")
    assert code == 2 and rep["error"] == "NotMutableError" and rep["index"] == 1


def test_necessity(capsys):
    code, rep = run_json(capsys, "necessity", J3_FILE, "J")
    assert code == 0 and rep["necessity_verdict"] == "consistent"
    assert all(c["obstruction"] is None for c in rep["almost_split"])
    code, rep = run_json(capsys, "necessity", A2_FILE, "K")
    assert code == 0 and rep["necessity_verdict"] == "no triangle structure possible"
    assert ["not_self_injective", None] in rep["witnesses"]


def test_enumerate(capsys):
    code, rep = run_json(capsys, "enumerate", J3_FILE, "J")
    assert code == 0 and rep["count"] == 14 and rep["exhaustive"]
    assert len(rep["edges"]) == 42
    code, rep = run_json(capsys, "enumerate", J3_FILE, "J", "--cap", "5")
    assert code == 3 and rep["error"] == "CapExceededError"


def test_present(capsys):
    code, rep = run_json(capsys, "present", J3_FILE, "C")
    assert code == 0 and rep["silting"]
    assert rep["support_tau_tilting_pair"]["projective"] == [0, 0, 0]
    assert rep["A"]["dim"] == 6
    code, rep = run_json(capsys, "present", J3_FILE, "C", "X")
    assert code == 0 and rep["presentation"] == {"minus": [1], "zero": [0]}
    code, rep = run_json(capsys, "present", A2_FILE, "C", "P2")
    assert code == 1 and rep["reason"] == "not presented by minimal approximation"


def test_mutate_qp_twice(capsys):
    code, rep = run_json(capsys, "mutate-qp", J3_FILE, "W", "--vertices", "1", "1")
    assert code == 0
    note, = rep["involutivity"]
    assert note["quiver_restored"] and note["potential_comparison"] == "right-equivalence not decided"
    assert rep["jacobian_dim"] == 6
    assert rep["steps"][0]["potential"] == []


def test_experiment_tilting(capsys):
    code, rep = run_json(capsys, "experiment-tilting", A2_FILE, "K")
    assert code == 0 and len(rep["objects"]) == 5


def test_input_errors(tmp_path, capsys):
    code, rep = run_json(capsys, "necessity", str(tmp_path / "missing.qps"), "J")
    assert code == 2 and rep["error"] == "FileNotFoundError"
    bad = tmp_path / "bad.qps"
    bad.write_text("quiver Q { vertices 1; arrows a: 1 -> 7; }\n")
    code, rep = run_json(capsys, "necessity", str(bad), "Q")
    assert code == 2 and (rep["line"], rep["col"]) == (1, 39)
    code, rep = run_json(capsys, "necessity", J3_FILE, "Nope")
    assert code == 2 and rep["error"] == "UnknownNameError"
    code, rep = run_json(capsys, "necessity", J3_FILE, "J", "--field", "fp:4")
    assert code == 2


def test_over_the_rationals(capsys):
    code, rep = run_json(capsys, "verify-mizuno", J3_FILE, "W", "--vertices", "1", "--field", "q")
    assert code == 0 and rep["field"] == "q"


def test_reports_are_deterministic(tmp_path, capsys):
    outs = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        assert main(["enumerate", J3_FILE, "J", "--out", str(out)]) == 0
        outs.append(out.read_text())
    capsys.readouterr()
    assert outs[0] == outs[1]


def test_text_output(capsys):
    assert main(["necessity", J3_FILE, "J"]) == 0
    assert capsys.readouterr().out.startswith("necessity: PASS")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "qpsilt", "mutate-qp", J3_FILE, "W", "--vertices", "2", "--json"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["verdict"] == "PASS"


def test_command_function_directly():
    rep = cmd_verify_mizuno(Session.from_file(J3_FILE), "W", ["2", "3"], ["L", "L"])
    assert rep["verdict"] == "invariant-level PASS"

import json
from fractions import Fraction as F

import pytest

from mgt.cli import main
from mgt.fileio import format_graph_text, load_graph
from mgt import families


@pytest.fixture
def circle_file(tmp_path):
    path = tmp_path / "circle.txt"
    path.write_text("v 1\ne 0 0 1\n")
    return str(path)


@pytest.fixture
def k4_file(tmp_path):
    path = tmp_path / "k4.txt"
    path.write_text(format_graph_text(families.complete(4)))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_tau_circle(circle_file, capsys):
    code, out, _ = run_cli(capsys, "tau", circle_file)
    assert code == 0 and out.strip() == "1/12"


def test_tau_json_schema(k4_file, capsys):
    code, out, _ = run_cli(capsys, "tau", k4_file, "--json")
    doc = json.loads(out)
    assert code == 0
    assert set(doc) == {"tau", "length", "genus", "per_edge"}
    assert doc["tau"] == "5/96"
    assert doc["genus"] == 3
    assert all(set(e) == {"edge", "contribution", "R"} for e in doc["per_edge"])


def test_tau_float_digits(circle_file, capsys):
    code, out, _ = run_cli(capsys, "tau", circle_file, "--float")
    assert code == 0
    assert out.strip() == format(1 / 12, ".15g")


def test_resistance_and_voltage_with_point_syntax(tmp_path, capsys):
    path = tmp_path / "c.txt"
    path.write_text("e 0 1 2\ne 1 0 2\n")
    code, out, _ = run_cli(capsys, "resistance", str(path), "0", "1")
    assert code == 0 and out.strip() == "1"
    code, out, _ = run_cli(capsys, "voltage", str(path), "0:1", "0", "1")
    assert code == 0 and out.strip() == "1/4"


def test_apq_methods_agree(k4_file, capsys):
    values = set()
    for method in ("direct", "identity", "both"):
        code, out, _ = run_cli(capsys, "apq", k4_file, "0", "1", "--method", method)
        assert code == 0
        values.add(out.strip())
    assert len(values) == 1


def test_mucan_and_gradient(circle_file, capsys):
    code, out, _ = run_cli(capsys, "mucan", circle_file)
    assert code == 0 and "total mass: 1" in out
    code, out, _ = run_cli(capsys, "gradient", circle_file)
    assert code == 0 and "1/12" in out


def test_bounds(k4_file, capsys):
    code, out, _ = run_cli(capsys, "bounds", k4_file)
    assert code == 0
    assert "VIOLATED" not in out


def test_usage_error_exit_2(capsys):
    assert main(["tau"]) == 2
    assert main(["unknown-verb"]) == 2


def test_input_error_exit_3(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("e 0 1 1/0\n")
    code = main(["tau", str(path)])
    err = capsys.readouterr().err
    assert code == 3
    assert "line 1" in err


def test_op_roundtrip_output(tmp_path, circle_file, capsys):
    out_path = tmp_path / "result.txt"
    code, out, _ = run_cli(capsys, "op", "da-n", "3", circle_file, "-o", str(out_path))
    assert code == 0 and "agree" in out
    result = load_graph(str(out_path))
    assert result.ecount == 3
    # written graph re-parses identically
    text1 = format_graph_text(result)
    (tmp_path / "again.txt").write_text(text1)
    assert load_graph(str(tmp_path / "again.txt")) == result


def test_op_union2(tmp_path, capsys):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    a.write_text("e 0 1 2/5\n")
    b.write_text("e 0 1 3/5\n")
    code, out, _ = run_cli(capsys, "op", "union2", "0", "1", "0", "1", str(a), str(b))
    assert code == 0
    assert "1/12" in out


def test_verify_single_file(k4_file, capsys):
    code, out, _ = run_cli(capsys, "verify", k4_file)
    assert code == 0
    assert "0 failed" in out


def test_verify_random_json(capsys):
    code, out, _ = run_cli(capsys, "verify", "--random", "--seed", "3", "--count", "2",
                           "--suite", "thmbasic,genus-identity", "--json")
    assert code == 0
    doc = json.loads(out)
    assert all(r["status"] in ("pass", "skip") for r in doc)


def test_verify_deterministic_output(capsys):
    code1, out1, _ = run_cli(capsys, "verify", "--random", "--seed", "9", "--count", "2",
                             "--suite", "thmbasic")
    code2, out2, _ = run_cli(capsys, "verify", "--random", "--seed", "9", "--count", "2",
                             "--suite", "thmbasic")
    assert (code1, out1) == (code2, out2)


def test_mgt_seed_env(monkeypatch, capsys):
    monkeypatch.setenv("MGT_SEED", "17")
    code1, out1, _ = run_cli(capsys, "verify", "--random", "--count", "1", "--suite", "thmbasic")
    code2, out2, _ = run_cli(capsys, "verify", "--random", "--seed", "17", "--count", "1",
                             "--suite", "thmbasic")
    assert out1 == out2


def test_scan_csv(capsys):
    code, out, _ = run_cli(capsys, "scan", "--family", "banana", "--params", "m=1..6")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "family,params,tau,ratio"
    assert any(line.startswith("banana,m=4,1/16") for line in lines)


def test_minimize_banana(tmp_path, capsys):
    path = tmp_path / "banana4.txt"
    path.write_text(format_graph_text(families.banana(F(2, 5), F(1, 5), F(1, 5), F(1, 5))))
    code, out, _ = run_cli(capsys, "minimize", str(path), "--iters", "400", "--json")
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["tau"] - 1 / 16) < 1e-7


def test_minimize_restarts_on_bridged_topology(tmp_path, capsys):
    # the bridge is contracted away, so restart vectors must fit the smaller topology
    path = tmp_path / "dumbbell.txt"
    path.write_text(
        "e 0 1 1\ne 1 2 1\ne 2 0 1\ne 2 3 1\ne 3 4 1\ne 4 5 1\ne 5 3 1\n"
    )
    code, out, _ = run_cli(capsys, "minimize", str(path), "--iters", "60",
                           "--restarts", "2", "--seed", "5", "--json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["lengths"]) == 6

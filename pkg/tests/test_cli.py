import io
import json
import subprocess
import sys

import pytest

from qdeform.cli import run


def call(*argv, env_tol=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_eval_examples():
    assert call("eval", "1 q+ 1", "--q", "0") == (0, "3\n", "")
    assert call("eval", "qln(2) q+ qln(3)", "--q", "0")[1] == "5\n"
    assert call("eval", "qnum(10)", "--q", "0")[1] == "1023\n"
    assert call("eval", "heine(5)", "--q", "0", "--H", "3")[1] == "121\n"
    assert call("eval", "0.5 q+ 0.5", "--q", "0", "--exact")[1] == "1.25\n"
    assert call("eval", "1 q- 3", "--q", "0", "--exact")[1] == "-0.5\n"
    assert call("eval", "1 q- 2", "--q", "-2", "--exact")[1] == "-1/7\n"
    assert call("eval", "qexp(1)", "--q", "0.5", "--precision", "4")[1] == "2.25\n"


def test_eval_errors():
    code, out, err = call("eval", "2 q* 0", "--q", "0.5")
    assert code == 3 and out == "" and "positive" in err
    code, _, err = call("eval", "qln(2", "--q", "0")
    assert code == 2 and "column 6" in err
    assert call("eval", "1 q+ 1", "--q", "0.5", "--exact")[0] == 2
    assert call("eval", "1 q+ 1", "--q", "1", "--exact")[0] == 2
    assert call("eval", "1 q+ 1")[0] == 2
    assert call("eval", "1 d* 1", "--q", "2")[0] == 3
    assert call("bogus")[0] == 2


def test_triangle_csv_golden():
    code, out, _ = call("triangle", "--q", "0", "--rows", "7", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 7
    assert lines[-1] == "1,63,32767,1048575,32767,63,1"


def test_triangle_text_and_json():
    out = call("triangle", "--q", "1.5", "--rows", "5")[1]
    assert out.splitlines()[-1] == "1 1.875 1.968 1.875 1"
    payload = json.loads(call("triangle", "--q", "2", "--rows", "3", "--format", "json")[1])
    assert payload == {"q": "2", "g": "1", "mode": "exact", "rows": [["1"], ["1", "1"], ["1", "1", "1"]]}
    assert call("triangle", "--q", "0.5", "--rows", "3", "--exact")[0] == 2
    assert call("triangle", "--q", "0", "--rows", "0")[0] == 2
    assert call("triangle", "--q", "0", "--rows", "40")[0] == 3


def test_numbers():
    assert call("numbers", "--q", "0", "--from", "-2", "--to", "3")[1] == "-2\t-0.75\n-1\t-0.5\n0\t0\n1\t1\n2\t3\n3\t7\n"
    assert call("numbers", "--q", "0", "--from", "0", "--to", "2", "--format", "csv")[1] == "n,value\n0,0\n1,1\n2,3\n"
    payload = json.loads(call("numbers", "--q", "2", "--from", "1", "--to", "2", "--format", "json")[1])
    assert payload["numbers"] == [{"n": "1", "value": "1"}, {"n": "2", "value": "1"}]
    assert call("numbers", "--q", "0", "--from", "3", "--to", "1")[0] == 2


def test_classify():
    assert call("classify", "--q", "3") == (0, "self-similar-binary\n", "")
    assert call("classify", "--q", "1.5")[1] == "asymptotic limit=2.0\n"
    assert call("classify", "--q", "2")[1] == "fixed limit=1\n"
    assert call("classify", "--q", "0")[1] == "increasing\n"


def test_check_json_lines():
    code, out, _ = call("check", "--family", "k", "--param", "1", "--samples", "100")
    assert code == 0
    reports = [json.loads(line) for line in out.splitlines()]
    assert [(r["mul"], r["add"], r["holds"]) for r in reports] == [
        ("k_product_low", "k_sum_high", True),
        ("k_product_high", "k_sum_high", False),
        ("k_product_high", "k_sum_low", True),
    ]
    assert reports[1]["counterexample"] == {"x": "1", "y": "1", "z": "1", "lhs": "1", "rhs": "3"}
    assert call("check", "--samples", "10")[0] == 2
    assert call("check", "--family", "qab", "--param", "0", "--samples", "100")[1] == call(
        "check", "--family", "q", "--param", "0", "--samples", "100"
    )[1]


def test_check_env_tolerance(monkeypatch):
    monkeypatch.setenv("QDEFORM_TOLERANCE", "10")
    out = call("check", "--family", "q", "--param", "0", "--samples", "100")[1]
    assert all(json.loads(line)["holds"] for line in out.splitlines())


GOLDEN = [
    ["triangle", "--q", "0", "--rows", "7", "--format", "csv"],
    ["classify", "--q", "3"],
    ["eval", "2 q* 0", "--q", "0.5"],
]


@pytest.mark.parametrize("argv", GOLDEN)
def test_golden_byte_identical_across_processes(argv):
    runs = [
        subprocess.run([sys.executable, "-m", "qdeform.cli", *argv], capture_output=True)
        for _ in range(2)
    ]
    assert runs[0].returncode == runs[1].returncode
    assert runs[0].stdout == runs[1].stdout and runs[0].stderr == runs[1].stderr


def test_json_determinism():
    argv = ["check", "--family", "all", "--samples", "120", "--seed", "3"]
    assert call(*argv)[1] == call(*argv)[1]

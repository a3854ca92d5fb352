import io
import json
import subprocess
import sys

import pytest

from krlab.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_pqbg_dot():
    code, out, _ = call("pqbg", "--type", "A", "--rank", "2", "--weight", "1,0", "--format", "dot")
    assert code == EXIT_OK
    assert out.count("->") == 3
    assert sum(1 for line in out.splitlines() if line.strip().endswith('";') and "->" not in line) == 3


def test_pqbg_json_and_text():
    code, out, _ = call("pqbg", "--type", "A", "--rank", "2", "--J", "2", "--format", "json")
    assert code == 0 and json.loads(out)["J"] == [2]
    code, out, _ = call("pqbg", "--type", "G", "--rank", "2")
    assert code == 0 and out.startswith("QB(W^J) G2")


def test_macdonald_text():
    code, out, _ = call("macdonald", "--type", "A", "--rank", "1", "--weight", "2", "--format", "text")
    assert code == 0
    assert out == "1 * q^0 * x^[2]\n1 * q^0 * x^[0]\n1 * q^0 * x^[-2]\n1 * q^1 * x^[0]\n"
    code, out, _ = call("macdonald", "--type", "A", "--rank", "1", "--weight", "2", "--w", "")
    assert code == 0 and out == "1 * q^0 * x^[2]\n1 * q^1 * x^[0]\n"


def test_qls_and_alcove():
    code, out, _ = call("qls", "--type", "A", "--rank", "1", "--weight", "2")
    assert code == 0
    assert sorted(int(l.split("Deg=")[1]) for l in out.splitlines()) == [-1, 0, 0, 0]
    code, out, _ = call("alcove", "--type", "A", "--rank", "1", "--weight", "2", "--format", "json")
    assert sorted(s["level"] for s in json.loads(out)["subsets"]) == [0, 0, 0, 1]
    code, out, _ = call("qls", "--type", "A", "--rank", "2", "--weight", "1,0", "--format", "dot")
    assert code == 0 and out.startswith("digraph")


def test_lzposet():
    code, out, _ = call("lzposet", "--type", "A", "--rank", "1", "--weight", "1", "--window", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["window"] == 3 and len(doc["nodes"]) == 14


def test_verify_all_ok():
    code, out, _ = call("verify", "--suite", "all", "--type", "A", "--rank", "2", "--weight", "1,1")
    assert code == EXIT_OK
    assert out.count("PASS") >= 7 and "FAIL" not in out


def test_verify_failure_exit(monkeypatch):
    from krlab import qls

    monkeypatch.setattr(qls, "crystals_isomorphic", lambda a, b: False)
    code, out, _ = call("verify", "--suite", "crystal", "--type", "A", "--rank", "1", "--weight", "2")
    assert code == EXIT_VERIFY
    assert "counterexample (A1 lambda=[2])" in out and "tensor product decomposition" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["pqbg", "--type", "Z", "--rank", "2"],
        ["pqbg", "--type", "A", "--rank", "0"],
        ["pqbg", "--type", "A"],
        ["qls", "--type", "A", "--rank", "2"],
        ["qls", "--type", "A", "--rank", "2", "--weight", "1,-1"],
        ["qls", "--type", "A", "--rank", "2", "--weight", "1,x"],
        ["macdonald", "--type", "A", "--rank", "2", "--weight", "1,0", "--w", "1,1"],
        ["verify", "--type", "A", "--rank", "2", "--weight", "1,0", "--suite", "nope"],
        ["frobnicate", "--type", "A", "--rank", "2"],
        ["pqbg", "--type", "A", "--rank", "2", "--bogus"],
    ],
)
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == EXIT_USAGE
    assert "usage:" in err


def test_budget_exit(monkeypatch):
    monkeypatch.setenv("KRLAB_BUDGET", "10")
    code, _, err = call("qls", "--type", "A", "--rank", "3", "--weight", "1,1,1")
    assert code == EXIT_BUDGET and "budget" in err


def test_determinism():
    argv = ["alcove", "--type", "C", "--rank", "2", "--weight", "1,1", "--format", "json"]
    assert call(*argv) == call(*argv)


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "krlab", "pqbg", "--type", "A", "--rank", "1"], capture_output=True, text=True)
    assert p.returncode == 0 and "2 vertices" in p.stdout

import json
import re
import subprocess
import sys

import pytest

from iboson.cli import main, render_enumeration, render_report
from iboson.harness import SCHEMA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


# enumerate


@pytest.mark.parametrize("flag,dims,count", [
    ("--plane", "2,2,1", 5),
    ("--strict", "1,1", 2),
    ("--plane", "0,0,0", 1),
    ("--strict", "0,0", 1),
])
def test_enumerate_counts(capsys, flag, dims, count):
    code, data = run_json(capsys, "enumerate", flag, dims)
    assert code == 0
    assert data["count"] == count == len(data["items"])


def test_enumerate_human(capsys):
    code, out, _ = run(capsys, "enumerate", "--plane", "0,0,0")
    assert code == 0 and out == "∅\ncount: 1\n"
    code, out, _ = run(capsys, "enumerate", "--strict", "1,1")
    assert out.splitlines() == ["∅", "1", "count: 2"]


def test_enumerate_human_and_json_agree(capsys):
    _, data = run_json(capsys, "enumerate", "--plane", "2,2,2")
    _, out, _ = run(capsys, "enumerate", "--plane", "2,2,2")
    assert out == render_enumeration(data) + "\n"


def test_enumerate_refuses_large_boxes(capsys):
    code, out, err = run(capsys, "enumerate", "--plane", "6,6,6")
    assert code == 2 and out == "" and err.startswith("refused:")
    code, _, _ = run(capsys, "enumerate", "--plane", "3,3,3", "--max-volume", "20")
    assert code == 2


def test_enumerate_needs_one_mode(capsys):
    assert run(capsys, "enumerate")[0] == 2
    assert run(capsys, "enumerate", "--plane", "1,1", "--strict", "1,1")[0] == 2
    assert run(capsys, "enumerate", "--plane", "1,1")[0] == 2
    assert run(capsys, "enumerate", "--plane", "1,-1,1")[0] == 2


# schurq


@pytest.mark.parametrize("mu,vars_,expected", [
    ("1", "2", "2*x1 + 2*x2"),
    ("", "1", "1"),
    ("2,1", "1", "0"),
    ("2,1", "2", "4*x1^2*x2 + 4*x1*x2^2"),
    ("1", "a,b", "2*a + 2*b"),
])
def test_schurq_examples(capsys, mu, vars_, expected):
    code, out, _ = run(capsys, "schurq", "--mu", mu, "--vars", vars_)
    assert code == 0 and out.strip() == expected


def test_schurq_both_methods(capsys):
    code, data = run_json(capsys, "schurq", "--mu", "3,1", "--vars", "3", "--method", "both")
    assert code == 0 and data["agree"] is True
    _, single = run_json(capsys, "schurq", "--mu", "3,1", "--vars", "3", "--method", "branching")
    assert single["terms"] == data["terms"]


@pytest.mark.parametrize("mu", ["2,2", "a", "1,-1"])
def test_schurq_rejects_bad_partitions(capsys, mu):
    code, _, err = run(capsys, "schurq", "--mu", mu)
    assert code == 2 and err.startswith("error:")


def test_schurq_rejects_bad_variables(capsys):
    assert run(capsys, "schurq", "--mu", "1", "--vars", "x,x")[0] == 2


# scalar-product and series


def test_scalar_product(capsys):
    code, out, _ = run(capsys, "scalar-product", "--dims", "1,1,1,1")
    assert code == 0
    assert out.strip() == "1 + 2*x1*z1 + 2*y1*v1 + 4*x1*z1*y1*v1"
    code, data = run_json(capsys, "scalar-product", "--dims", "2,1,2,2", "--order", "6")
    assert code == 0 and data["agree"] and data["routes"] == ["lattice", "planepartition", "schurq"]


def test_series(capsys):
    code, data = run_json(capsys, "series", "strict-buc", "--order", "4")
    assert code == 0 and data["single"] == [1, 2, 6, 16, 38]
    code, data = run_json(capsys, "series", "buc", "--order", "4")
    assert data["single"] == [1, 1, 3, 6, 13]
    assert run(capsys, "series", "buc", "--order", "30")[0] == 2


# verify


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "lemma-2-3", "--box", "3,3,4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("seed: ") and lines[1].startswith("PASS lemma-2-3") and lines[-1] == "all passed"
    assert run(capsys, "verify", "scalar-product", "--dims", "1,1,1,1")[0] == 0


def test_verify_json_report(capsys):
    code, data = run_json(capsys, "verify", "figure-example", "--seed", "5")
    assert code == 0
    assert data["schema"] == SCHEMA and data["seed"] == 5 and data["pass"] is True
    assert [r["name"] for r in data["results"]] == ["figure-example"]
    # render(parse(render(x))) is stable
    assert json.loads(json.dumps(data)) == data


def test_verify_failure_exit_and_witness(capsys):
    code, out, _ = run(capsys, "verify", "strict-buc", "--order", "5", "--mutate")
    assert code == 1
    assert "FAIL strict-buc" in out and "witness: " in out and out.rstrip().endswith("some checks failed")


def test_verify_human_matches_json(capsys):
    _, data = run_json(capsys, "verify", "buc-macmahon", "--order", "4")
    _, out, _ = run(capsys, "verify", "buc-macmahon", "--order", "4")
    mask = lambda text: re.sub(r"\(\d+ ms\)", "(ms)", text)
    assert mask(out) == mask(render_report(data) + "\n")


def test_verify_unknown_check(capsys):
    code, _, err = run(capsys, "verify", "no-such-check")
    assert code == 2 and "unknown check" in err


def test_verify_bounds(capsys):
    code, _, err = run(capsys, "verify", "lemma-2-3", "--box", "8,8,8")
    assert code == 2 and err.startswith("refused:")


def test_thread_env(capsys, monkeypatch):
    monkeypatch.setenv("IBOSON_THREADS", "3")
    assert run(capsys, "verify", "figure-example")[0] == 0
    monkeypatch.setenv("IBOSON_THREADS", "many")
    assert run(capsys, "verify", "figure-example")[0] == 2


def test_argparse_usage_errors(capsys):
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["--help"]) == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "iboson", "schurq", "--mu", "1", "--vars", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "2*x1"


def test_verify_all_default_suite(capsys):
    code, data = run_json(capsys, "verify", "all", "--order", "6")
    failed = [r["name"] for r in data["results"] if not r["pass"]]
    assert code == 0, failed

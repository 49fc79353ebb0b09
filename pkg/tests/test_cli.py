import json

import pytest
from click.testing import CliRunner

from meandric import factor
from meandric.cli import main


def run(*args, env=None):
    result = CliRunner().invoke(main, list(args), env=env)
    return result.exit_code, result.output


def test_expectation_examples():
    code, out = run("expectation", "--n", "9", "--sigma", "(1 6 3 9 7 4 8 2 5)", "--method", "both")
    assert code == 0 and "leading coefficient: 0" in out
    code, out = run("expectation", "--n", "5", "--sigma", "2 3 4 5 1")
    assert code == 0 and "leading coefficient: 21" in out
    code, out = run("--format", "json", "expectation", "--n", "3", "--sigma", "1 2 3", "--full")
    data = json.loads(out)
    assert code == 0
    assert data["expansion"] == {"n": 3, "omega": 2, "coeffs": {"0": "5", "4": "1"}}
    assert data["leading"] == "5" and data["values"] == {"brute": "5", "factor": "5"}


def test_expectation_white_labels():
    code, out = run("expectation", "--sigma", "2 1 3", "--sigma-white", "1 3 2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["method"] == "brute" and data["consistent"]
    code, _ = run("expectation", "--sigma", "2 1 3", "--sigma-white", "1 3 2", "--method", "factor")
    assert code == 2
    code, _ = run("expectation", "--sigma", "2 1 3", "--sigma-white", "1 2")
    assert code == 2


@pytest.mark.parametrize(
    "args",
    [
        ["expectation", "--sigma", "(1 2)"],
        ["expectation", "--n", "3", "--sigma", "(1 9)"],
        ["expectation", "--sigma", "1 1 2"],
        ["expectation", "--n", "11", "--sigma", "(1 2)", "--full"],
        ["meanders", "--n", "0"],
        ["verify", "--suite", "nope"],
        ["sif"],
        ["expectation", "--sigma", "2 1", "--workers", "0"],
    ],
)
def test_usage_errors_exit_2(args):
    assert run(*args)[0] == 2


def test_expectation_csv_and_workers_agree():
    base = run("expectation", "--n", "7", "--sigma", "(1 3 5)(2 7)", "--full", "--format", "csv")
    par = run("expectation", "--n", "7", "--sigma", "(1 3 5)(2 7)", "--full", "--format", "csv",
              "--workers", "3")
    assert base == par
    assert base[1].splitlines()[0] == "n,k,count"


def test_expectation_cache_file(tmp_path):
    path = tmp_path / "c.tsv"
    code, _ = run("expectation", "--n", "6", "--sigma", "2 4 6 1 3 5", "--method", "factor",
                  "--cache", str(path))
    assert code == 0 and path.exists()
    assert len(factor.SifCache.load(path)) >= 1
    code, out = run("expectation", "--n", "6", "--sigma", "2 4 6 1 3 5", "--method", "factor",
                    env={factor.CACHE_ENV: str(path)})
    assert code == 0
    path.write_text("# meandric-sif-cache\tbad\n")
    assert run("expectation", "--sigma", "2 1", "--method", "factor", "--cache", str(path))[0] == 2


def test_meanders_examples():
    code, out = run("meanders", "--n", "3")
    assert code == 0
    assert out.split() == ["k", "count", "3", "5", "2", "12", "1", "8", "total", "25"]
    code, out = run("meanders", "--n", "5", "--components", "1")
    assert (code, out.strip()) == (0, "262")
    assert run("meanders", "--n", "4", "--check-closed-forms")[0] == 0
    code, out = run("meanders", "--n", "3", "--format", "csv")
    assert out.splitlines() == ["n,k,count", "3,3,5", "3,2,12", "3,1,8"]
    code, out = run("meanders", "--n", "4", "--format", "json")
    data = json.loads(out)
    assert data["census"] == {"4": "14", "3": "56", "2": "84", "1": "42"} and data["total"] == "196"


def test_meanders_irreducible_equals_sif_sum():
    from meandric import gauss, perm

    code, out = run("meanders", "--n", "5", "--irreducible", "--format", "json")
    total = sum(gauss.expectation_leading_single(s) for s in perm.sif_permutations(5))
    assert code == 0 and json.loads(out)["total"] == str(total)


def test_meanders_workers_deterministic():
    assert run("meanders", "--n", "6", "--workers", "2") == run("meanders", "--n", "6")


def test_verify_examples():
    for suite in ("theorem1", "genus-planarity", "sum-cn2"):
        code, out = run("verify", "--suite", suite, "--max-n", "6" if suite != "genus-planarity" else "4")
        assert code == 0, out
        assert "FAIL" not in out
    code, out = run("verify", "--suite", "vanishing-examples", "--format", "json")
    assert code == 0 and json.loads(out)["passed"] is True


def test_verify_reports_failure(monkeypatch):
    from meandric import verify

    def broken(n):
        return False, "forced"

    monkeypatch.setitem(
        verify.SUITES, "sum-cn2",
        verify.Suite("sum-cn2", "forced failure", 2, lambda m: [verify.Case("sum-cn2", "x", broken, (1,))]),
    )
    code, out = run("verify", "--suite", "sum-cn2")
    assert code == 1 and "FAIL" in out


def test_sif_examples(tmp_path):
    assert run("sif", "--n", "4", "--count") == (0, "7\n")
    assert run("sif", "--n", "5", "--count")[1].strip() == "34"
    code, out = run("sif", "--n", "3", "--list")
    assert (code, out.splitlines()) == (0, ["(1 2 3)", "(1 3 2)"])
    code, out = run("sif", "--n", "6", "--vanishing", "--format", "json", "--workers", "2")
    data = json.loads(out)
    single = json.loads(run("sif", "--n", "6", "--vanishing", "--format", "json")[1])
    assert data == single


def test_sif_vanishing_finds_known_example(tmp_path):
    path = tmp_path / "c.tsv"
    code, out = run("sif", "--n", "9", "--vanishing", "--cache", str(path))
    assert code == 0
    assert "(1 6 3 9 7 4 8 2 5)" in out.splitlines()
    assert len(factor.SifCache.load(path)) > 0

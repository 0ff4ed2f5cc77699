import math

import pytest

from opke.cli import main, parse_complex, parse_pairs
from opke.report import ConvergenceReport, ConvergenceRow, read_report, recompute_abs_error

EPI = math.exp(-math.pi)


@pytest.fixture
def specs(tmp_path):
    out = {}
    for name, body in {
        "cheb": "family=chebyshev\n",
        "leg": "family=legendre\n",
        "jac00": "family=jacobi\nalpha=0\nbeta=0\n",
    }.items():
        p = tmp_path / f"{name}.spec"
        p.write_text(body)
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_parse_helpers():
    assert parse_complex("2i") == 2j
    assert parse_complex("0.5-1j") == 0.5 - 1j
    assert parse_complex("−1") == -1
    assert parse_pairs("0,1;0.25,-0.25") == [(0, 1), (0.25, -0.25)]


def test_recurrence(capsys, specs):
    code, out, _ = run(capsys, "recurrence", "--spec", specs["cheb"], "--n", "3")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "k,a_k,b_k,gamma_k"
    rows = [l.split(",") for l in lines[1:]]
    assert [r[0] for r in rows] == ["1", "2", "3"]
    assert [float(r[2]) for r in rows] == pytest.approx([1 / math.sqrt(2), 0.5, 0.5], abs=1e-11)
    assert all(float(r[1]) == 0 for r in rows)


def test_recurrence_jacobi_and_empty(capsys, specs):
    _, out, _ = run(capsys, "recurrence", "--spec", specs["jac00"], "--n", "1")
    assert float(out.splitlines()[1].split(",")[2]) == pytest.approx(0.57735027, abs=1e-8)
    code, out, _ = run(capsys, "recurrence", "--spec", specs["jac00"], "--n", "0")
    assert code == 0 and out == "k,a_k,b_k,gamma_k\n"


def test_ratio(capsys, specs):
    code, out, _ = run(capsys, "ratio", "--spec", specs["cheb"], "--n", "1", "--alphas", "0", "--betas", "2i")
    assert code == 0
    assert out.strip() == "0.105572809000 0.000000000000"


def test_ratio_hypotheses(capsys, specs):
    code, _, err = run(capsys, "ratio", "--spec", specs["cheb"], "--n", "1", "--alphas", "0,0.5", "--betas", "1i,2i")
    assert code == 2 and "1 ≤ k ≤ n" in err
    code, _, err = run(capsys, "ratio", "--spec", specs["cheb"], "--n", "2", "--alphas", "0", "--betas", "0.5")
    assert code == 2 and "Im" in err
    code, _, _ = run(capsys, "ratio", "--spec", specs["cheb"], "--n", "2", "--alphas", "1i", "--betas", "1i")
    assert code == 2
    code, _, _ = run(capsys, "ratio", "--spec", "/nonexistent.spec", "--n", "2", "--alphas", "0", "--betas", "1i")
    assert code == 2


def test_oracle(capsys, specs):
    code, out, _ = run(capsys, "oracle", "--spec", specs["cheb"], "--n", "2", "--alphas", "0", "--betas", "1i")
    assert code == 0 and "relative_discrepancy" in out
    code, _, _ = run(capsys, "oracle", "--spec", specs["cheb"], "--n", "4", "--alphas", "0", "--betas", "1i")
    assert code == 2
    code, _, _ = run(capsys, "oracle", "--spec", specs["leg"], "--n", "3", "--alphas", "0,0.4", "--betas", "1i,2i")
    assert code == 0


def test_oracle_check_failure(capsys, specs):
    # two Gauss nodes per axis cannot resolve the ratio, so the check must fail
    code, out, _ = run(capsys, "oracle", "--spec", specs["leg"], "--n", "2", "--alphas", "0", "--betas", "0.3i", "--m", "2")
    assert code == 1
    assert "brute" in out and "formula" in out


def test_converge(capsys, specs, tmp_path):
    out_file = tmp_path / "conv.csv"
    code, out, _ = run(
        capsys, "converge", "--spec", specs["cheb"], "--x", "0", "--alphas", "0", "--betas", "1i",
        "--n-list", "16,32,64,128", "--out", str(out_file),
    )
    assert code == 0
    assert "final n=128" in out
    meta, rows = read_report(out_file)
    assert meta["complete"] == "true"
    assert [r["n"] for r in rows] == ["16", "32", "64", "128"]
    assert float(rows[-1]["abs_error"]) <= 0.02
    assert {float(r["limit_re"]) for r in rows} == {float(f"{EPI:.11e}")}
    for r in rows:
        assert recompute_abs_error(r) == r["abs_error"]


def test_converge_singleton_to_stdout(capsys, specs):
    code, out, err = run(
        capsys, "converge", "--spec", specs["cheb"], "--x", "0", "--alphas", "0", "--betas", "1i", "--n-list", "8",
    )
    assert code == 0
    data = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert len(data) == 2  # header + one row
    assert "final n=8" in err


def test_converge_rejects_complex_alpha(capsys, specs):
    code, _, _ = run(capsys, "converge", "--spec", specs["cheb"], "--x", "0", "--alphas", "0.1i", "--betas", "1i", "--n-list", "8")
    assert code == 2


def test_kernel_converge(capsys, specs, tmp_path):
    out_file = tmp_path / "k.csv"
    code, _, _ = run(
        capsys, "kernel-converge", "--spec", specs["cheb"], "--x", "0", "--pairs", "0,0;0,1;0.25,-0.25",
        "--n-list", "32,128", "--out", str(out_file),
    )
    assert code == 0
    _, rows = read_report(out_file)
    by = {}
    for r in rows:
        by.setdefault(r["case"], []).append(r)
    assert all(float(r["value_re"]) == 1.0 and float(r["abs_error"]) == 0 for r in by["a=0;b=0"])
    assert all(r["limit_re"] == f"{2 / math.pi:.11e}" for r in by["a=0.25;b=-0.25"])
    assert float(by["a=0;b=1"][-1]["abs_error"]) <= 0.02


def test_cauchy_converge(capsys, specs, tmp_path, monkeypatch):
    monkeypatch.setenv("OPKE_THREADS", "3")
    out_file = tmp_path / "c.csv"
    code, _, _ = run(
        capsys, "cauchy-converge", "--spec", specs["cheb"], "--x", "0", "--alphas", "0", "--betas", "1i",
        "--n-list", "32,64,128", "--out", str(out_file),
    )
    assert code == 0
    _, rows = read_report(out_file)
    assert float(rows[-1]["abs_error"]) <= 0.05
    assert float(rows[-1]["limit_im"]) == pytest.approx(1 - EPI, abs=1e-10)


def test_incomplete_report(capsys, specs, tmp_path):
    out_file = tmp_path / "bad.csv"
    # x at the support edge fails the kernel-diagonal precondition on every row
    code, _, err = run(
        capsys, "kernel-converge", "--spec", specs["cheb"], "--x", "1", "--pairs", "0,1", "--n-list", "8",
        "--out", str(out_file),
    )
    assert code == 1
    meta, rows = read_report(out_file)
    assert meta["complete"] == "false" and rows == []
    assert "incomplete" in err


def test_report_roundtrip(tmp_path):
    rows = [
        ConvergenceRow("c", n, complex(1 / 3 + 1e-3 * n, -2 / 7), complex(1 / 3, -2 / 7 + 1e-9))
        for n in (4, 1, 2)
    ]
    rep = ConvergenceReport("demo", {"x": "0.0"}, rows)
    path = tmp_path / "r.csv"
    rep.write(path)
    meta, parsed = read_report(path)
    assert meta["x"] == "0.0" and meta["complete"] == "true"
    assert [p["n"] for p in parsed] == ["1", "2", "4"]
    for p in parsed:
        assert recompute_abs_error(p) == p["abs_error"]
        assert len(p["value_re"].split("e")[0].replace("-", "").replace(".", "")) == 12
    assert "ratios=" in rep.summary()

import cmath
import csv
import dataclasses
import io
import json
import subprocess
import sys

import pytest

from beanbounds import cli, search


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_extremal(capsys):
    code, out, _ = run(capsys, "extremal", "--k", "1", "--order", "5", "--format", "csv")
    assert code == 0
    assert [r["coeff"] for r in rows(out)] == ["0", "1", "1/4", "-1/24", "-5/192", "17/1920"]


def test_extremal_json(capsys):
    code, out, _ = run(capsys, "extremal", "--k", "4", "--order", "9", "--format", "json")
    recs = [json.loads(line) for line in out.splitlines()]
    assert recs[9] == {"n": 9, "coeff": "-1/72", "k": 4}


@pytest.mark.parametrize("argv", [
    ["extremal", "--k", "5"], ["extremal", "--k", "0"], ["extremal", "--k", "1", "--order", "0"],
    ["verify", "--samples", "0"], ["verify", "--samples", "10", "--functional", "nope"],
    ["plot", "psi", "--resolution", "1"], ["lemma", "Y", "--A", "1"], ["lemma", "Q"],
    ["lemma", "Y", "--A", "x", "--B", "1", "--C", "1"], ["coeffs", "--tau1", "2"],
    ["coeffs"], ["lemma", "F", "--B1", "0", "--B2", "1", "--B3", "1"],
])
def test_usage_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and "error" in err


def test_argparse_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["extremal"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 1


def test_lemma_y(capsys):
    code, out, _ = run(capsys, "lemma", "Y", "--A", "1", "--B", "2", "--C", "1", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"lemma": "Y", "value": "4", "branch": "i-first"}


def test_lemma_e_and_negative_fractions(capsys):
    code, out, _ = run(capsys, "lemma", "E", "--gamma", "8857/36864", "--lambda", "25/36",
                       "--alpha", "37/64", "--beta", "1363/1728", "--format", "json")
    assert json.loads(out)["slack"] == "-22111611107/495338913792"
    code, out, _ = run(capsys, "lemma", "C", "--v", "-1/2", "--format", "json")
    assert code == 0 and json.loads(out)["value"] == "4"


def test_plot_psi(capsys):
    code, out, _ = run(capsys, "plot", "psi", "--resolution", "3")
    assert code == 0
    assert [(float(r["t"]), float(r["value"])) for r in rows(out)] == [
        (0.0, 256.0), (0.5, 205.5625), (1.0, 73.0)]
    _, out, _ = run(capsys, "plot", "psi1", "--resolution", "2")
    assert [float(r["value"]) for r in rows(out)] == [256.0, 13.0]
    _, out, _ = run(capsys, "plot", "psi", "--resolution", "2", "--scaled")
    assert float(rows(out)[0]["value"]) == 256 / 36864


def test_plot_bean_on_boundary(capsys, tmp_path):
    svg = tmp_path / "bean.svg"
    code, out, _ = run(capsys, "plot", "bean", "--resolution", "64", "--svg", str(svg))
    assert code == 0
    data = rows(out)
    assert len(data) == 64
    for r in data:
        w = complex(float(r["re"]), float(r["im"]))
        assert abs(abs(cmath.log(w * w / (2 - w * w))) - 2) < 1e-9
    assert svg.read_text().startswith("<svg")


def test_bean_series_residual():
    assert cli.bean_series_residual() <= cli.BEAN_CHECK_TOL


def test_coeffs_and_functionals(capsys):
    code, out, _ = run(capsys, "coeffs", "--tau1", "1/2", "--tau2", "-1/3", "--tau3", "0",
                       "--tau4", "1", "--pipeline", "--format", "csv")
    assert code == 0
    assert [r["n"] for r in rows(out)] == ["2", "3", "4", "5"]
    assert rows(out)[0]["a_n"] == "1/8"
    code, out, _ = run(capsys, "functionals", "--k", "2", "--format", "json")
    recs = {json.loads(line)["functional"]: json.loads(line) for line in out.splitlines()}
    assert recs["hankel_log"]["value"] == "-1/144"
    code, out, _ = run(capsys, "functionals", "--c", "2;2;2", "--format", "csv")
    assert {r["functional"]: r["value"] for r in rows(out)}["hankel_log"] == "-73/36864"


def test_complex_tau(capsys):
    code, out, _ = run(capsys, "coeffs", "--tau1", "0.5", "--tau2", "0,1", "--tau3", "0")
    assert code == 0 and "j" in out


def test_verify_writes_reports(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--samples", "5000", "--seed", "2",
                       "--functional", "gamma1", "--functional", "moduli_Gamma_lower",
                       "--out", str(tmp_path), "--format", "csv")
    assert code == 0
    lines = (tmp_path / "reports.jsonl").read_text().splitlines()
    assert [json.loads(x)["theorem_id"] for x in lines] == ["gamma1", "moduli_Gamma_lower"]
    summary = rows((tmp_path / "summary.csv").read_text())
    assert [r["verdict"] for r in summary] == ["confirmed", "confirmed"]
    assert out == (tmp_path / "summary.csv").read_text()


def test_verify_violation_exit_2(capsys, monkeypatch):
    real = search.theorem_bound
    monkeypatch.setattr(search, "theorem_bound",
                        lambda tid: dataclasses.replace(real(tid), value=real(tid).value / 2))
    code, _, _ = run(capsys, "verify", "--samples", "1000", "--functional", "gamma2")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "beanbounds", "lemma", "Y", "--A", "1",
                           "--B", "2", "--C", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "i-first" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "beanbounds", "extremal", "--k", "9"],
                          capture_output=True, text=True)
    assert proc.returncode == 1

import json
import subprocess
import sys
from dataclasses import replace

import pytest

from secrecy_outage import Scenario, Scheme, SopQuery, SystemConfig, analytic_sop
from secrecy_outage.cli import main
from secrecy_outage import validation

BASE_ARGS = [
    "--K", "2", "--zeta", "0.9", "--rth", "1", "--M", "6", "--N", "4",
    "--a", "0.5", "--b", "0.2",
]


def _parse_kv(output: str) -> dict:
    pairs = dict(line.split("=", 1) for line in output.strip().splitlines())
    return pairs


def test_no_subcommand_is_usage_error(capsys):
    assert main([]) == 2
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "sweep" in capsys.readouterr().out


def test_sop_analytic_point(capsys):
    rc = main(["sop", *BASE_ARGS, "--snr-db", "10"])
    assert rc == 0
    pairs = _parse_kv(capsys.readouterr().out)
    cfg = SystemConfig(K=2, zeta=0.9, r_th=1.0, snr=10.0, M=6, N=4, a=0.5, b=0.2)
    expected = analytic_sop(SopQuery(cfg=cfg, scheme=Scheme.SS, scenario=Scenario.KU)).value
    assert float(pairs["sop"]) == expected
    assert pairs["method"] == "analytic"
    assert "ci_half_width" not in pairs


def test_sop_mc_point_reports_interval(capsys):
    rc = main(["sop", *BASE_ARGS, "--snr-db", "10", "--method", "mc",
               "--samples", "5000", "--seed", "42"])
    assert rc == 0
    pairs = _parse_kv(capsys.readouterr().out)
    assert 0.0 <= float(pairs["sop"]) <= 1.0
    assert float(pairs["ci_half_width"]) > 0.0
    assert pairs["seed"] == "42"
    assert pairs["samples"] == "5000"


def test_sop_quadrature_and_asymptotic_methods(capsys):
    for method in ("quadrature", "asymptotic"):
        assert main(["sop", *BASE_ARGS, "--snr-db", "20", "--method", method]) == 0
        pairs = _parse_kv(capsys.readouterr().out)
        assert pairs["method"] == method
        assert 0.0 <= float(pairs["sop"]) <= 1.0


def test_bad_parameter_value_is_usage_error(capsys):
    assert main(["sop", "--zeta", "1.5"]) == 2
    assert "zeta" in capsys.readouterr().err


def test_unknown_choice_is_usage_error(capsys):
    assert main(["sop", "--method", "telepathy"]) == 2
    capsys.readouterr()


def test_sweep_requires_range(capsys):
    assert main(["sweep", "--snr-start", "0"]) == 2
    capsys.readouterr()


def test_sweep_writes_contract_csv(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    rc = main([
        "sweep", *BASE_ARGS,
        "--snr-start", "0", "--snr-stop", "10", "--snr-step", "5",
        "--scheme", "ss", "--scheme", "os",
        "--method", "analytic",
        "--out", str(out),
    ])
    assert rc == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "snr_db,scheme,scenario,method,sop,ci_half_width,flags"
    assert len(lines) == 1 + 3 * 2
    capsys.readouterr()


def test_sweep_stdout_and_plot(tmp_path, capsys):
    plot = tmp_path / "sweep.json"
    rc = main([
        "sweep", *BASE_ARGS,
        "--snr-start", "0", "--snr-stop", "4", "--snr-step", "2",
        "--plot", str(plot),
    ])
    assert rc == 0
    stdout = capsys.readouterr().out
    assert stdout.startswith("snr_db,scheme,scenario,method,")
    description = json.loads(plot.read_text(encoding="utf-8"))
    assert description["kind"] == "line-plot"
    assert len(description["series"][0]["points"]) == 3


def test_sweep_reruns_identically(tmp_path):
    args = [
        "sweep", *BASE_ARGS,
        "--snr-start", "0", "--snr-stop", "6", "--snr-step", "3",
        "--method", "analytic", "--method", "mc", "--samples", "4096", "--seed", "9",
    ]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main([*args, "--out", str(first)]) == 0
    assert main([*args, "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_figure_list(capsys):
    assert main(["figure", "--list"]) == 0
    out = capsys.readouterr().out
    for name in ("fig2", "fig3", "fig4", "fig5"):
        assert name in out


def test_figure_requires_preset(capsys):
    assert main(["figure"]) == 2
    capsys.readouterr()


def test_figure_run_analytic(tmp_path, capsys):
    out = tmp_path / "fig4.csv"
    plot = tmp_path / "fig4.json"
    rc = main(["figure", "fig4", "--method", "analytic",
               "--out", str(out), "--plot", str(plot)])
    assert rc == 0
    header = out.read_text(encoding="utf-8").splitlines()[0]
    assert header.endswith(",K,zeta,rth,M,N,a,b")
    description = json.loads(plot.read_text(encoding="utf-8"))
    eave_paths = {s["config"]["N"] for s in description["series"]}
    assert eave_paths == {2, 4, 6}
    capsys.readouterr()


def test_validate_subset_passes(capsys):
    rc = main(["validate", "--smoke", "--check", "identities", "--check", "orderings"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "PASS identities" in out
    assert "PASS orderings" in out
    assert "2/2 checks passed" in out


def test_validate_detects_a_corrupted_formula(monkeypatch, capsys):
    # sabotage the best-ratio scheme: inflate its outage so the scheme
    # ordering inverts; the harness must notice and fail the run
    real = validation.analytic_sop

    def corrupted(query):
        value = real(query)
        if Scheme(query.scheme) is Scheme.OS:
            return replace(value, value=min(1.0, value.value + 0.05))
        return value

    monkeypatch.setattr(validation, "analytic_sop", corrupted)
    rc = main(["validate", "--smoke", "--check", "orderings"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "FAIL orderings" in out


def test_module_entrypoint_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "secrecy_outage", "sop", "--snr-db", "10"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert "sop=" in proc.stdout

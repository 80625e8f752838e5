import io
import json
import re

import pandas as pd
import pytest
from click.testing import CliRunner

from main import cli


@pytest.fixture
def runner():
    return CliRunner()


def test_cutoff_symmetric_json(runner, tmp_path):
    """
    Test `cutoff --family symmetric --n 100`: a JSON report with τ = ln(100)/2.
    """
    out = tmp_path / "cutoff.json"
    result = runner.invoke(cli, ["cutoff", "--family", "symmetric", "--n", "100", "--output", str(out)])
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text())
    assert report["tau"] == pytest.approx(2.3025850930, abs=1e-9)
    assert report["lambda_star"] == 2
    assert report["beta"] == 100


def test_cutoff_several_n_csv(runner, tmp_path):
    out = tmp_path / "cutoff.csv"
    result = runner.invoke(
        cli, ["cutoff", "--family", "odd_windows", "--n", "100,10000", "--format", "csv", "--output", str(out)]
    )
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["n", "tau", "lambda_star", "kappa", "beta", "tau_kappa", "b_left", "b_right"]
    assert frame["n"].tolist() == [100, 10000]
    assert frame["lambda_star"].tolist() == [2, 2]


def test_cutoff_to_default_output_dir(runner, tmp_path, monkeypatch):
    monkeypatch.setattr("commands.runner.OUTPUT_DIR", str(tmp_path))
    result = runner.invoke(cli, ["cutoff", "--family", "symmetric", "--n", "10,100"])
    assert result.exit_code == 0, result.output
    reports = json.loads((tmp_path / "cutoff.json").read_text())
    assert [r["n"] for r in reports] == [10, 100]


def test_profile_odd_windows_right_window(runner, tmp_path):
    """
    Test the 13-row right-window profile at n = 10^6: sep never increases along c.
    """
    out = tmp_path / "profile.csv"
    result = runner.invoke(
        cli,
        [
            "profile",
            "--family",
            "odd_windows",
            "--n",
            "1000000",
            "--window",
            "right",
            "--c=-3:3:0.5",
            "--output",
            str(out),
        ],
    )
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["c", "t", "sep", "lower", "upper"]
    assert len(frame) == 13
    seps = frame["sep"].tolist()
    assert all(b <= a for a, b in zip(seps, seps[1:]))
    below_one = [s for s in seps if s < 0.999]
    assert all(b < a for a, b in zip(below_one, below_one[1:]))


def test_bounds_grid(runner, tmp_path):
    out = tmp_path / "bounds.csv"
    result = runner.invoke(
        cli, ["bounds", "--family", "symmetric", "--n", "10", "--t", "0:2:0.5", "--output", str(out)]
    )
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["t", "sep", "lower", "upper"]
    assert len(frame) == 5
    assert pd.isna(frame.loc[0, "lower"])
    tail = frame.iloc[1:]
    assert (tail["lower"] <= tail["sep"]).all() and (tail["sep"] <= tail["upper"]).all()


def test_simulate_reports_sup_distance(runner, tmp_path):
    """
    Test `simulate --kind sst --family symmetric --n 64 --replicas 100000 --seed 7`.
    """
    out = tmp_path / "samples.csv"
    comparison = tmp_path / "comparison.csv"
    args = [
        "simulate",
        "--kind",
        "sst",
        "--family",
        "symmetric",
        "--n",
        "64",
        "--replicas",
        "100000",
        "--seed",
        "7",
        "--output",
        str(out),
        "--comparison",
        str(comparison),
    ]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    match = re.search(r"sup_distance=([0-9.e-]+) dkw99_half_width=([0-9.e-]+)", result.output)
    assert match
    assert float(match.group(1)) <= 0.006
    assert float(match.group(2)) == pytest.approx(0.00515, abs=1e-5)

    samples = pd.read_csv(out)
    assert list(samples.columns) == ["replica", "time"]
    assert len(samples) == 100_000
    assert list(pd.read_csv(comparison).columns) == ["t", "empirical", "exact"]

    again = tmp_path / "again.csv"
    args[args.index(str(out))] = str(again)
    assert runner.invoke(cli, args).exit_code == 0
    assert again.read_bytes() == out.read_bytes()


def test_simulate_json_summary(runner, tmp_path):
    out = tmp_path / "summary.json"
    result = runner.invoke(
        cli,
        ["simulate", "--kind", "coupling", "--family", "symmetric", "--n", "8", "--replicas", "500",
         "--format", "json", "--output", str(out)],
    )
    assert result.exit_code == 0, result.output
    summary = json.loads(out.read_text())
    assert summary["kind"] == "coupling"
    assert summary["replicas"] == 500
    assert set(summary["quantiles"]) == {"0.5", "0.9", "0.99"}


def test_evt_table(runner):
    result = runner.invoke(cli, ["evt", "--p", "1,2", "--q", "0.5,0.5", "--n", "100000", "--c=-2:4:1"])
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(io.StringIO(result.stdout))
    assert list(frame.columns) == ["n", "c", "annealed", "limit", "gap", "clamped"]
    assert len(frame) == 7
    assert (frame["gap"] < 0.01).all()


def test_diagnose_slow_coordinate(runner, tmp_path, monkeypatch):
    monkeypatch.setattr("dependencies.logger.LOG_LEVEL", "INFO")
    out = tmp_path / "diagnose.csv"
    result = runner.invoke(
        cli, ["diagnose", "--family", "slow_coordinate", "--n", "10,100,1000", "--output", str(out)]
    )
    assert result.exit_code == 0, result.output
    assert "bounded" in result.output
    frame = pd.read_csv(out)
    assert frame.columns[-4:].tolist() == ["necessary_floor", "sep_c=-1", "sep_c=0", "sep_c=1"]
    assert frame["tau_kappa"].tolist() == pytest.approx([0.5] * 3)


def test_measure_file_source(runner, tmp_path):
    path = tmp_path / "measure.csv"
    path.write_text("rate,mass\n1,0.5\n3,0.5\n")
    out = tmp_path / "cutoff.json"
    result = runner.invoke(cli, ["cutoff", "--measure-file", str(path), "--n", "100", "--output", str(out)])
    assert result.exit_code == 0, result.output
    assert json.loads(out.read_text())["tau"] == pytest.approx(3.9120230054, abs=1e-9)


@pytest.mark.parametrize(
    "args",
    [
        ["cutoff", "--n", "100"],
        ["cutoff", "--family", "symmetric", "--measure-file", "x.csv", "--n", "100"],
        ["cutoff", "--family", "symmetric"],
        ["cutoff", "--family", "symmetric", "--n", "ten"],
        ["profile", "--family", "symmetric", "--n", "100", "--c", "0:1"],
        ["profile", "--family", "symmetric", "--n", "10,100", "--c", "0"],
        ["profile", "--family", "symmetric", "--n", "100", "--c", "0", "--window", "custom"],
        ["simulate", "--family", "symmetric", "--n", "4", "--replicas", "0"],
        ["cutoff", "--family", "random_rates", "--n", "10"],
        ["cutoff", "--family", "random_rates", "--n", "10", "--p", "1,2", "--q", "0.5,0.4"],
        ["simulate", "--family", "symmetric", "--n", "4", "--seed=-1"],
        ["simulate", "--family", "symmetric", "--n", "4", "--seed", str(2**64)],
        ["cutoff", "--family", "random_rates", "--n", "10", "--p", "1,2", "--q", "0.5,0.5", "--family-seed=-3"],
    ],
)
def test_configuration_errors_exit_two(runner, args):
    result = runner.invoke(cli, args)
    assert result.exit_code == 2, result.output


def test_missing_measure_file_exits_two(runner, tmp_path):
    result = runner.invoke(cli, ["cutoff", "--measure-file", str(tmp_path / "missing.csv")])
    assert result.exit_code == 2
    assert "[ERROR]" in result.output


def test_computation_errors_exit_one(runner, tmp_path):
    result = runner.invoke(cli, ["cutoff", "--family", "odd_windows", "--n", "1"])
    assert result.exit_code == 1
    assert "n=1" in result.output

    path = tmp_path / "measure.csv"
    path.write_text("rate,mass\n1,0.5\n2,0.5\n")
    result = runner.invoke(cli, ["simulate", "--measure-file", str(path), "--n", "10"])
    assert result.exit_code == 1

    result = runner.invoke(cli, ["profile", "--measure-file", str(path), "--n", "1", "--window", "right", "--c", "0"])
    assert result.exit_code == 1

    path.write_text("rate,mass\n1,abc\n")
    result = runner.invoke(cli, ["cutoff", "--measure-file", str(path), "--n", "10"])
    assert result.exit_code == 1
    assert "line 2" in result.output


@pytest.mark.parametrize(
    "content, line",
    [
        (b"rate,count\n1,2\n3,4,5\n", 3),
        (b"", 1),
        (b"rate,count\n\xff\xfe,2\n", 2),
    ],
)
def test_unparsable_measure_file_exits_one(runner, tmp_path, content, line):
    path = tmp_path / "measure.csv"
    path.write_bytes(content)
    result = runner.invoke(cli, ["cutoff", "--measure-file", str(path)])
    assert result.exit_code == 1
    assert "[ERROR]" in result.output
    assert f"line {line}" in result.output

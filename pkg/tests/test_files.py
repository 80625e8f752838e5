import json

import pytest

from analysis.cutoff import cutoff_time, profile
from analysis.errors import MeasureFileError
from analysis.families import odd_windows_rho
from analysis.rate_measure import build_measure, from_atoms
from files.export import (
    measure_to_csv,
    measure_to_json,
    profile_to_csv,
    round_floats,
    table_to_csv,
    to_json,
)
from files.normalize import read_measure_csv, read_measure_file, read_measure_json


def test_read_count_csv_with_messy_headers(tmp_path):
    """
    Test header normalization: case and surrounding spaces are ignored, n is the sum of counts.
    """
    path = tmp_path / "measure.csv"
    path.write_text(" Rate , COUNT\n2,3\n1,1\n")
    measure = read_measure_csv(path)
    assert measure.n == 4
    assert measure.rates == (1.0, 2.0)
    assert measure.counts == (1, 3)
    assert measure.masses == (0.25, 0.75)


def test_read_count_csv_ignores_caller_n(tmp_path):
    path = tmp_path / "measure.csv"
    path.write_text("rate,count\n2,5\n")
    assert read_measure_file(path, n=99).n == 5


def test_read_mass_csv_needs_n(tmp_path):
    path = tmp_path / "measure.csv"
    path.write_text("rate,mass\n1,0.5\n3,0.5\n")
    measure = read_measure_file(path, n=100)
    assert measure.n == 100
    assert measure.counts is None
    assert cutoff_time(measure).lambda_star == 1.0
    with pytest.raises(MeasureFileError, match="line 1"):
        read_measure_file(path)


def test_read_lambda_alias(tmp_path):
    path = tmp_path / "measure.csv"
    path.write_text("lambda,multiplicity\n2,4\n")
    assert read_measure_file(path).rates == (2.0,)


@pytest.mark.parametrize(
    "content, line",
    [
        ("rate,mass\n1,0.5\n2,abc\n", 3),
        ("rate,count\n1,2\n-1,2\n", 3),
        ("rate,count\n1,2.5\n", 2),
        ("rate,mass\n1,1.5\n", 2),
        ("rate,weight\n1,1\n", 1),
        ("rate,mass\n", 2),
        ("rate,count\n1,2,3\n4,5,6\n", 2),
        ("rate,count\n1,2\n3,4,5\n", 3),
        ("rate,count\n1,2\n\n\n-1,2\n", 5),
        ("rate,count\n1\n", 2),
        ("rate,count\n1,nan\n", 2),
    ],
)
def test_malformed_csv_names_line(tmp_path, content, line):
    path = tmp_path / "measure.csv"
    path.write_text(content)
    with pytest.raises(MeasureFileError) as info:
        read_measure_file(path, n=2)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_blank_lines_are_skipped(tmp_path):
    path = tmp_path / "measure.csv"
    path.write_text("rate,count\n\n2,3\n\n1,1\n\n")
    assert read_measure_file(path).counts == (1, 3)


def test_unreadable_csv_content(tmp_path):
    """
    Test that empty files and invalid UTF-8 are reported as measure file errors.
    """
    path = tmp_path / "measure.csv"
    path.write_text("")
    with pytest.raises(MeasureFileError, match="empty"):
        read_measure_file(path)

    path.write_bytes(b"rate,count\n1,2\n\xff\xfe,3\n")
    with pytest.raises(MeasureFileError) as info:
        read_measure_file(path)
    assert info.value.line == 3

    json_path = tmp_path / "measure.json"
    json_path.write_bytes(b"\xff\xfe")
    with pytest.raises(MeasureFileError, match="UTF-8"):
        read_measure_file(json_path)


def test_csv_rates_read_exactly(tmp_path):
    path = tmp_path / "measure.csv"
    path.write_text("rate,mass\n0.3,0.1\n2.0750700010230494,0.9\n")
    measure = read_measure_file(path, n=10)
    assert measure.rates == (0.3, 2.0750700010230494)
    assert measure.masses == (0.1, 0.9)


def test_mass_csv_not_summing_to_one(tmp_path):
    path = tmp_path / "measure.csv"
    path.write_text("rate,mass\n1,0.5\n2,0.25\n")
    with pytest.raises(MeasureFileError, match="not 1"):
        read_measure_file(path, n=4)


def test_read_json_measure(tmp_path):
    path = tmp_path / "measure.json"
    path.write_text(json.dumps({"n": 100, "atoms": [{"rate": 3, "mass": 0.5}, {"rate": 1, "mass": 0.5}]}))
    measure = read_measure_json(path)
    assert measure.n == 100
    assert measure.rates == (1.0, 3.0)
    assert cutoff_time(measure).beta == 50


def test_read_json_errors(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "n": 3,\n  "atoms": [\n')
    with pytest.raises(MeasureFileError) as info:
        read_measure_file(path)
    assert info.value.line >= 3

    path.write_text(json.dumps({"n": 3, "atoms": [{"rate": -1, "mass": 1}]}))
    with pytest.raises(MeasureFileError):
        read_measure_file(path)


def test_profile_csv_layout():
    """
    Test the `c,t,sep,lower,upper` header, 10 significant digits and empty cells for absent bounds.
    """
    measure = build_measure([2.0] * 100)
    text = profile_to_csv(profile(measure, "unit", [-2.0, 0.0]))
    lines = text.splitlines()
    assert lines[0] == "c,t,sep,lower,upper"
    assert lines[1].startswith("-2,0.302585093,")
    assert lines[1].endswith(",,")
    assert lines[2].startswith("0,2.302585093,0.6339676587,")
    assert text.endswith("\n")


def test_table_csv_and_json_rounding():
    text = table_to_csv(["a", "b"], [(1.0 / 3.0, None)])
    assert text == "a,b\n0.3333333333,\n"
    assert round_floats({"x": [2.0 / 3.0, float("inf")]}) == {"x": [0.6666666667, None]}


def test_report_json_fields():
    payload = json.loads(to_json(cutoff_time(build_measure([2.0] * 100))))
    assert list(payload) == ["n", "tau", "lambda_star", "kappa", "beta", "tau_kappa", "b_left", "b_right"]
    assert payload["tau"] == 2.302585093


def test_written_count_measure_reads_back(tmp_path):
    """
    Test that a measure with counts is written as rate,count and reads back to the same atoms.
    """
    measure = build_measure(2.0 * odd_windows_rho(1000))
    path = tmp_path / "odd.csv"
    path.write_text(measure_to_csv(measure))
    assert path.read_text().startswith("rate,count\n")
    loaded = read_measure_file(path)
    assert loaded.n == 1000
    assert loaded.rates == measure.rates
    assert loaded.counts == measure.counts


def test_written_mass_measure_reads_back(tmp_path):
    measure = from_atoms(10, [(0.3, 0.1), (1.7, 0.9)])
    csv_path = tmp_path / "m.csv"
    csv_path.write_text(measure_to_csv(measure))
    assert csv_path.read_text().startswith("rate,mass\n")
    assert read_measure_file(csv_path, n=10).rates == (0.3, 1.7)

    json_path = tmp_path / "m.json"
    json_path.write_text(measure_to_json(measure))
    loaded = read_measure_file(json_path)
    assert loaded.n == 10
    assert loaded.masses == (0.1, 0.9)

import csv
import math

import mpmath as mp
import pytest
from pydantic import ValidationError

from igamma_engine.evaluator import EvalRequest, Method, eval
from igamma_engine.pipeline import AccuracyMapSpec, GridAxis, run_accuracy_map
from igamma_engine.pipeline.accuracy_map import CSV_COLUMNS, evaluate_point, round_trip


def read_rows(path):
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        assert tuple(reader.fieldnames) == CSV_COLUMNS
        return list(reader)


def test_grid_axis():
    axis = GridAxis(min=10, max=1e4, count=4)
    assert axis.values() == pytest.approx([10, 100, 1000, 1e4])
    assert GridAxis(min=1, max=3, count=3, scale="linear").values() == pytest.approx([1, 2, 3])
    assert list(GridAxis(min=5, max=5, count=1).values()) == [5]


@pytest.mark.parametrize(
    "kwargs",
    [dict(min=10, max=1, count=3), dict(min=1, max=10, count=0), dict(min=0, max=10, count=2),
     dict(min=1, max=10, count=2, scale="cubic")],
)
def test_grid_axis_validation(kwargs):
    with pytest.raises(ValidationError):
        GridAxis(**kwargs)


def test_round_trip_strings():
    assert float(round_trip(mp.mpf(0.1), 53)) == 0.1
    with mp.workprec(128):
        value = mp.mpf(1) / 3
        assert mp.mpf(round_trip(value, 128)) == value


def test_small_map(tmp_path):
    spec = AccuracyMapSpec(
        a_grid=GridAxis(min=50, max=200, count=2),
        z_grid=GridAxis(min=40, max=250, count=3),
        method=Method.PARIS,
        output_path=tmp_path / "maps" / "small.csv",
    )
    result = run_accuracy_map(spec)
    assert result.success
    assert result.failed_count == 0
    assert result.error_message is None

    rows = read_rows(spec.output_path)
    assert len(rows) == 6
    for row in rows:
        assert row["method"] == "paris"
        rel, err = float(row["rel_err"]), float(row["err_estimate"])
        assert rel <= 10 * err + 2.0**-50
        chi = (float(row["z"]) - float(row["a"])) / math.sqrt(float(row["z"]))
        assert float(row["chi"]) == pytest.approx(chi)


def test_failed_points_become_nan_rows(tmp_path):
    spec = AccuracyMapSpec(
        a_grid=GridAxis(min=0.5, max=0.5, count=1),
        z_grid=GridAxis(min=2, max=2, count=1),
        method=Method.DINGLE,
        output_path=tmp_path / "bad.csv",
    )
    result = run_accuracy_map(spec)
    assert not result.success
    assert result.failed_count == 1
    assert "1 of 1" in result.error_message
    [row] = read_rows(spec.output_path)
    assert math.isnan(float(row["value"]))


def test_unwritable_path(tmp_path):
    blocker = tmp_path / "file.txt"
    blocker.write_text("x")
    spec = AccuracyMapSpec(
        a_grid=GridAxis(min=50, max=50, count=1),
        z_grid=GridAxis(min=60, max=60, count=1),
        output_path=blocker / "map.csv",
    )
    with pytest.raises(OSError):
        run_accuracy_map(spec)


def test_evaluate_point_reports_method_used():
    row = evaluate_point(100.0, 100.0, Method.AUTO, None, "Q", 53, 128)
    assert row.success
    assert row.method == "diagonal"


def test_dingle_rows_carry_xi():
    row = evaluate_point(100.0, 120.0, Method.DINGLE, 4, "Q", 53, 128)
    assert row.success
    expected = eval(EvalRequest(a=100.0, z=120.0, method=Method.DINGLE, m=4)).chi_or_xi
    assert row.chi == expected
    assert row.chi != pytest.approx(20 / math.sqrt(120))


@pytest.mark.slow
def test_paris_grid_error_estimates(tmp_path):
    spec = AccuracyMapSpec(
        a_grid=GridAxis(min=10, max=1e4, count=10),
        z_grid=GridAxis(min=10, max=1e4, count=10),
        method=Method.PARIS,
        m=6,
        output_path=tmp_path / "paris.csv",
    )
    result = run_accuracy_map(spec)
    assert result.failed_count == 0
    for row in read_rows(spec.output_path):
        assert float(row["rel_err"]) < 10 * float(row["err_estimate"]) + 2.0**-50, row


@pytest.mark.slow
def test_parallel_matches_serial(tmp_path):
    grids = dict(
        a_grid=GridAxis(min=20, max=80, count=2),
        z_grid=GridAxis(min=30, max=90, count=2),
    )
    serial = run_accuracy_map(AccuracyMapSpec(**grids, output_path=tmp_path / "s.csv"))
    parallel = run_accuracy_map(AccuracyMapSpec(**grids, output_path=tmp_path / "p.csv", workers=2))
    assert [r.value for r in serial.rows] == [r.value for r in parallel.rows]

import math

import numpy as np
import pytest

from errors import ConfigError, TooFewSamples, WrongArity
from experiments.diagnostics import (
    Arrow,
    Trend,
    arrow_complexity_report,
    arrow_metric_report,
    classify_arrow,
    grid_similarity_report,
    synchronization_report,
    turning_points,
)
from experiments.records import GridRecord, TimeSeriesRecord
from experiments.three_qubit_trace import ThreeQubitTrace, run_three_qubit_trace


def series(times, e_a, e_b, complexity, concurrence=None):
    concurrence = concurrence if concurrence is not None else np.zeros(len(times))
    return [TimeSeriesRecord(time=float(t), e_a=float(a), e_b=float(b), complexity=float(c),
                             concurrence=float(k), eof=0.0)
            for t, a, b, c, k in zip(times, e_a, e_b, complexity, concurrence)]


def trace_series(times, **columns):
    zeros = np.zeros(len(times))
    values = {k: columns.get(k, zeros) for k in ("e_a", "e_b", "e_c", "c_ab", "c_bc", "c_ac")}
    return [TimeSeriesRecord(time=float(t), **{k: float(v[i]) for k, v in values.items()})
            for i, t in enumerate(times)]


TIMES = np.linspace(0.0, 1.0, 11)


def test_relaxation_with_rising_complexity_is_consistent():
    records = series(TIMES, 0.5 - 0.1 * TIMES, 0.1 + 0.1 * TIMES, 0.2 * TIMES)
    report = arrow_complexity_report(records)
    assert report.considered == 9
    assert report.consistency == 1.0
    assert report.mismatched_times == []
    assert all(v.arrow is Arrow.NORMAL and v.trend is Trend.RISING for v in report.verdicts)


def test_relaxation_with_falling_complexity_mismatches():
    records = series(TIMES, 0.5 - 0.1 * TIMES, 0.1 + 0.1 * TIMES, 1.0 - 0.2 * TIMES)
    report = arrow_complexity_report(records)
    assert report.consistency == 0.0
    np.testing.assert_allclose(report.mismatched_times, TIMES[1:-1])


def test_reversal_with_falling_complexity_is_consistent():
    records = series(TIMES, 0.5 + 0.1 * TIMES, 0.1 - 0.05 * TIMES, 1.0 - 0.2 * TIMES)
    report = arrow_complexity_report(records)
    assert report.count(Arrow.REVERSED) == 9
    assert report.consistency == 1.0


def test_stalled_metric_counts_as_mismatch():
    records = series(TIMES, 0.5 - 0.1 * TIMES, 0.1 + 0.1 * TIMES, np.full(11, 0.3))
    assert arrow_complexity_report(records).consistency == 0.0


def test_constant_series_is_undefined():
    records = series(TIMES, np.full(11, 0.3), np.full(11, 0.1), np.full(11, 0.2))
    report = arrow_complexity_report(records)
    assert report.count(Arrow.STALLED) == 9
    assert report.considered == 0
    assert report.consistency is None


def test_temperature_tie_is_stalled():
    records = series(TIMES, np.full(11, 0.2), np.full(11, 0.2), 0.2 * TIMES)
    assert set(classify_arrow(records)) == {Arrow.STALLED}


def test_initial_reference_keeps_the_hot_label():
    # A starts hot and keeps cooling after the energies cross
    records = series(TIMES, 0.5 - 0.4 * TIMES, 0.1 + 0.4 * TIMES, 0.2 * TIMES)
    initial = classify_arrow(records, hot_reference="initial", hot_label="A")
    instantaneous = classify_arrow(records)
    assert set(initial) == {Arrow.NORMAL}
    assert instantaneous[-1] is Arrow.REVERSED


def test_metric_report_uses_any_column():
    records = series(TIMES, 0.5 - 0.1 * TIMES, 0.1 + 0.1 * TIMES, 0.2 * TIMES, concurrence=1.0 - 0.5 * TIMES)
    assert arrow_metric_report(records, "concurrence").consistency == 0.0


def test_report_errors():
    records = series(TIMES, 0.5 - 0.1 * TIMES, 0.1 + 0.1 * TIMES, 0.2 * TIMES)
    with pytest.raises(TooFewSamples):
        arrow_complexity_report(records[:2])
    with pytest.raises(ConfigError):
        arrow_complexity_report(records, hot_reference="sometimes")
    with pytest.raises(WrongArity):
        arrow_complexity_report(trace_series(TIMES, e_a=TIMES))


def test_turning_points_of_a_sine():
    times = np.linspace(0.0, 2 * math.pi, 401)
    points = turning_points(np.sin(times), times)
    step = times[1] - times[0]
    assert len(points) == 2
    assert points[0] == pytest.approx(math.pi / 2, abs=step)
    assert points[1] == pytest.approx(3 * math.pi / 2, abs=step)


def test_turning_points_of_a_monotone_series():
    assert turning_points(TIMES ** 2, TIMES) == []


def test_synchronization_of_shared_turning_points():
    times = np.linspace(0.0, 2 * math.pi, 201)
    records = trace_series(times, e_a=np.sin(times), c_ab=0.5 + 0.1 * np.sin(times), e_c=np.full(201, 0.3))
    report = synchronization_report(records)
    assert len(report.energy_points["e_a"]) == 2
    assert report.energy_points["e_c"] == []
    assert report.matched_fraction == 1.0
    assert report.window == pytest.approx(2 * (times[1] - times[0]))


def test_synchronization_of_unrelated_turning_points():
    times = np.linspace(0.0, 2 * math.pi, 201)
    records = trace_series(times, e_a=np.sin(times), c_ab=np.cos(times))
    report = synchronization_report(records)
    assert report.matched_fraction == 0.0


def test_synchronization_on_a_simulated_trace():
    records = run_three_qubit_trace(ThreeQubitTrace(steps=101))
    report = synchronization_report(records)
    assert report.matched_fraction is None or 0.0 <= report.matched_fraction <= 1.0
    with pytest.raises(WrongArity):
        synchronization_report(series(TIMES, TIMES, TIMES, TIMES))


def test_grid_similarity():
    rng = np.random.default_rng(7)
    records = []
    for s, t in zip(rng.uniform(size=30), rng.uniform(size=30)):
        e_a = s + 2 * t
        records.append(GridRecord(s=s, t=t, e_a=e_a, e_b=1 - e_a, e_c=0.3,
                                  c_ab=0.1 * e_a, c_bc=0.2, c_ac=0.2))
    report = grid_similarity_report(records)
    assert report.correlations[("e_a", "c_ab")] == pytest.approx(1.0)
    assert report.correlations[("e_b", "c_ab")] == pytest.approx(-1.0)
    assert math.isnan(report.correlations[("e_c", "c_bc")])
    assert report.ranges["e_c"] == (0.3, 0.3)

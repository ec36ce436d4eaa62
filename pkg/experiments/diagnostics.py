"""
Arrow-of-time diagnostics over experiment records.

The arrow at a sample is NORMAL when heat flows from the hotter to the
colder qubit, REVERSED when it flows the other way, and STALLED inside the
dead-band. Derivatives are central differences on the sample grid
(one-sided at the ends); only interior samples are classified.
"""

import logging
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.stats import spearmanr

from constants import DEAD_BAND, HOT_REFERENCES, TOL_DERIVED
from errors import ConfigError, TooFewSamples, WrongArity
from experiments.records import GridRecord, TimeSeriesRecord

logger = logging.getLogger(__name__)

ENERGY_KEYS = ("e_a", "e_b", "e_c")
COMPLEXITY_KEYS = ("c_ab", "c_bc", "c_ac")


class Arrow(Enum):
    NORMAL = "normal"
    REVERSED = "reversed"
    STALLED = "stalled"


class Trend(Enum):
    RISING = "rising"
    FALLING = "falling"
    STALLED = "stalled"


@dataclass(frozen=True)
class SampleVerdict:
    time: float
    arrow: Arrow
    trend: Trend

    @property
    def matched(self) -> Optional[bool]:
        """None when the arrow is stalled and the sample does not count"""
        if self.arrow is Arrow.STALLED:
            return None
        wanted = Trend.RISING if self.arrow is Arrow.NORMAL else Trend.FALLING
        return self.trend is wanted


@dataclass(frozen=True)
class ArrowReport:
    """
    Agreement between the arrow of time and the direction of one metric

    Attributes:
        metric: Record field the arrow was compared against
        hot_reference: "instantaneous" or "initial"
        verdicts: One verdict per interior sample
        considered: Samples with a non-stalled arrow
        matched: Considered samples where NORMAL meets a rising metric or REVERSED a falling one
        consistency: matched / considered, None when nothing was considered
        mismatched_times: Times of considered samples that did not match
    """

    metric: str
    hot_reference: str
    verdicts: List[SampleVerdict]
    considered: int
    matched: int
    consistency: Optional[float]
    mismatched_times: List[float]

    def count(self, arrow: Arrow) -> int:
        return sum(1 for v in self.verdicts if v.arrow is arrow)


def _column(series: Sequence[TimeSeriesRecord], name: str) -> np.ndarray:
    values = [getattr(record, name) for record in series]
    if any(v is None for v in values):
        raise WrongArity(f"Series has no '{name}' values")
    return np.asarray(values, dtype=float)


def _rate(values: np.ndarray, times: np.ndarray) -> np.ndarray:
    return np.gradient(values, times)


def _trends(values: np.ndarray, times: np.ndarray, dead_band: float) -> List[Trend]:
    trends = []
    for r in _rate(values, times):
        if r > dead_band:
            trends.append(Trend.RISING)
        elif r < -dead_band:
            trends.append(Trend.FALLING)
        else:
            trends.append(Trend.STALLED)
    return trends


def classify_arrow(series: Sequence[TimeSeriesRecord], dead_band: float = DEAD_BAND,
                   hot_reference: str = "instantaneous", hot_label: str = "A") -> List[Arrow]:
    """
    Arrow of time at every sample of a two-qubit series

    Args:
        series: Time-ordered two-qubit records
        dead_band: |rate| below this counts as STALLED
        hot_reference: "instantaneous" compares the current energies (equal
            local Hamiltonians, so higher energy means hotter); "initial" keeps
            `hot_label` as the hot side for the whole run
        hot_label: Initially hotter qubit, used by the "initial" reference

    Returns:
        One Arrow per sample (endpoint entries use one-sided differences)
    """
    if hot_reference not in HOT_REFERENCES:
        raise ConfigError(f"hot_reference must be one of {HOT_REFERENCES}", param="hot_reference")
    times = _column(series, "time")
    e_a = _column(series, "e_a")
    e_b = _column(series, "e_b")

    arrows = []
    if hot_reference == "instantaneous":
        gap = e_a - e_b
        # E_A + E_B is conserved, so the hot side's energy rate is half the gap's
        rates = _rate(np.abs(gap), times) / 2
        for g, r in zip(gap, rates):
            if abs(g) <= TOL_DERIVED or abs(r) < dead_band:
                arrows.append(Arrow.STALLED)
            else:
                arrows.append(Arrow.NORMAL if r < 0 else Arrow.REVERSED)
    else:
        hot = e_a if hot_label == "A" else e_b
        for r in _rate(hot, times):
            if abs(r) < dead_band:
                arrows.append(Arrow.STALLED)
            else:
                arrows.append(Arrow.NORMAL if r < 0 else Arrow.REVERSED)
    return arrows


def arrow_metric_report(series: Sequence[TimeSeriesRecord], metric: str = "complexity",
                        dead_band: float = DEAD_BAND, hot_reference: str = "instantaneous",
                        hot_label: str = "A") -> ArrowReport:
    """Compare the arrow of time with the direction of change of `metric`"""
    if len(series) < 3:
        raise TooFewSamples(f"Arrow diagnostic needs at least 3 samples, got {len(series)}")
    if series[0].is_three_qubit:
        raise WrongArity("Arrow diagnostic applies to two-qubit series")

    times = _column(series, "time")
    arrows = classify_arrow(series, dead_band, hot_reference, hot_label)
    trends = _trends(_column(series, metric), times, dead_band)

    verdicts = [SampleVerdict(float(times[k]), arrows[k], trends[k]) for k in range(1, len(series) - 1)]
    counted = [v for v in verdicts if v.matched is not None]
    matched = sum(1 for v in counted if v.matched)
    consistency = matched / len(counted) if counted else None

    logger.debug(f"Arrow vs {metric}: {matched}/{len(counted)} consistent ({hot_reference} reference)")
    return ArrowReport(
        metric=metric,
        hot_reference=hot_reference,
        verdicts=verdicts,
        considered=len(counted),
        matched=matched,
        consistency=consistency,
        mismatched_times=[v.time for v in counted if not v.matched],
    )


def arrow_complexity_report(series: Sequence[TimeSeriesRecord], **kwargs) -> ArrowReport:
    """Arrow of time against the state complexity of rho_AB"""
    return arrow_metric_report(series, "complexity", **kwargs)


def turning_points(values: Sequence[float], times: Sequence[float], dead_band: float = DEAD_BAND) -> List[float]:
    """
    Times where the derivative changes sign

    Stalled samples are skipped; each turning point sits midway between the
    last sample of the old sign and the first sample of the new one.
    """
    values = np.asarray(values, dtype=float)
    times = np.asarray(times, dtype=float)
    points = []
    last_sign, last_time = 0, None
    for r, t in zip(_rate(values, times), times):
        if abs(r) < dead_band:
            continue
        sign = 1 if r > 0 else -1
        if last_sign and sign != last_sign:
            points.append(float((last_time + t) / 2))
        last_sign, last_time = sign, t
    return points


@dataclass(frozen=True)
class SynchronizationReport:
    """Pairs every energy turning point with the nearest complexity turning point"""

    window: float
    energy_points: Dict[str, List[float]]
    complexity_points: Dict[str, List[float]]
    pairs: List[Tuple[str, float, Optional[str], Optional[float], bool]]
    matched_fraction: Optional[float]


def synchronization_report(series: Sequence[TimeSeriesRecord], window: Optional[float] = None,
                           dead_band: float = DEAD_BAND) -> SynchronizationReport:
    """
    Turning-point synchronization of a three-qubit trace

    Args:
        series: Three-qubit time trace
        window: Largest time offset still counted as synchronous; defaults
            to two grid steps
        dead_band: Derivative dead-band
    """
    if len(series) < 3:
        raise TooFewSamples(f"Synchronization needs at least 3 samples, got {len(series)}")
    if not series[0].is_three_qubit:
        raise WrongArity("Synchronization applies to three-qubit traces")

    times = _column(series, "time")
    if window is None:
        window = 2.0 * float(np.median(np.diff(times)))

    energy_points = {k: turning_points(_column(series, k), times, dead_band) for k in ENERGY_KEYS}
    complexity_points = {k: turning_points(_column(series, k), times, dead_band) for k in COMPLEXITY_KEYS}
    candidates = [(k, t) for k, pts in complexity_points.items() for t in pts]

    pairs = []
    for key, pts in energy_points.items():
        for t in pts:
            if candidates:
                near_key, near_t = min(candidates, key=lambda c: abs(c[1] - t))
                pairs.append((key, t, near_key, near_t, abs(near_t - t) <= window))
            else:
                pairs.append((key, t, None, None, False))

    matched_fraction = sum(1 for p in pairs if p[4]) / len(pairs) if pairs else None
    return SynchronizationReport(window, energy_points, complexity_points, pairs, matched_fraction)


@dataclass(frozen=True)
class GridSimilarity:
    """Per-surface ranges and energy/complexity rank correlations of a grid sweep"""

    ranges: Dict[str, Tuple[float, float]]
    correlations: Dict[Tuple[str, str], float]


def grid_similarity_report(records: Sequence[Union[GridRecord, TimeSeriesRecord]]) -> GridSimilarity:
    """Spearman rank correlation between every energy surface and every complexity surface"""
    if len(records) < 3:
        raise TooFewSamples(f"Similarity needs at least 3 cells, got {len(records)}")

    surfaces = {k: np.array([getattr(r, k) for r in records], dtype=float)
                for k in ENERGY_KEYS + COMPLEXITY_KEYS}
    ranges = {k: (float(v.min()), float(v.max())) for k, v in surfaces.items()}

    correlations = {}
    with warnings.catch_warnings():
        # Constant surfaces give nan, which is reported as such
        warnings.simplefilter("ignore")
        for e in ENERGY_KEYS:
            for c in COMPLEXITY_KEYS:
                correlations[(e, c)] = float(spearmanr(surfaces[e], surfaces[c])[0])
    return GridSimilarity(ranges, correlations)

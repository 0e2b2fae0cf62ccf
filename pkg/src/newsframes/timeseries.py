"""Temporal analysis of daily frame-proportion series.

Daily series are gap-free over the observed date range (days with no
articles carry a 0 with a diagnostic).  On top of that: centered rolling
smoothing, pairwise Pearson correlation, an AR(1) pulse-intervention test,
and single-equation Granger causality via the SSR F-test.
"""

from __future__ import annotations

import csv
import datetime
import logging
from dataclasses import dataclass

import numpy as np
from scipy.stats import f as f_dist
from scipy.stats import t as t_dist

from .errors import StatisticsError, ValidationError

log = logging.getLogger(__name__)

DAY = datetime.timedelta(days=1)


@dataclass
class FrameSeries:
    frame_id: str
    dates: list[datetime.date]
    values: list[float]
    excluded_events: frozenset[str] = frozenset()

    def __post_init__(self):
        for prev, cur in zip(self.dates, self.dates[1:]):
            if cur - prev != DAY:
                raise ValidationError(f"series {self.frame_id}: dates not daily at {cur}")

    def as_map(self) -> dict[datetime.date, float]:
        return dict(zip(self.dates, self.values))


@dataclass(frozen=True)
class InterventionFit:
    beta0: float            # AR coefficient on X_{t-1}
    beta1: float            # pulse coefficient
    c: float                # constant
    p_beta1: float
    se_beta0: float
    se_beta1: float
    se_c: float
    pulse_dates: frozenset[datetime.date]


@dataclass(frozen=True)
class GrangerResult:
    lag: int
    f_statistic: float
    p_value: float
    direction: tuple[str, str]   # (cause series id, effect series id)


def build_series(annotations, events, frame_id: str,
                 excluded_event_ids=()) -> FrameSeries:
    """Per-day proportion of articles carrying the frame, skipping articles on
    excluded (high-profile) events.  Empty days carry 0."""
    excluded = frozenset(excluded_event_ids)
    if events is not None:
        unknown = excluded - set(events)
        if unknown:
            raise ValidationError(f"unknown excluded event ids: {sorted(unknown)}")
    kept = [ann for ann in annotations if ann.event_id not in excluded]
    if not kept:
        raise StatisticsError(f"no articles remain for series {frame_id}")
    per_day: dict[datetime.date, list[int]] = {}
    for ann in kept:
        per_day.setdefault(ann.publish_date, []).append(1 if ann.present(frame_id) else 0)
    start, end = min(per_day), max(per_day)
    dates, values = [], []
    day = start
    while day <= end:
        dates.append(day)
        hits = per_day.get(day)
        if hits is None:
            log.warning("series %s: no articles on %s; value 0", frame_id, day)
            values.append(0.0)
        else:
            values.append(sum(hits) / len(hits))
        day += DAY
    return FrameSeries(frame_id=frame_id, dates=dates, values=values,
                       excluded_events=excluded)


def rolling_smooth(series: FrameSeries, window: int = 15,
                   centered: bool = True) -> FrameSeries:
    """Rolling-mean smoothing; centered windows shrink at the boundaries."""
    n = len(series.values)
    if window > n:
        raise StatisticsError(f"window {window} exceeds series length {n}")
    if window < 1:
        raise ValueError("window must be >= 1")
    values = []
    half = window // 2
    for i in range(n):
        if centered:
            lo, hi = max(0, i - half), min(n, i + half + 1)
        else:
            lo, hi = max(0, i - window + 1), i + 1
        values.append(sum(series.values[lo:hi]) / (hi - lo))
    return FrameSeries(frame_id=series.frame_id, dates=list(series.dates),
                       values=values, excluded_events=series.excluded_events)


def align(series_a: FrameSeries, series_b: FrameSeries):
    """Values over the date intersection of the two series."""
    map_b = series_b.as_map()
    xs, ys = [], []
    for day, va in zip(series_a.dates, series_a.values):
        vb = map_b.get(day)
        if vb is not None:
            xs.append(va)
            ys.append(vb)
    if not xs:
        raise StatisticsError("series have no overlapping dates")
    return np.array(xs), np.array(ys)


def pearson(series_a: FrameSeries, series_b: FrameSeries) -> float:
    xs, ys = align(series_a, series_b)
    if np.ptp(xs) == 0 or np.ptp(ys) == 0:
        raise StatisticsError("pearson undefined: zero variance")
    return float(np.corrcoef(xs, ys)[0, 1])


def _ols(y: np.ndarray, design: np.ndarray):
    """Least squares with coefficient standard errors; raises on singular fits."""
    n, k = design.shape
    if np.linalg.matrix_rank(design) < k:
        raise StatisticsError("singular regression design")
    coef, _res, _rank, _sv = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    ssr = float(resid @ resid)
    dof = n - k
    if dof <= 0:
        raise StatisticsError("not enough observations for regression")
    sigma2 = ssr / dof
    cov = sigma2 * np.linalg.inv(design.T @ design)
    se = np.sqrt(np.diag(cov))
    return coef, se, ssr, dof


def ar1_intervention(series: FrameSeries, pulse_dates) -> InterventionFit:
    """Fit X_t = beta0 X_{t-1} + beta1 P(t) + c and test beta1 = 0 (two-sided t)."""
    pulses = frozenset(pulse_dates)
    n = len(series.values)
    if n < 10:
        raise StatisticsError("series too short for intervention fit")
    in_range = pulses & set(series.dates[1:])
    if not in_range:
        raise StatisticsError("no pulse date falls inside the series range")
    x = np.array(series.values)
    y = x[1:]
    pulse = np.array([1.0 if d in pulses else 0.0 for d in series.dates[1:]])
    design = np.column_stack([x[:-1], pulse, np.ones(n - 1)])
    coef, se, _ssr, dof = _ols(y, design)
    t_stat = coef[1] / se[1]
    p = float(2 * t_dist.sf(abs(t_stat), dof))
    return InterventionFit(beta0=float(coef[0]), beta1=float(coef[1]),
                           c=float(coef[2]), p_beta1=p,
                           se_beta0=float(se[0]), se_beta1=float(se[1]),
                           se_c=float(se[2]), pulse_dates=in_range)


def granger(cause: FrameSeries, effect: FrameSeries, lag: int) -> GrangerResult:
    """SSR F-test of whether lagged cause values improve prediction of effect."""
    if lag < 1:
        raise ValueError("lag must be >= 1")
    xs, ys = align(cause, effect)
    n_total = len(xs)
    if n_total <= 4 * lag + 4:
        raise StatisticsError("series too short for the requested lag")
    y = ys[lag:]
    n = len(y)
    own_lags = [ys[lag - ell:n_total - ell] for ell in range(1, lag + 1)]
    cause_lags = [xs[lag - ell:n_total - ell] for ell in range(1, lag + 1)]
    restricted = np.column_stack(own_lags + [np.ones(n)])
    unrestricted = np.column_stack(own_lags + cause_lags + [np.ones(n)])
    _, _, ssr_r, _ = _ols(y, restricted)
    _, _, ssr_u, _ = _ols(y, unrestricted)
    df_denom = n - 2 * lag - 1
    f_stat = max(0.0, (ssr_r - ssr_u) / lag) / (ssr_u / df_denom)
    p = float(f_dist.sf(f_stat, lag, df_denom))
    return GrangerResult(lag=lag, f_statistic=float(f_stat), p_value=p,
                         direction=(cause.frame_id, effect.frame_id))


# ---------------------------------------------------------------------------
# Series CSV I/O (``date,value``)

def write_series(series: FrameSeries, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["date", "value"])
        for day, value in zip(series.dates, series.values):
            writer.writerow([day.isoformat(), repr(value)])


def read_series(path, frame_id: str | None = None) -> FrameSeries:
    dates, values = [], []
    with open(path, newline="", encoding="utf-8") as fh:
        for i, row in enumerate(csv.reader(fh)):
            if i == 0 and row and row[0] == "date":
                continue
            if not row:
                continue
            dates.append(datetime.date.fromisoformat(row[0]))
            values.append(float(row[1]))
    if frame_id is None:
        frame_id = str(path)
    return FrameSeries(frame_id=frame_id, dates=dates, values=values)


def series_from_counts(counts: dict[datetime.date, int], name: str) -> FrameSeries:
    """Gap-free daily series from a sparse date->count map (missing days are 0)."""
    if not counts:
        raise StatisticsError("empty count map")
    start, end = min(counts), max(counts)
    dates, values = [], []
    day = start
    while day <= end:
        dates.append(day)
        values.append(float(counts.get(day, 0)))
        day += DAY
    return FrameSeries(frame_id=name, dates=dates, values=values)

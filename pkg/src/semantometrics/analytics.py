"""Comparative statistics over a metric table.

Three tools, combined by :func:`analyze`:

* Pearson correlation between every pair of metrics;
* histograms of each metric (log2 bins for the long-tailed counts, linear
  bins for contribution);
* the bucket study: sort rows by one metric, cut them into ``k`` contiguous
  groups of near-equal size, and report mean and population standard
  deviation of a second metric per group.
"""
from __future__ import annotations

import bisect
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import AnalysisError
from .table import METRICS, MetricTable, fmt_real, write_csv

COUNT_METRICS = ("citations", "readers")


@dataclass(frozen=True)
class CorrelationResult:
    r: float
    n: int
    metric_x: str = "x"
    metric_y: str = "y"

    def as_dict(self) -> dict:
        return {"metric_x": self.metric_x, "metric_y": self.metric_y, "n": self.n, "r": self.r}


def pearson(x: Sequence[float], y: Sequence[float], metric_x: str = "x", metric_y: str = "y") -> CorrelationResult:
    """Two-pass product-moment correlation with exactly rounded sums.

    ``pearson(x, y).r == pearson(y, x).r`` holds bit for bit.
    """
    xs = np.asarray(x, dtype=np.float64)
    ys = np.asarray(y, dtype=np.float64)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise AnalysisError(f"length mismatch: {xs.shape} vs {ys.shape}")
    n = len(xs)
    if n < 2:
        raise AnalysisError("pearson needs at least two points")
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
        raise AnalysisError("pearson inputs must be finite")
    if np.all(xs == xs[0]) or np.all(ys == ys[0]):
        raise AnalysisError("pearson undefined for a constant series")
    dx = xs - math.fsum(xs) / n
    dy = ys - math.fsum(ys) / n
    sxx = math.fsum(dx * dx)
    syy = math.fsum(dy * dy)
    r = math.fsum(dx * dy) / (math.sqrt(sxx) * math.sqrt(syy))
    return CorrelationResult(max(-1.0, min(1.0, r)), n, metric_x, metric_y)


@dataclass(frozen=True)
class BucketSummary:
    bucket_index: int
    size: int
    x_min: float
    x_max: float
    y_mean: float
    y_std: float


@dataclass(frozen=True)
class BucketStudy:
    sort_metric: str
    target_metric: str
    buckets: tuple[BucketSummary, ...]
    grand_mean: float

    def to_csv(self) -> str:
        return write_csv(
            ("bucket", "x_min", "x_max", "y_mean", "y_std", "grand_mean"),
            (
                (b.bucket_index, float(b.x_min), float(b.x_max), b.y_mean, b.y_std, self.grand_mean)
                for b in self.buckets
            ),
        )


def bucket_bounds(n: int, k: int) -> list[tuple[int, int]]:
    """Slice bounds for ``k`` contiguous buckets over ``n`` items.

    The first ``n % k`` buckets get one extra item.
    """
    base, extra = divmod(n, k)
    bounds, start = [], 0
    for i in range(k):
        stop = start + base + (1 if i < extra else 0)
        bounds.append((start, stop))
        start = stop
    return bounds


def _mean_std(values: Sequence[float]) -> tuple[float, float]:
    n = len(values)
    mean = math.fsum(values) / n
    var = math.fsum((v - mean) ** 2 for v in values) / n
    return mean, math.sqrt(var)


def bucketize(rows, sort_metric: str, target_metric: str, k: int = 20) -> BucketStudy:
    """Equal-size bucket study of ``target_metric`` against ``sort_metric``.

    Rows are ordered by ``(sort_metric, doi)``; the DOI breaks the heavy ties
    of integer counts deterministically.  ``grand_mean`` is the mean of the
    per-bucket means.
    """
    for metric in (sort_metric, target_metric):
        if metric not in METRICS:
            raise AnalysisError(f"unknown metric {metric!r}")
    if k < 1:
        raise AnalysisError("bucket count must be positive")
    rows = list(rows)
    if len(rows) < k:
        raise AnalysisError(f"{len(rows)} rows cannot fill {k} buckets")
    pairs = []
    for row in rows:
        x, y = row.get(sort_metric), row.get(target_metric)
        if x is None or y is None:
            raise AnalysisError(f"row {row.doi} has an undefined value; filter it first")
        pairs.append((x, row.doi, y))
    pairs.sort(key=lambda t: (t[0], t[1]))

    buckets = []
    for i, (start, stop) in enumerate(bucket_bounds(len(pairs), k)):
        chunk = pairs[start:stop]
        mean, std = _mean_std([y for _, _, y in chunk])
        buckets.append(BucketSummary(i, len(chunk), chunk[0][0], chunk[-1][0], mean, std))
    grand = math.fsum(b.y_mean for b in buckets) / k
    return BucketStudy(sort_metric, target_metric, tuple(buckets), grand)


@dataclass(frozen=True)
class LinearBins:
    lo: float
    hi: float
    bins: int

    def edges(self) -> list[float]:
        if not self.lo < self.hi or self.bins < 1:
            raise AnalysisError(f"invalid linear binning {self}")
        width = self.hi - self.lo
        return [self.lo + width * i / self.bins for i in range(self.bins)] + [float(self.hi)]


@dataclass(frozen=True)
class Log2Bins:
    """Bins of constant width in log2 space; ``per_doubling`` bins per octave."""

    lo: float
    hi: float
    per_doubling: int = 1

    def edges(self) -> list[float]:
        if self.lo < 1 or not self.lo < self.hi or self.per_doubling < 1:
            raise AnalysisError(f"invalid log2 binning {self}")
        edges = [float(self.lo)]
        i = 0
        while True:
            i += 1
            e = self.lo * 2.0 ** (i / self.per_doubling)
            if e >= self.hi:
                edges.append(float(self.hi))
                return edges
            edges.append(e)


@dataclass(frozen=True)
class Histogram:
    """Half-open bins ``[e_i, e_{i+1})``; the last bin is closed."""

    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]
    underflow: int = 0
    overflow: int = 0

    @property
    def total(self) -> int:
        return sum(self.counts) + self.underflow + self.overflow

    def as_dict(self) -> dict:
        return {
            "bin_edges": list(self.bin_edges),
            "counts": list(self.counts),
            "underflow": self.underflow,
            "overflow": self.overflow,
        }

    def to_csv(self) -> str:
        rows = [("underflow", -math.inf, self.bin_edges[0], self.underflow)]
        rows += [
            ("bin", self.bin_edges[i], self.bin_edges[i + 1], c) for i, c in enumerate(self.counts)
        ]
        rows.append(("overflow", self.bin_edges[-1], math.inf, self.overflow))
        return write_csv(("kind", "bin_start", "bin_end", "count"), rows)


def histogram(values: Sequence[float], spec: LinearBins | Log2Bins) -> Histogram:
    if len(values) == 0:
        raise AnalysisError("histogram of no values")
    edges = spec.edges()
    counts = [0] * (len(edges) - 1)
    under = over = 0
    last = edges[-1]
    for v in values:
        if math.isnan(v):
            raise AnalysisError("histogram values must not be NaN")
        if v < edges[0]:
            under += 1
        elif v > last:
            over += 1
        elif v == last:
            counts[-1] += 1
        else:
            counts[bisect.bisect_right(edges, v) - 1] += 1
    return Histogram(tuple(edges), tuple(counts), under, over)


def default_binning(metric: str, values: Sequence[float]) -> LinearBins | Log2Bins:
    if metric == "contribution":
        return LinearBins(0.0, 1.0, 20)
    return Log2Bins(1, max(2, max(values)), 1)


def _round_floats(obj):
    if isinstance(obj, float):
        return float(fmt_real(obj)) if math.isfinite(obj) else str(obj)
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


@dataclass
class AnalysisReport:
    counts: dict
    correlations: list[CorrelationResult] = field(default_factory=list)
    histograms: dict[str, Histogram] = field(default_factory=dict)
    bucket_studies: dict[str, BucketStudy] = field(default_factory=dict)
    settings: dict = field(default_factory=dict)

    def correlation(self, x: str, y: str) -> CorrelationResult:
        for c in self.correlations:
            if {c.metric_x, c.metric_y} == {x, y}:
                return c
        raise KeyError((x, y))

    def as_dict(self) -> dict:
        return {
            "settings": self.settings,
            "counts": self.counts,
            "correlations": [c.as_dict() for c in self.correlations],
            "histograms": {m: h.as_dict() for m, h in self.histograms.items()},
            "bucket_studies": {
                name: {
                    "sort_metric": s.sort_metric,
                    "target_metric": s.target_metric,
                    "grand_mean": s.grand_mean,
                    "buckets": [
                        {
                            "bucket": b.bucket_index,
                            "size": b.size,
                            "x_min": b.x_min,
                            "x_max": b.x_max,
                            "y_mean": b.y_mean,
                            "y_std": b.y_std,
                        }
                        for b in s.buckets
                    ],
                }
                for name, s in self.bucket_studies.items()
            },
        }

    def to_json(self) -> str:
        return json.dumps(_round_floats(self.as_dict()), sort_keys=True, indent=2) + "\n"

    def csv_files(self) -> dict[str, str]:
        """Plot-ready exports keyed by file name."""
        files = {f"fig_{name}.csv": s.to_csv() for name, s in self.bucket_studies.items()}
        files.update({f"hist_{m}.csv": h.to_csv() for m, h in self.histograms.items()})
        return files


def analyze(
    table: MetricTable,
    bucket_count: int = 20,
    exclude_zero_readers: bool = False,
    log_transform: bool = False,
) -> AnalysisReport:
    """Run every correlation, histogram and directed bucket study.

    Rows with undefined contribution are left out of contribution statistics
    only; how many were dropped is reported in ``counts``.  With
    ``log_transform`` the count metrics enter Pearson as ``log1p(count)``;
    histograms and buckets always use raw values.
    """
    if len(table) == 0:
        raise AnalysisError("empty metric table")
    rows = list(table.rows)
    zero_readers = 0
    if exclude_zero_readers:
        kept = [r for r in rows if r.readers > 0]
        zero_readers = len(rows) - len(kept)
        rows = kept
        if not rows:
            raise AnalysisError("no rows left after excluding zero-reader papers")
    defined = [r for r in rows if r.contribution is not None]

    report = AnalysisReport(
        counts={
            "rows_total": len(table),
            "rows_analyzed": len(rows),
            "zero_readers_excluded": zero_readers,
            "contribution_defined": len(defined),
            "contribution_undefined_excluded": len(rows) - len(defined),
        },
        settings={
            "bucket_count": bucket_count,
            "exclude_zero_readers": exclude_zero_readers,
            "log_transform": log_transform,
        },
    )
    metrics = list(COUNT_METRICS) + (["contribution"] if defined else [])

    def subset(m1, m2):
        return defined if "contribution" in (m1, m2) else rows

    def corr_values(sub, metric):
        vals = [float(r.get(metric)) for r in sub]
        if log_transform and metric in COUNT_METRICS:
            vals = [math.log1p(v) for v in vals]
        return vals

    for mx, my in itertools.combinations(metrics, 2):
        sub = subset(mx, my)
        report.correlations.append(pearson(corr_values(sub, mx), corr_values(sub, my), mx, my))
    for m in metrics:
        vals = [r.get(m) for r in subset(m, m)]
        report.histograms[m] = histogram(vals, default_binning(m, vals))
    for mx, my in itertools.permutations(metrics, 2):
        report.bucket_studies[f"{mx}_vs_{my}"] = bucketize(subset(mx, my), mx, my, bucket_count)
    return report

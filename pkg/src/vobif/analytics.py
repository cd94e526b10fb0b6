"""Entrance-set statistics, result comparison and runtime benchmarks."""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Sequence

import numba as nb
import numpy as np

from .core import NEG_INF_CODE, BifiltrationResult, GrayImage, Metric, PixelLists

_POS_INF = np.iinfo(np.int64).max


@dataclass
class StatsReport:
    num_pixels: int
    num_values: int
    total_bigrades: int
    min_size: int
    max_size: int
    histogram: dict[int, int]

    @property
    def average(self) -> float:
        return self.total_bigrades / self.num_pixels

    @property
    def average_exact(self) -> Fraction:
        return Fraction(self.total_bigrades, self.num_pixels)

    def format(self) -> str:
        lines = [
            f"pixels {self.num_pixels}",
            f"values {self.num_values}",
            f"total_bigrades {self.total_bigrades}",
            f"average {self.average:.6f}",
            f"min {self.min_size}",
            f"max {self.max_size}",
            "histogram " + " ".join(f"{k}:{v}" for k, v in sorted(self.histogram.items())),
        ]
        return "\n".join(lines)


def entrance_stats(result: BifiltrationResult) -> StatsReport:
    sizes = result.sizes()
    counts = np.bincount(sizes)
    hist = {int(k): int(c) for k, c in enumerate(counts) if c}
    return StatsReport(
        num_pixels=result.num_pixels,
        num_values=len(result.values),
        total_bigrades=result.total_bigrades,
        min_size=int(sizes.min()),
        max_size=int(sizes.max()),
        histogram=hist,
    )


# ---------------------------------------------------------------- compare

@nb.njit(cache=True)
def _real(code, euclid):
    if code == NEG_INF_CODE:
        return -np.inf
    if code == _POS_INF:
        return np.inf
    if euclid:
        return math.copysign(math.sqrt(abs(code)), code)
    return float(code)


@nb.njit(cache=True)
def _diff_kernel(values, a_ptr, a_val, a_off, b_ptr, b_val, b_off, euclid):
    n = a_ptr.shape[0] - 1
    exact = 0
    violations = 0
    worst = 0.0
    worst_pixel = -1
    worst_value = 0
    for i in range(n):
        ia = a_ptr[i]
        ib = b_ptr[i]
        ta = _POS_INF
        tb = _POS_INF
        for k in range(values.shape[0]):
            v = values[k]
            while ia < a_ptr[i + 1] and a_val[ia] <= v:
                if a_off[ia] < ta:
                    ta = a_off[ia]
                ia += 1
            while ib < b_ptr[i + 1] and b_val[ib] <= v:
                if b_off[ib] < tb:
                    tb = b_off[ib]
                ib += 1
            if ta == tb:
                exact += 1
                continue
            d = abs(_real(ta, euclid) - _real(tb, euclid))
            if not d < 1.0:
                violations += 1
            if d > worst:
                worst = d
                worst_pixel = i
                worst_value = v
    return exact, violations, worst, worst_pixel, worst_value


@dataclass
class DiffReport:
    comparisons: int
    exact_matches: int
    bound_violations: int
    max_abs_diff: float
    worst_pixel: tuple[int, int] | None
    worst_value: int | None

    @property
    def identical(self) -> bool:
        return self.exact_matches == self.comparisons

    def format(self) -> str:
        lines = [
            f"comparisons {self.comparisons}",
            f"exact_matches {self.exact_matches}",
            f"differences {self.comparisons - self.exact_matches}",
            f"max_abs_diff {self.max_abs_diff:.6f}",
            f"bound_violations {self.bound_violations}",
        ]
        if self.worst_pixel is not None:
            x, y = self.worst_pixel
            lines.append(f"worst_pixel {x} {y} value {self.worst_value}")
        return "\n".join(lines)


def compare(a: BifiltrationResult, b: BifiltrationResult) -> DiffReport:
    """Compare the minimal offset reached by each pixel at each value.

    For value ``v`` a result's offset is the smallest offset among the
    pixel's entrance points with value ``<= v`` (``+inf`` when none).
    A difference of 1 or more counts as a bound violation.
    """
    if a.metric is not b.metric:
        raise ValueError(f"metric mismatch: {a.metric.value} vs {b.metric.value}")
    if (a.width, a.height) != (b.width, b.height):
        raise ValueError(f"dimension mismatch: {a.width}x{a.height} vs {b.width}x{b.height}")
    if not np.array_equal(a.values, b.values):
        raise ValueError("value sets differ; results come from different images")
    exact, bad, worst, wp, wv = _diff_kernel(
        a.values, a.indptr, a.point_values, a.point_offsets,
        b.indptr, b.point_values, b.point_offsets, a.metric is Metric.EUCLIDEAN,
    )
    pixel = None if wp < 0 else (int(wp) % a.width, int(wp) // a.width)
    return DiffReport(
        comparisons=a.num_pixels * len(a.values),
        exact_matches=int(exact),
        bound_violations=int(bad),
        max_abs_diff=float(worst),
        worst_pixel=pixel,
        worst_value=None if wp < 0 else int(wv),
    )


@dataclass
class DirectionReport:
    """Per-pass error of fast lists against true nearest distances.

    Errors are measured in real (not squared) units as fast minus true;
    a negative error means the fast pass undershot.
    """
    thicken_checks: int = 0
    thin_checks: int = 0
    thicken_negative: int = 0
    thin_negative: int = 0
    thicken_max_error: float = 0.0
    thin_max_error: float = 0.0
    mismatched_support: int = 0
    worst: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (self.thicken_negative == 0 and self.thin_negative == 0
                and self.mismatched_support == 0
                and self.thicken_max_error < 1 and self.thin_max_error < 1)


def _to_real(x: np.ndarray, metric: Metric) -> np.ndarray:
    x = x.astype(float)
    return np.sqrt(x) if metric is Metric.EUCLIDEAN else x


def pass_distances(plus: PixelLists, comp: PixelLists, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-pixel, per-value distances implied by pass outputs.

    ``below[i, k]`` is the distance to the nearest pixel with value
    ``<= values[k]`` and ``above[i, k]`` to the nearest with value
    ``> values[k]`` (``-1`` when none). Distances are squared for Euclidean.
    """
    n = len(plus.indptr) - 1
    k = len(values)
    below = np.full((n, k), -1, dtype=np.int64)
    above = np.full((n, k), -1, dtype=np.int64)
    for i in range(n):
        lo, hi = plus.indptr[i], plus.indptr[i + 1]
        pos = np.searchsorted(values, plus.point_values[lo:hi])
        row = np.full(k, _POS_INF, dtype=np.int64)
        row[pos] = plus.point_offsets[lo:hi]
        row = np.minimum.accumulate(row)
        below[i] = np.where(row == _POS_INF, -1, row)

        lo, hi = comp.indptr[i], comp.indptr[i + 1]
        # label u = v - 1 records the nearest pixel of value >= v, i.e. > u
        pos = np.searchsorted(values, comp.point_values[lo:hi], side="right") - 1
        row = np.full(k, _POS_INF, dtype=np.int64)
        np.minimum.at(row, pos, -comp.point_offsets[lo:hi])
        row = np.minimum.accumulate(row[::-1])[::-1]
        above[i] = np.where(row == _POS_INF, -1, row)
    return below, above


def directional_check(img: GrayImage, plus: PixelLists, comp: PixelLists) -> DirectionReport:
    """Check fast pass outputs never undershoot the true nearest distances."""
    from .oracle import _thresholds

    metric = plus.metric
    values = img.value_set()
    below, above = pass_distances(plus, comp, values)
    rep = DirectionReport()
    for i, (x, y) in enumerate((i % img.width, i // img.width) for i in range(img.num_pixels)):
        _, t_below, t_above, _ = _thresholds(img, (x, y), metric)
        if np.any((below[i] < 0) != (t_below < 0)) or np.any((above[i] < 0) != (t_above < 0)):
            rep.mismatched_support += 1
            continue
        m = t_below >= 0
        e = _to_real(below[i][m], metric) - _to_real(t_below[m], metric)
        rep.thicken_checks += int(m.sum())
        rep.thicken_negative += int((e < 0).sum())
        if e.size and e.max() > rep.thicken_max_error:
            rep.thicken_max_error = float(e.max())
            rep.worst["thicken"] = (x, y)
        m = t_above >= 0
        e = _to_real(above[i][m], metric) - _to_real(t_above[m], metric)
        rep.thin_checks += int(m.sum())
        rep.thin_negative += int((e < 0).sum())
        if e.size and e.max() > rep.thin_max_error:
            rep.thin_max_error = float(e.max())
            rep.worst["thin"] = (x, y)
    return rep


# ---------------------------------------------------------------- bench

BENCH_COLUMNS = ["metric", "width", "height", "num_values", "seed", "pixels", "total_bigrades", "seconds"]


@dataclass
class BenchRow:
    metric: str
    width: int
    height: int
    num_values: int
    seed: int
    pixels: int
    total_bigrades: int
    seconds: float

    def as_list(self) -> list:
        return [self.metric, self.width, self.height, self.num_values, self.seed,
                self.pixels, self.total_bigrades, f"{self.seconds:.6f}"]


def _size_pair(s) -> tuple[int, int]:
    if isinstance(s, (tuple, list)):
        return int(s[0]), int(s[1])
    return int(s), int(s)


def warm_up(metric: Metric | str) -> None:
    """Trigger kernel compilation so it stays out of the timings."""
    from .conversion import compute_bifiltration
    from .generators import gen_random

    compute_bifiltration(gen_random(4, 4, 3, 0), metric)


def bench_run(sizes: Iterable, values: Iterable[int], metric: Metric | str, reps: int = 1,
              seed: int = 0) -> list[BenchRow]:
    """Time ``compute_bifiltration`` on seeded random images.

    ``sizes`` holds side lengths or ``(width, height)`` pairs. Each
    configuration reports the fastest of ``reps`` runs; ``reps == 0``
    yields no rows.
    """
    from .conversion import compute_bifiltration
    from .generators import gen_random

    metric = Metric.parse(metric)
    rows: list[BenchRow] = []
    if reps <= 0:
        return rows
    warm_up(metric)
    for s in sizes:
        w, h = _size_pair(s)
        for k in values:
            img = gen_random(w, h, k, seed)
            best = math.inf
            total = 0
            for _ in range(reps):
                t0 = time.perf_counter()
                res = compute_bifiltration(img, metric)
                best = min(best, time.perf_counter() - t0)
                total = res.total_bigrades
            rows.append(BenchRow(metric.value, w, h, k, seed, w * h, total, best))
    return rows


def write_bench_csv(rows: Sequence[BenchRow], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for r in rows:
        writer.writerow(r.as_list())


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    return float(np.corrcoef(np.asarray(x, float), np.asarray(y, float))[0, 1])

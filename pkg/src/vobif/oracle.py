"""Brute-force reference for presence and entrance sets.

Everything here is computed straight from the definitions by scanning every
pixel, with no search or propagation. It is quadratic in the pixel count and
meant for images up to a few thousand pixels.
"""

from __future__ import annotations

import numpy as np

from .core import (
    Bigrade,
    BifiltrationResult,
    ComplementEntranceSet,
    EntranceSet,
    GrayImage,
    Metric,
    Offset,
    maximal_points,
    minimal_points,
)


def distance(p: tuple[int, int], q: tuple[int, int], metric: Metric | str) -> Offset:
    """Distance between two pixels; squared for Euclidean."""
    metric = Metric.parse(metric)
    dx, dy = p[0] - q[0], p[1] - q[1]
    if metric is Metric.TAXICAB:
        return Offset.finite(abs(dx) + abs(dy), metric)
    return Offset.finite(dx * dx + dy * dy, metric)


def _distance_grid(img: GrayImage, p: tuple[int, int], metric: Metric) -> np.ndarray:
    ys, xs = np.indices(img.pixels.shape)
    dx = xs - p[0]
    dy = ys - p[1]
    if metric is Metric.TAXICAB:
        return np.abs(dx) + np.abs(dy)
    return dx * dx + dy * dy


def present(img: GrayImage, p: tuple[int, int], b: Bigrade, metric: Metric | str) -> bool:
    """Whether pixel ``p`` belongs to the thickened/thinned sublevel set at ``b``."""
    metric = Metric.parse(metric)
    if b.metric is not metric:
        raise ValueError("bigrade metric does not match requested metric")
    img.check_coord(*p)
    v = b.value
    if b.offset.neg_inf:
        return bool(np.all(img.pixels <= v))
    t = b.offset.signed
    if t == 0:
        return img[p] <= v
    d = _distance_grid(img, p, metric)
    if t > 0:
        return bool(np.any((img.pixels <= v) & (d <= t)))
    return bool(np.all(img.pixels[d <= -t] <= v))


def _thresholds(img: GrayImage, p: tuple[int, int], metric: Metric):
    """Per-value nearest distances from ``p``.

    Returns ``(values, below, above, realizable)`` where ``below[i]`` is the
    distance to the nearest pixel with value ``<= values[i]`` and ``above[i]``
    the distance to the nearest pixel with value ``> values[i]`` (``-1`` when
    there is none). ``realizable`` is the sorted set of distances from ``p``.
    """
    img.check_coord(*p)
    d = _distance_grid(img, p, metric).ravel()
    f = img.flat
    values = img.value_set()
    below = np.empty(len(values), dtype=np.int64)
    above = np.empty(len(values), dtype=np.int64)
    for i, v in enumerate(values):
        below[i] = d[f <= v].min()
        hi = d[f > v]
        above[i] = hi.min() if hi.size else -1
    return values, below, above, np.unique(d)


def _prev(r: int, realizable: np.ndarray) -> int:
    """Largest realizable distance strictly below ``r``."""
    i = int(np.searchsorted(realizable, r, side="left"))
    return int(realizable[i - 1])


def oracle_positive_set(img: GrayImage, p: tuple[int, int], metric: Metric | str) -> tuple[Bigrade, ...]:
    metric = Metric.parse(metric)
    values, below, _, _ = _thresholds(img, p, metric)
    return minimal_points(
        Bigrade(int(v), Offset.finite(int(t), metric)) for v, t in zip(values, below)
    )


def oracle_negative_set(img: GrayImage, p: tuple[int, int], metric: Metric | str) -> tuple[Bigrade, ...]:
    metric = Metric.parse(metric)
    values, _, above, realizable = _thresholds(img, p, metric)
    pts = [Bigrade(int(values[-1]), Offset.negative_infinity(metric))]
    for v, e in zip(values[:-1], above[:-1]):
        if e > 0:
            pts.append(Bigrade(int(v), Offset.finite(-_prev(int(e), realizable), metric)))
    return minimal_points(pts)


def oracle_entrance_set(img: GrayImage, p: tuple[int, int], metric: Metric | str) -> EntranceSet:
    """Entrance set of ``p`` from nearest-distance thresholds per value."""
    metric = Metric.parse(metric)
    pos = oracle_positive_set(img, p, metric)
    neg = oracle_negative_set(img, p, metric)
    return EntranceSet(minimal_points(pos + neg))


def oracle_complement_set(img: GrayImage, p: tuple[int, int], metric: Metric | str) -> ComplementEntranceSet:
    """Maximal ``(v - 1, -d)`` bigrades at which ``p`` is absent.

    Values are labelled ``v - 1`` for each ``v`` in the value set above its
    minimum, matching the thinning passes.
    """
    metric = Metric.parse(metric)
    values, _, above, _ = _thresholds(img, p, metric)
    pts = []
    # nearest pixel with value >= values[i] is the nearest with value > values[i-1]
    for i in range(1, len(values)):
        pts.append(Bigrade(int(values[i]) - 1, Offset.finite(-int(above[i - 1]), metric)))
    return ComplementEntranceSet(maximal_points(pts))


def realizable_distances(img: GrayImage, p: tuple[int, int], metric: Metric | str) -> np.ndarray:
    """Sorted distances from ``p`` to every pixel (squared for Euclidean)."""
    return np.unique(_distance_grid(img, p, Metric.parse(metric)))


def enumerate_entrance_set(img: GrayImage, p: tuple[int, int], metric: Metric | str) -> EntranceSet:
    """Slowest route: test presence on the whole bigrade grid, keep the minima.

    Offsets range over every realizable distance from ``p`` with both signs,
    plus negative infinity.
    """
    metric = Metric.parse(metric)
    dists = realizable_distances(img, p, metric).tolist()
    offsets = [Offset.negative_infinity(metric)]
    offsets += [Offset.finite(-d, metric) for d in dists if d]
    offsets += [Offset.finite(d, metric) for d in dists]
    hits = [
        Bigrade(int(v), t)
        for v in img.value_set()
        for t in offsets
        if present(img, p, Bigrade(int(v), t), metric)
    ]
    return EntranceSet(minimal_points(hits))


def enumerate_complement_set(img: GrayImage, p: tuple[int, int], metric: Metric | str) -> ComplementEntranceSet:
    """Maximal absent bigrades on the grid ``{v - 1} x {-d}``, by presence tests."""
    metric = Metric.parse(metric)
    dists = realizable_distances(img, p, metric).tolist()
    values = img.value_set()
    misses = [
        Bigrade(int(v) - 1, Offset.finite(-d, metric))
        for v in values[1:]
        for d in dists
        if not present(img, p, Bigrade(int(v) - 1, Offset.finite(-d, metric)), metric)
    ]
    return ComplementEntranceSet(maximal_points(misses))


def oracle_bifiltration(img: GrayImage, metric: Metric | str) -> BifiltrationResult:
    """Entrance sets for every pixel; always flagged exact."""
    metric = Metric.parse(metric)
    sets = [oracle_entrance_set(img, p, metric) for p in img.coords()]
    return BifiltrationResult.from_sets(metric, img.width, img.height, img.value_set(), sets, exact=True)

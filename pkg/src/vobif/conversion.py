"""Turn complement entrance points into negative entrance points and merge.

Between two consecutive complement points ``a`` and ``b`` (by value) a pixel
has exactly one negative entrance point, at value ``v_a + 1`` and offset
``-prev(|t_b|)``, where ``prev`` is the largest distance realizable from the
pixel that is strictly smaller. Only ``prev`` knows about the metric.
"""

from __future__ import annotations

import math
import time

import numba as nb
import numpy as np

from ._arrays import levels
from .core import NEG_INF_CODE, BifiltrationResult, GrayImage, Metric, PixelLists

_TAXICAB = 0
_EUCLIDEAN = 1


@nb.njit(cache=True)
def _isqrt(n):
    r = np.int64(math.sqrt(n))
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


@nb.njit(cache=True)
def _prev(r, x, y, width, height, metric):
    if r <= 1:
        return 0
    if metric == _TAXICAB:
        return r - 1
    a_max = max(x, width - 1 - x)
    b_max = max(y, height - 1 - y)
    limit = r - 1
    best = 0
    a_hi = min(a_max, _isqrt(limit))
    for a in range(a_hi + 1):
        b = min(b_max, _isqrt(limit - a * a))
        d = a * a + b * b
        if d > best:
            best = d
    return best


def prev_distance(r: int, p: tuple[int, int], dims: tuple[int, int], metric: Metric | str) -> int:
    """Largest distance from ``p`` strictly below ``r`` (squared for Euclidean).

    ``dims`` is ``(width, height)``. Returns 0 when nothing positive is smaller.
    """
    if r <= 0:
        raise ValueError(f"prev_distance needs r > 0, got {r}")
    metric = Metric.parse(metric)
    x, y = p
    width, height = dims
    if not (0 <= x < width and 0 <= y < height):
        raise IndexError(f"pixel {p} outside {width}x{height} image")
    code = _TAXICAB if metric is Metric.TAXICAB else _EUCLIDEAN
    return int(_prev(r, x, y, width, height, code))


@nb.njit(cache=True)
def _convert(flat, width, height, vmin, vmax, p_ptr, p_val, p_off, c_ptr, c_val, c_off, metric):
    n = width * height
    # Each pixel ends with at most |B+| + |Bc| + 1 points.
    cap = p_ptr[n] + c_ptr[n] + n
    out_ptr = np.zeros(n + 1, dtype=np.int64)
    out_v = np.empty(cap, dtype=np.int64)
    out_o = np.empty(cap, dtype=np.int64)
    k_max = 0
    for i in range(n):
        k_max = max(k_max, p_ptr[i + 1] - p_ptr[i])
        k_max = max(k_max, c_ptr[i + 1] - c_ptr[i])
    plus_v = np.empty(k_max + 1, dtype=np.int64)
    plus_o = np.empty(k_max + 1, dtype=np.int64)
    neg_v = np.empty(k_max + 2, dtype=np.int64)
    neg_o = np.empty(k_max + 2, dtype=np.int64)

    pos = 0
    for i in range(n):
        x = i % width
        y = i // width
        fp = flat[i]
        n_plus = 0
        for j in range(p_ptr[i], p_ptr[i + 1]):
            plus_v[n_plus] = p_val[j]
            plus_o[n_plus] = p_off[j]
            n_plus += 1
        drop_own_zero = False
        n_neg = 0
        c_lo = c_ptr[i]
        c_hi = c_ptr[i + 1]

        if fp == vmin and c_hi > c_lo:
            smallest = -c_off[c_lo]
            for j in range(c_lo + 1, c_hi):
                if -c_off[j] < smallest:
                    smallest = -c_off[j]
            t = -_prev(smallest, x, y, width, height, metric)
            if t < 0:
                drop_own_zero = True
                neg_v[n_neg] = vmin
                neg_o[n_neg] = t
                n_neg += 1

        for j in range(c_lo, c_hi - 1):
            v = c_val[j] + 1
            t = -_prev(-c_off[j + 1], x, y, width, height, metric)
            if v == fp and t == 0:
                continue
            if v == fp:
                drop_own_zero = True
            if t < 0:
                neg_v[n_neg] = v
                neg_o[n_neg] = t
                n_neg += 1
        neg_v[n_neg] = vmax
        neg_o[n_neg] = NEG_INF_CODE
        n_neg += 1

        # Merge both ascending-value lists and keep the minimal points.
        a = 0
        b = 0
        running = np.iinfo(np.int64).max
        while a < n_plus or b < n_neg:
            take_plus = False
            if b >= n_neg:
                take_plus = True
            elif a < n_plus:
                if plus_v[a] < neg_v[b] or (plus_v[a] == neg_v[b] and plus_o[a] <= neg_o[b]):
                    take_plus = True
            if take_plus:
                v = plus_v[a]
                t = plus_o[a]
                a += 1
                if drop_own_zero and v == fp and t == 0:
                    continue
            else:
                v = neg_v[b]
                t = neg_o[b]
                b += 1
            if t < running:
                out_v[pos] = v
                out_o[pos] = t
                pos += 1
                running = t
        out_ptr[i + 1] = pos
    return out_ptr, out_v[:pos].copy(), out_o[:pos].copy()


def _check_lists(lists: PixelLists, name: str) -> None:
    owner = np.repeat(np.arange(len(lists.indptr) - 1), lists.sizes())
    same = owner[1:] == owner[:-1]
    if np.any(np.diff(lists.point_values)[same] <= 0):
        raise ValueError(f"{name} lists must be sorted by strictly ascending value")


def convert(bplus: PixelLists, bcomp: PixelLists, img: GrayImage, metric: Metric | str,
            exact: bool | None = None) -> BifiltrationResult:
    """Combine positive and complement entrance points into entrance sets."""
    metric = Metric.parse(metric)
    if bplus.metric is not metric or bcomp.metric is not metric:
        raise ValueError("thickening, thinning and conversion must share one metric")
    if (bplus.width, bplus.height) != (img.width, img.height) or (bcomp.width, bcomp.height) != (img.width, img.height):
        raise ValueError("pass outputs do not match the image dimensions")
    _check_lists(bcomp, "complement")
    values, _, _ = levels(img.flat)
    code = _TAXICAB if metric is Metric.TAXICAB else _EUCLIDEAN
    ptr, pv, po = _convert(
        img.flat, img.width, img.height, int(values[0]), int(values[-1]),
        bplus.indptr, bplus.point_values, bplus.point_offsets,
        bcomp.indptr, bcomp.point_values, bcomp.point_offsets, code,
    )
    if exact is None:
        exact = metric is Metric.TAXICAB
    return BifiltrationResult(metric, img.width, img.height, values, ptr, pv, po, exact)


def compute_bifiltration(img: GrayImage, metric: Metric | str) -> BifiltrationResult:
    """Entrance sets for every pixel: exact for taxicab, approximate for Euclidean."""
    metric = Metric.parse(metric)
    t0 = time.perf_counter()
    if metric is Metric.TAXICAB:
        from .taxicab import taxicab_thicken as thicken, taxicab_thin as thin
    else:
        from .euclidean import euclidean_thicken as thicken, euclidean_thin as thin
    bplus = thicken(img)
    bcomp = thin(img)
    result = convert(bplus, bcomp, img, metric)
    result.counters = {
        "thicken": bplus.counters,
        "thin": bcomp.counters,
        "seconds": time.perf_counter() - t0,
    }
    return result

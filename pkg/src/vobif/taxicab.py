"""Exact positive and complement entrance points under the taxicab distance.

Both passes run one multi-source breadth-first search per pixel value over
the 4-connected pixel grid. A neighbor is enqueued only when it gains a new
entrance point, so each pixel enters the queue at most once per value.
"""

from __future__ import annotations

import numba as nb
import numpy as np

from ._arrays import group_by_pixel, grow, levels
from .core import GrayImage, Metric, PixelLists

_INF32 = np.iinfo(np.int32).max


@nb.njit(cache=True)
def _bfs_passes(flat, width, height, values, order, starts, thinning):
    n = width * height
    k_count = values.shape[0]
    best = np.full(n, _INF32, dtype=np.int32)  # last (smallest) magnitude on each pixel's list
    depth = np.zeros(n, dtype=np.int32)
    queue = np.empty(n, dtype=np.int64)
    stamp = np.full(n, -1, dtype=np.int32)  # value index of each pixel's latest enqueue

    cap = max(16, 2 * n)
    log_p = np.empty(cap, dtype=np.int64)
    log_v = np.empty(cap, dtype=np.int64)
    log_o = np.empty(cap, dtype=np.int64)
    count = 0
    pushes = 0
    repeats = 0

    if thinning:
        k_first, k_stop, k_step = k_count - 1, 0, -1
        sign = -1
    else:
        k_first, k_stop, k_step = 0, k_count, 1
        sign = 1

    for k in range(k_first, k_stop, k_step):
        v = values[k]
        label = v - 1 if thinning else v
        head = 0
        tail = 0
        for i in range(starts[k], starts[k + 1]):
            p = order[i]
            depth[p] = 0
            best[p] = 0
            if count + 1 > log_p.shape[0]:
                log_p = grow(log_p, count + 1)
                log_v = grow(log_v, count + 1)
                log_o = grow(log_o, count + 1)
            log_p[count] = p
            log_v[count] = label
            log_o[count] = 0
            count += 1
            if stamp[p] == k:
                repeats += 1
            stamp[p] = k
            queue[tail] = p
            tail += 1
            pushes += 1
        while head < tail:
            p = queue[head]
            head += 1
            d = depth[p] + 1
            x = p % width
            y = p // width
            for nb_i in range(4):
                if nb_i == 0:
                    if x == 0:
                        continue
                    q = p - 1
                elif nb_i == 1:
                    if x == width - 1:
                        continue
                    q = p + 1
                elif nb_i == 2:
                    if y == 0:
                        continue
                    q = p - width
                else:
                    if y == height - 1:
                        continue
                    q = p + width
                if d < best[q]:
                    best[q] = d
                    depth[q] = d
                    if count + 1 > log_p.shape[0]:
                        log_p = grow(log_p, count + 1)
                        log_v = grow(log_v, count + 1)
                        log_o = grow(log_o, count + 1)
                    log_p[count] = q
                    log_v[count] = label
                    log_o[count] = sign * d
                    count += 1
                    if stamp[q] == k:
                        repeats += 1
                    stamp[q] = k
                    if tail == n:
                        raise RuntimeError("queue overflow: pixel enqueued twice for one value")
                    queue[tail] = q
                    tail += 1
                    pushes += 1

    indptr, pv, po = group_by_pixel(log_p, log_v, log_o, count, n, thinning)
    return indptr, pv, po, pushes, repeats


def _run(img: GrayImage, thinning: bool) -> PixelLists:
    values, order, starts = levels(img.flat)
    indptr, pv, po, pushes, repeats = _bfs_passes(
        img.flat, img.width, img.height, values, order, starts, thinning
    )
    counters = {"pushes": int(pushes), "repeat_enqueues": int(repeats), "num_values": len(values)}
    return PixelLists(Metric.TAXICAB, img.width, img.height, indptr, pv, po, counters)


def taxicab_thicken(img: GrayImage) -> PixelLists:
    """Positive entrance points of every pixel (values ascending, offsets descending)."""
    return _run(img, thinning=False)


def taxicab_thin(img: GrayImage) -> PixelLists:
    """Complement entrance points of every pixel, sorted by ascending value.

    Points are labelled ``(v - 1, -d)`` where ``d`` is the distance to the
    nearest pixel of value ``v`` that is closer than any brighter pixel.
    """
    return _run(img, thinning=True)

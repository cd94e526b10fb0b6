"""Approximate positive and complement entrance points under the Euclidean distance.

Each value runs a best-first search over 8-connected pixels. Queue entries
are ``(pixel, root, squared distance)``; a pixel inherits the root of the
neighbor that reached it. Pixels cut off from their nearest root's digital
Voronoi region ("debris" pixels) are claimed by a slightly farther root, so
offsets may overshoot the true distance by less than one unit.

Priorities are exact squared distances, ties broken by insertion order.
"""

from __future__ import annotations

import numba as nb
import numpy as np

from ._arrays import group_by_pixel, grow, levels
from .core import GrayImage, Metric, PixelLists

_INF = np.iinfo(np.int64).max

_DX = np.array([-1, 0, 1, -1, 1, -1, 0, 1], dtype=np.int64)
_DY = np.array([-1, -1, -1, 0, 0, 1, 1, 1], dtype=np.int64)


@nb.njit(cache=True)
def _heap_less(key, seq, i, j):
    return key[i] < key[j] or (key[i] == key[j] and seq[i] < seq[j])


@nb.njit(cache=True)
def _heap_swap(key, seq, pix, root, i, j):
    t = key[i]
    key[i] = key[j]
    key[j] = t
    t = seq[i]
    seq[i] = seq[j]
    seq[j] = t
    t = pix[i]
    pix[i] = pix[j]
    pix[j] = t
    t = root[i]
    root[i] = root[j]
    root[j] = t


@nb.njit(cache=True)
def _heap_push(key, seq, pix, root, size, k, s, p, r):
    i = size
    key[i] = k
    seq[i] = s
    pix[i] = p
    root[i] = r
    while i > 0:
        parent = (i - 1) >> 1
        if _heap_less(key, seq, i, parent):
            _heap_swap(key, seq, pix, root, i, parent)
            i = parent
        else:
            break
    return size + 1


@nb.njit(cache=True)
def _heap_pop(key, seq, pix, root, size):
    """Move the minimum to slot ``size - 1`` and restore the heap on the rest."""
    size -= 1
    _heap_swap(key, seq, pix, root, 0, size)
    i = 0
    while True:
        left = 2 * i + 1
        if left >= size:
            break
        child = left
        right = left + 1
        if right < size and _heap_less(key, seq, right, left):
            child = right
        if _heap_less(key, seq, child, i):
            _heap_swap(key, seq, pix, root, i, child)
            i = child
        else:
            break
    return size


@nb.njit(cache=True)
def _best_first_passes(flat, width, height, values, order, starts, thinning, dx, dy):
    n = width * height
    k_count = values.shape[0]
    best = np.full(n, _INF, dtype=np.int64)
    visited = np.full(n, -1, dtype=np.int64)  # value index at which the pixel was settled

    qcap = 9 * n + 1
    key = np.empty(qcap, dtype=np.int64)
    seq = np.empty(qcap, dtype=np.int64)
    pix = np.empty(qcap, dtype=np.int64)
    root = np.empty(qcap, dtype=np.int64)

    cap = max(16, 2 * n)
    log_p = np.empty(cap, dtype=np.int64)
    log_v = np.empty(cap, dtype=np.int64)
    log_o = np.empty(cap, dtype=np.int64)
    count = 0
    pushes = 0
    pops = 0
    max_queue = 0
    order_violations = 0

    if thinning:
        k_first, k_stop, k_step = k_count - 1, 0, -1
        sign = -1
    else:
        k_first, k_stop, k_step = 0, k_count, 1
        sign = 1

    for k in range(k_first, k_stop, k_step):
        v = values[k]
        label = v - 1 if thinning else v
        size = 0
        s = 0
        for i in range(starts[k], starts[k + 1]):
            p = order[i]
            size = _heap_push(key, seq, pix, root, size, 0, s, p, p)
            s += 1
            pushes += 1
        if size > max_queue:
            max_queue = size
        last_key = 0
        while size > 0:
            size = _heap_pop(key, seq, pix, root, size)
            t = key[size]
            p = pix[size]
            r = root[size]
            pops += 1
            if t < last_key:
                order_violations += 1
            last_key = t
            if t >= best[p]:
                continue
            best[p] = t
            visited[p] = k
            if count + 1 > log_p.shape[0]:
                log_p = grow(log_p, count + 1)
                log_v = grow(log_v, count + 1)
                log_o = grow(log_o, count + 1)
            log_p[count] = p
            log_v[count] = label
            log_o[count] = sign * t
            count += 1
            x = p % width
            y = p // width
            rx = r % width
            ry = r // width
            for j in range(8):
                qx = x + dx[j]
                qy = y + dy[j]
                if qx < 0 or qx >= width or qy < 0 or qy >= height:
                    continue
                q = qy * width + qx
                if visited[q] == k:
                    continue
                ex = qx - rx
                ey = qy - ry
                dq = ex * ex + ey * ey
                # an entry that cannot beat the pixel's current list would be
                # discarded on pop; skipping it leaves the output unchanged
                if dq >= best[q]:
                    continue
                if size >= qcap:
                    raise RuntimeError("priority queue exceeded its capacity")
                size = _heap_push(key, seq, pix, root, size, dq, s, q, r)
                s += 1
                pushes += 1
                if size > max_queue:
                    max_queue = size

    indptr, pv, po = group_by_pixel(log_p, log_v, log_o, count, n, thinning)
    return indptr, pv, po, pushes, pops, max_queue, order_violations


def _run(img: GrayImage, thinning: bool) -> PixelLists:
    values, order, starts = levels(img.flat)
    indptr, pv, po, pushes, pops, max_queue, bad_order = _best_first_passes(
        img.flat, img.width, img.height, values, order, starts, thinning, _DX, _DY
    )
    counters = {
        "pushes": int(pushes),
        "pops": int(pops),
        "max_queue": int(max_queue),
        "pop_order_violations": int(bad_order),
        "num_values": len(values),
    }
    return PixelLists(Metric.EUCLIDEAN, img.width, img.height, indptr, pv, po, counters)


def euclidean_thicken(img: GrayImage) -> PixelLists:
    """Approximate positive entrance points; offsets are squared distances."""
    return _run(img, thinning=False)


def euclidean_thin(img: GrayImage) -> PixelLists:
    """Approximate complement entrance points ``(v - 1, -d^2)``, ascending by value.

    The seed's own ``(v - 1, 0)`` point is recorded when its zero-distance
    entry is popped, which also lets the seed expand its neighbors.
    """
    return _run(img, thinning=True)

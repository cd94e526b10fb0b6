"""Array helpers shared by the compiled passes."""

import numba as nb
import numpy as np


@nb.njit(cache=True)
def grow(arr, need):
    if need <= arr.shape[0]:
        return arr
    cap = arr.shape[0] * 2
    while cap < need:
        cap *= 2
    out = np.empty(cap, dtype=arr.dtype)
    out[: arr.shape[0]] = arr
    return out


@nb.njit(cache=True)
def group_by_pixel(pix, vals, offs, count, n, reverse):
    """Counting sort of a ``(pixel, value, offset)`` log into compressed rows.

    Log order is kept within each pixel, or reversed when ``reverse`` is set.
    """
    indptr = np.zeros(n + 1, dtype=np.int64)
    for i in range(count):
        indptr[pix[i] + 1] += 1
    for i in range(n):
        indptr[i + 1] += indptr[i]
    fill = indptr[:-1].copy()
    out_v = np.empty(count, dtype=np.int64)
    out_o = np.empty(count, dtype=np.int64)
    for i in range(count):
        p = pix[i]
        j = fill[p]
        fill[p] = j + 1
        out_v[j] = vals[i]
        out_o[j] = offs[i]
    if reverse:
        for p in range(n):
            lo = indptr[p]
            hi = indptr[p + 1] - 1
            while lo < hi:
                t = out_v[lo]
                out_v[lo] = out_v[hi]
                out_v[hi] = t
                t = out_o[lo]
                out_o[lo] = out_o[hi]
                out_o[hi] = t
                lo += 1
                hi -= 1
    return indptr, out_v, out_o


def levels(flat):
    """Value set, and pixels grouped by value: ``order[starts[k]:starts[k+1]]``.

    Pixels inside a group keep row-major order.
    """
    values, inverse = np.unique(flat, return_inverse=True)
    order = np.argsort(inverse, kind="stable").astype(np.int64)
    starts = np.zeros(len(values) + 1, dtype=np.int64)
    np.cumsum(np.bincount(inverse, minlength=len(values)), out=starts[1:])
    return values.astype(np.int64), order, starts

"""Synthetic test images: uniform noise and the two worst-case families."""

from __future__ import annotations

import numpy as np

from .core import GrayImage


def _check_dims(width: int, height: int, num_values: int) -> None:
    if width < 1 or height < 1:
        raise ValueError(f"image dimensions must be positive, got {width}x{height}")
    if num_values < 1:
        raise ValueError(f"num_values must be at least 1, got {num_values}")


def gen_random(width: int, height: int, num_values: int, seed: int) -> GrayImage:
    """Independent uniform values in ``0..num_values-1``.

    Uses numpy's PCG64 bit generator, whose stream is fixed across platforms.
    """
    _check_dims(width, height, num_values)
    rng = np.random.Generator(np.random.PCG64(seed))
    return GrayImage(rng.integers(0, num_values, size=(height, width), dtype=np.int64))


def gen_centralized(width: int, height: int, num_values: int) -> GrayImage:
    """Bright center fading to dark edges.

    Ring ``r`` (Chebyshev distance to the border) has value ``r + 1``, except
    the four image corners which are 0; values are clamped at
    ``num_values - 1``.
    """
    _check_dims(width, height, num_values)
    ys, xs = np.indices((height, width))
    dx = np.minimum(xs, width - 1 - xs)
    dy = np.minimum(ys, height - 1 - ys)
    vals = np.minimum(dx + dy, np.minimum(dx, dy) + 1)
    return GrayImage(np.minimum(vals, num_values - 1))


def gen_diagonal(width: int, height: int, num_values: int) -> GrayImage:
    """Constant along diagonals ``x - y = c``; neighboring diagonals differ by 1.

    Values follow a triangle wave in ``x - y`` with period
    ``2 * (num_values - 1)``, zero on the diagonal through ``(1, 0)``.
    """
    _check_dims(width, height, num_values)
    if num_values == 1:
        return GrayImage(np.zeros((height, width), dtype=np.int64))
    amp = num_values - 1
    ys, xs = np.indices((height, width))
    phase = np.mod(xs - ys - 1 + amp, 2 * amp)
    return GrayImage(np.abs(phase - amp))

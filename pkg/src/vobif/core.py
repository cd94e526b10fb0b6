"""Domain types for value-offset bifiltrations of grayscale images.

Coordinates follow the mathematical convention: ``x`` grows to the right and
``y`` grows upward, so pixel ``(0, 0)`` is the bottom-left corner. Pixel
arrays are stored with row 0 at the bottom.

Offsets are kept exact. Taxicab offsets are plain signed integers; Euclidean
offsets are signed *squared* distances, so ``-13`` under the Euclidean metric
means ``-sqrt(13)``. Ordering by the signed integer agrees with ordering by
the real value because ``s * m -> s * sqrt(m)`` is monotone.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_PIXEL_VALUE = 65535

# Sentinel used by the array kernels for a negative-infinite offset. It never
# escapes into the public Offset type.
NEG_INF_CODE = np.iinfo(np.int64).min


class Metric(str, enum.Enum):
    TAXICAB = "taxicab"
    EUCLIDEAN = "euclidean"

    @classmethod
    def parse(cls, name: "str | Metric") -> "Metric":
        if isinstance(name, Metric):
            return name
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown metric {name!r}; expected 'taxicab' or 'euclidean'") from None


class Order(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


class MetricMismatchError(ValueError):
    """Raised when offsets from different metrics are combined."""


@dataclass(frozen=True)
class Offset:
    """An exact offset ``t``; either finite or negative infinity.

    ``magnitude`` is the distance itself for taxicab and the squared distance
    for Euclidean.
    """

    metric: Metric
    sign: int = 0
    magnitude: int = 0
    neg_inf: bool = False

    def __post_init__(self) -> None:
        if self.neg_inf:
            if self.sign or self.magnitude:
                raise ValueError("negative infinity carries no sign or magnitude")
            return
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign}")
        if self.magnitude < 0:
            raise ValueError("magnitude must be non-negative")
        if (self.sign == 0) != (self.magnitude == 0):
            raise ValueError("sign is zero exactly when magnitude is zero")

    @classmethod
    def finite(cls, signed: int, metric: Metric | str) -> "Offset":
        """Build a finite offset from its signed code (``sign * magnitude``)."""
        signed = int(signed)
        return cls(Metric.parse(metric), (signed > 0) - (signed < 0), abs(signed))

    @classmethod
    def negative_infinity(cls, metric: Metric | str) -> "Offset":
        return cls(Metric.parse(metric), neg_inf=True)

    @classmethod
    def from_code(cls, code: int, metric: Metric | str) -> "Offset":
        """Inverse of :attr:`code` (the kernels' int64 representation)."""
        if code == NEG_INF_CODE:
            return cls.negative_infinity(metric)
        return cls.finite(code, metric)

    @property
    def signed(self) -> int:
        if self.neg_inf:
            raise ValueError("negative infinity has no finite signed value")
        return self.sign * self.magnitude

    @property
    def code(self) -> int:
        return NEG_INF_CODE if self.neg_inf else self.sign * self.magnitude

    @property
    def real(self) -> float:
        if self.neg_inf:
            return -math.inf
        if self.metric is Metric.EUCLIDEAN:
            return self.sign * math.sqrt(self.magnitude)
        return float(self.sign * self.magnitude)

    def _key(self, other: "Offset") -> tuple[tuple[int, int], tuple[int, int]]:
        if not isinstance(other, Offset):
            return NotImplemented
        if self.metric is not other.metric:
            raise MetricMismatchError(
                f"cannot compare {self.metric.value} and {other.metric.value} offsets"
            )
        a = (0, 0) if self.neg_inf else (1, self.sign * self.magnitude)
        b = (0, 0) if other.neg_inf else (1, other.sign * other.magnitude)
        return a, b

    def __lt__(self, other: "Offset") -> bool:
        a, b = self._key(other)
        return a < b

    def __le__(self, other: "Offset") -> bool:
        a, b = self._key(other)
        return a <= b

    def __gt__(self, other: "Offset") -> bool:
        a, b = self._key(other)
        return a > b

    def __ge__(self, other: "Offset") -> bool:
        a, b = self._key(other)
        return a >= b

    def __str__(self) -> str:
        if self.neg_inf:
            return "-inf"
        if self.metric is Metric.EUCLIDEAN and self.magnitude:
            return ("-" if self.sign < 0 else "") + f"s{self.magnitude}"
        return str(self.sign * self.magnitude)


@dataclass(frozen=True)
class Bigrade:
    value: int
    offset: Offset

    def __post_init__(self) -> None:
        if not 0 <= self.value <= MAX_PIXEL_VALUE:
            raise ValueError(f"bigrade value {self.value} outside [0, {MAX_PIXEL_VALUE}]")

    @property
    def metric(self) -> Metric:
        return self.offset.metric

    def __str__(self) -> str:
        return f"({self.value},{self.offset})"


def bigrade(value: int, offset: int | float, metric: Metric | str = Metric.TAXICAB) -> Bigrade:
    """Shorthand constructor; ``offset`` is a signed code or ``-math.inf``."""
    if isinstance(offset, float):
        if offset == -math.inf:
            return Bigrade(int(value), Offset.negative_infinity(metric))
        if not offset.is_integer():
            raise ValueError("finite offsets must be integral codes")
    return Bigrade(int(value), Offset.finite(int(offset), metric))


def bigrade_compare(a: Bigrade, b: Bigrade) -> Order:
    """Compare two bigrades under the componentwise partial order."""
    if a.metric is not b.metric:
        raise MetricMismatchError("bigrades carry offsets of different metrics")
    v_le = a.value <= b.value
    v_ge = a.value >= b.value
    t_le = a.offset <= b.offset
    t_ge = a.offset >= b.offset
    if v_le and v_ge and t_le and t_ge:
        return Order.EQUAL
    if v_le and t_le:
        return Order.LESS
    if v_ge and t_ge:
        return Order.GREATER
    return Order.INCOMPARABLE


def precedes(a: Bigrade, b: Bigrade) -> bool:
    """``a`` is less than or equal to ``b`` in the partial order."""
    return bigrade_compare(a, b) in (Order.LESS, Order.EQUAL)


def minimal_points(points: Iterable[Bigrade]) -> tuple[Bigrade, ...]:
    """Return the minimal elements, sorted by ascending value.

    The result is a staircase: values strictly increase while offsets
    strictly decrease.
    """
    pts = list(points)
    if not pts:
        return ()
    metric = pts[0].metric
    if any(p.metric is not metric for p in pts):
        raise MetricMismatchError("bigrades carry offsets of different metrics")
    pts.sort(key=lambda b: (b.value, b.offset.code))
    out: list[Bigrade] = []
    for b in pts:
        if not out or b.offset < out[-1].offset:
            out.append(b)
    return tuple(out)


def maximal_points(points: Iterable[Bigrade]) -> tuple[Bigrade, ...]:
    """Return the maximal elements, sorted by ascending value."""
    pts = list(points)
    if not pts:
        return ()
    pts.sort(key=lambda b: (-b.value, -b.offset.code))
    out: list[Bigrade] = []
    for b in pts:
        if not out or b.offset > out[-1].offset:
            out.append(b)
    out.reverse()
    return tuple(out)


@dataclass(frozen=True)
class _Staircase:
    points: tuple[Bigrade, ...] = ()

    def __iter__(self) -> Iterator[Bigrade]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Bigrade:
        return self.points[i]

    def __str__(self) -> str:
        return " ".join(str(b) for b in self.points)

    def _check_staircase(self) -> None:
        for a, b in zip(self.points, self.points[1:]):
            if a.metric is not b.metric:
                raise MetricMismatchError("staircase mixes metrics")
            if not a.value < b.value:
                raise ValueError(f"staircase values not increasing at {a} -> {b}")
            if not a.offset > b.offset:
                raise ValueError(f"staircase offsets not decreasing at {a} -> {b}")


@dataclass(frozen=True)
class EntranceSet(_Staircase):
    """Minimal bigrades at which a pixel is present, ending in ``(max V, -inf)``."""

    def validate(self, max_value: int | None = None) -> None:
        self._check_staircase()
        if not self.points:
            raise ValueError("entrance set is empty")
        last = self.points[-1]
        if not last.offset.neg_inf:
            raise ValueError("entrance set must end with a negative-infinite offset")
        if max_value is not None and last.value != max_value:
            raise ValueError(f"terminal bigrade has value {last.value}, expected {max_value}")


@dataclass(frozen=True)
class ComplementEntranceSet(_Staircase):
    """Maximal bigrades with ``t <= 0`` at which a pixel is absent."""

    def validate(self) -> None:
        self._check_staircase()
        for b in self.points:
            if b.offset.neg_inf or b.offset.sign > 0:
                raise ValueError(f"complement entrance point {b} must have finite t <= 0")


@dataclass(frozen=True, eq=False)
class GrayImage:
    """A rectangular grid of integer intensities.

    ``pixels[y, x]`` is the value at ``(x, y)`` with ``y = 0`` the bottom row.
    """

    pixels: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.pixels)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"image must be a non-empty 2-D grid, got shape {arr.shape}")
        if arr.dtype.kind not in "iub":
            raise ValueError(f"pixel values must be integers, got dtype {arr.dtype}")
        if arr.min() < 0 or arr.max() > MAX_PIXEL_VALUE:
            raise ValueError(f"pixel values must lie in [0, {MAX_PIXEL_VALUE}]")
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @classmethod
    def from_rows(cls, rows_top_down: Sequence[Sequence[int]]) -> "GrayImage":
        """Build from rows listed top to bottom, as an image is usually drawn."""
        return cls(np.asarray(rows_top_down, dtype=np.int64)[::-1])

    @classmethod
    def from_flat(cls, width: int, height: int, values: Sequence[int]) -> "GrayImage":
        """Build from a row-major list starting at the bottom row."""
        arr = np.asarray(values, dtype=np.int64)
        if arr.size != width * height:
            raise ValueError(f"expected {width * height} values, got {arr.size}")
        return cls(arr.reshape(height, width))

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def num_pixels(self) -> int:
        return int(self.pixels.size)

    @property
    def flat(self) -> np.ndarray:
        """Row-major values, bottom row first; index ``y * width + x``."""
        return self.pixels.reshape(-1)

    def value_set(self) -> np.ndarray:
        return np.unique(self.pixels)

    def __getitem__(self, xy: tuple[int, int]) -> int:
        x, y = xy
        self.check_coord(x, y)
        return int(self.pixels[y, x])

    def check_coord(self, x: int, y: int) -> None:
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(f"pixel ({x}, {y}) outside {self.width}x{self.height} image")

    def coords(self) -> Iterator[tuple[int, int]]:
        for y in range(self.height):
            for x in range(self.width):
                yield x, y

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(np.array_equal(self.pixels, other.pixels))

    def __hash__(self) -> int:
        return hash((self.pixels.shape, self.pixels.tobytes()))


def sublevel_set(img: GrayImage, v: int) -> frozenset[tuple[int, int]]:
    """Pixels with value at most ``v``."""
    ys, xs = np.nonzero(img.pixels <= v)
    return frozenset(zip(xs.tolist(), ys.tolist()))


@dataclass(eq=False)
class BifiltrationResult:
    """Per-pixel entrance sets in compressed form.

    Entrance points of pixel ``i = y * width + x`` occupy
    ``point_values[indptr[i]:indptr[i+1]]`` and the matching offset codes.
    """

    metric: Metric
    width: int
    height: int
    values: np.ndarray
    indptr: np.ndarray
    point_values: np.ndarray
    point_offsets: np.ndarray
    exact: bool
    counters: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.metric = Metric.parse(self.metric)
        self.values = np.asarray(self.values, dtype=np.int64)
        self.indptr = np.asarray(self.indptr, dtype=np.int64)
        self.point_values = np.asarray(self.point_values, dtype=np.int64)
        self.point_offsets = np.asarray(self.point_offsets, dtype=np.int64)
        if self.indptr.shape != (self.width * self.height + 1,):
            raise ValueError("indptr length must be number of pixels + 1")

    @property
    def num_pixels(self) -> int:
        return self.width * self.height

    @property
    def total_bigrades(self) -> int:
        return int(self.indptr[-1])

    def sizes(self) -> np.ndarray:
        return np.diff(self.indptr)

    def entrance_set(self, x: int, y: int) -> EntranceSet:
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(f"pixel ({x}, {y}) outside {self.width}x{self.height} result")
        i = y * self.width + x
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return EntranceSet(tuple(
            Bigrade(int(v), Offset.from_code(int(c), self.metric))
            for v, c in zip(self.point_values[lo:hi], self.point_offsets[lo:hi])
        ))

    def __iter__(self) -> Iterator[tuple[tuple[int, int], EntranceSet]]:
        for y in range(self.height):
            for x in range(self.width):
                yield (x, y), self.entrance_set(x, y)

    def same_sets(self, other: "BifiltrationResult") -> bool:
        """Entrance sets agree bigrade for bigrade (flags and counters ignored)."""
        return (
            self.metric is other.metric
            and self.width == other.width
            and self.height == other.height
            and np.array_equal(self.values, other.values)
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.point_values, other.point_values)
            and np.array_equal(self.point_offsets, other.point_offsets)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BifiltrationResult):
            return NotImplemented
        return self.same_sets(other) and self.exact == other.exact

    @classmethod
    def from_sets(
        cls,
        metric: Metric | str,
        width: int,
        height: int,
        values: Sequence[int],
        sets: Sequence[Iterable[Bigrade]],
        exact: bool,
    ) -> "BifiltrationResult":
        """Pack per-pixel bigrade lists (row-major, bottom row first)."""
        if len(sets) != width * height:
            raise ValueError("need one entrance set per pixel")
        indptr = [0]
        pv: list[int] = []
        po: list[int] = []
        for s in sets:
            for b in s:
                pv.append(b.value)
                po.append(b.offset.code)
            indptr.append(len(pv))
        return cls(Metric.parse(metric), width, height, np.asarray(values), np.asarray(indptr),
                   np.asarray(pv, dtype=np.int64), np.asarray(po, dtype=np.int64), exact)

    def validate(self) -> None:
        """Check every per-pixel list is a staircase ending in ``(max V, -inf)``."""
        vmax = int(self.values[-1])
        for i in range(self.num_pixels):
            lo, hi = self.indptr[i], self.indptr[i + 1]
            vals = self.point_values[lo:hi]
            offs = self.point_offsets[lo:hi]
            if hi == lo:
                raise ValueError(f"pixel {i} has an empty entrance set")
            if np.any(vals[1:] <= vals[:-1]) or np.any(offs[1:] >= offs[:-1]):
                raise ValueError(f"pixel {i} entrance set is not a staircase")
            if offs[-1] != NEG_INF_CODE or vals[-1] != vmax:
                raise ValueError(f"pixel {i} entrance set does not end in (max V, -inf)")


@dataclass(eq=False)
class PixelLists:
    """Per-pixel bigrade lists from a single thickening or thinning pass.

    Same compressed layout as :class:`BifiltrationResult`; each list is
    sorted by ascending value. ``counters`` holds the pass's work counters.
    """

    metric: Metric
    width: int
    height: int
    indptr: np.ndarray
    point_values: np.ndarray
    point_offsets: np.ndarray
    counters: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.metric = Metric.parse(self.metric)
        self.indptr = np.asarray(self.indptr, dtype=np.int64)
        self.point_values = np.asarray(self.point_values, dtype=np.int64)
        self.point_offsets = np.asarray(self.point_offsets, dtype=np.int64)
        if self.indptr.shape != (self.width * self.height + 1,):
            raise ValueError("indptr length must be number of pixels + 1")

    def get(self, x: int, y: int) -> tuple[Bigrade, ...]:
        i = y * self.width + x
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return tuple(
            Bigrade(int(v), Offset.from_code(int(c), self.metric))
            for v, c in zip(self.point_values[lo:hi], self.point_offsets[lo:hi])
        )

    def sizes(self) -> np.ndarray:
        return np.diff(self.indptr)

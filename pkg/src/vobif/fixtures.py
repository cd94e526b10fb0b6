"""Small hand-transcribed images with known answers, shared by the tests.

Grids are written top row first, as they appear on screen; the loaded
images use the y-up convention (``y = 0`` is the last row listed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .core import Bigrade, GrayImage, Metric, bigrade

FIG1_ROWS = [
    [0, 1, 2, 3],
    [1, 1, 2, 3],
    [2, 2, 2, 0],
    [1, 3, 1, 1],
]

FIG3_ROWS = [
    [4, 0, 2, 0, 4, 6],
    [6, 2, 6, 0, 4, 1],
    [4, 1, 1, 2, 0, 6],
    [3, 5, 5, 0, 4, 6],
    [1, 3, 1, 2, 4, 5],
    [2, 2, 1, 1, 6, 1],
]

FIG5_ROWS = [
    [0, 1, 3],
    [2, 1, 0],
    [3, 2, 1],
]

FIG9A_ROWS = [
    [0, 1, 1, 1, 1, 0],
    [1, 2, 2, 2, 2, 1],
    [1, 2, 3, 3, 2, 1],
    [1, 2, 3, 3, 2, 1],
    [1, 2, 2, 2, 2, 1],
    [0, 1, 1, 1, 1, 0],
]

FIG9B_ROWS = [
    [0, 1, 2, 3, 2, 1],
    [1, 2, 3, 2, 1, 0],
    [2, 3, 2, 1, 0, 1],
    [3, 2, 1, 0, 1, 2],
    [2, 1, 0, 1, 2, 3],
    [1, 0, 1, 2, 3, 2],
]

_ALL16 = frozenset((x, y) for y in range(4) for x in range(4))


def _but(*missing: tuple[int, int]) -> frozenset:
    return _ALL16 - frozenset(missing)


# Pixels present in the taxicab bifiltration of FIG1 at each (v, t) with
# -3 <= t <= 3. Frames not listed are empty.
_FIG1_FRAMES: dict[tuple[int, int], frozenset] = {
    (0, 3): _ALL16,
    (0, 2): _but((0, 0), (1, 0)),
    (0, 1): frozenset({(0, 2), (0, 3), (1, 3), (3, 0), (3, 1), (3, 2), (2, 1)}),
    (0, 0): frozenset({(0, 3), (3, 1)}),
    (1, 3): _ALL16,
    (1, 2): _ALL16,
    (1, 1): _but((3, 3)),
    (1, 0): frozenset({(0, 2), (1, 2), (0, 3), (1, 3), (0, 0), (2, 0), (3, 0), (3, 1)}),
    (1, -1): frozenset({(0, 3), (3, 0)}),
    (2, 3): _ALL16,
    (2, 2): _ALL16,
    (2, 1): _ALL16,
    (2, 0): _but((1, 0), (3, 2), (3, 3)),
    (2, -1): frozenset({(0, 2), (1, 2), (0, 3), (1, 3), (0, 1), (2, 1), (3, 0)}),
    (2, -2): frozenset({(0, 2), (0, 3)}),
    **{(3, t): _ALL16 for t in range(-3, 4)},
}


def fig1_frames() -> dict[tuple[int, int], frozenset]:
    """All 28 frames ``(v, t)`` for ``v`` in 0..3 and ``t`` in -3..3."""
    return {
        (v, t): _FIG1_FRAMES.get((v, t), frozenset())
        for v in range(4) for t in range(-3, 4)
    }


@dataclass(frozen=True)
class PaperFixture:
    name: str
    image: GrayImage
    note: str
    # (x, y, metric) -> expected entrance / complement points
    entrance_sets: dict = field(default_factory=dict)
    complement_sets: dict = field(default_factory=dict)
    # (v, t) -> pixels present, taxicab
    frames: dict = field(default_factory=dict)
    # metric -> [(x, y) -> first positive entrance point from the value-0 search]
    first_points: dict = field(default_factory=dict)
    # (x, y) -> pixel's index label in the drawing
    labels: dict = field(default_factory=dict)

    @property
    def data_file(self) -> str:
        return f"{self.name}.pgm"


def _pts(metric: Metric, *pairs) -> tuple[Bigrade, ...]:
    return tuple(bigrade(v, t, metric) for v, t in pairs)


def _fig1() -> PaperFixture:
    tx = Metric.TAXICAB
    return PaperFixture(
        name="fig1",
        image=GrayImage.from_rows(FIG1_ROWS),
        note="4x4 image with values 0..3 and its presence frames for t in -3..3",
        entrance_sets={
            (3, 3, tx): _pts(tx, (0, 2), (2, 1), (3, float("-inf"))),
            (0, 3, tx): _pts(tx, (0, 0), (1, -1), (2, -2), (3, float("-inf"))),
        },
        frames=fig1_frames(),
    )


def _fig3() -> PaperFixture:
    tx, eu = Metric.TAXICAB, Metric.EUCLIDEAN
    neg = float("-inf")
    return PaperFixture(
        name="fig3",
        image=GrayImage.from_rows(FIG3_ROWS),
        note="6x6 image with values 0..6; worked entrance and complement sets at (0, 0)",
        entrance_sets={
            (0, 0, tx): _pts(tx, (0, 5), (1, 1), (2, -1), (3, -2), (5, -3), (6, neg)),
            (0, 0, eu): _pts(eu, (0, 13), (1, 1), (2, -1), (3, -4), (5, -13), (6, neg)),
        },
        complement_sets={
            (0, 0, tx): _pts(tx, (1, 0), (2, -2), (4, -3), (5, -4)),
            (0, 0, eu): _pts(eu, (1, 0), (2, -2), (4, -5), (5, -16)),
        },
    )


def _fig5() -> PaperFixture:
    eu = Metric.EUCLIDEAN
    labels = {(x, 2 - r): 3 * r + x for r in range(3) for x in range(3)}
    return PaperFixture(
        name="fig5",
        image=GrayImage.from_rows(FIG5_ROWS),
        note="3x3 image for the Euclidean best-first search; labels count from the top-left",
        first_points={
            eu: {
                (0, 2): bigrade(0, 0, eu),
                (2, 1): bigrade(0, 0, eu),
                (1, 2): bigrade(0, 1, eu),
                (1, 1): bigrade(0, 1, eu),
            },
        },
        labels=labels,
    )


def _fig9(name: str, rows, note: str) -> PaperFixture:
    return PaperFixture(name=name, image=GrayImage.from_rows(rows), note=note)


_BUILDERS = {
    "fig1": _fig1,
    "fig3": _fig3,
    "fig5": _fig5,
    "fig9a": lambda: _fig9("fig9a", FIG9A_ROWS, "6x6 centralized worst case, 4 values"),
    "fig9b": lambda: _fig9("fig9b", FIG9B_ROWS, "6x6 diagonal worst case, 4 values"),
}

FIXTURE_NAMES = tuple(_BUILDERS)


def fixture(name: str) -> PaperFixture:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}") from None


def fixture_path(name: str):
    """Path to the shipped PGM copy of a fixture."""
    if name not in _BUILDERS:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    return resources.files("vobif") / "data" / f"{name}.pgm"

import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vobif import (
    Bigrade,
    EntranceSet,
    GrayImage,
    Metric,
    MetricMismatchError,
    Offset,
    Order,
    bigrade,
    bigrade_compare,
    fixture,
    maximal_points,
    minimal_points,
    precedes,
    sublevel_set,
)
from vobif.core import ComplementEntranceSet
from strategies import images

NEG = -math.inf

codes = st.one_of(st.integers(-400, 400), st.just(NEG))
grades = st.builds(bigrade, st.integers(0, 12), codes)


def test_compare_examples():
    assert bigrade_compare(bigrade(0, 5), bigrade(1, 1)) is Order.INCOMPARABLE
    assert bigrade_compare(bigrade(2, -1), bigrade(2, 0)) is Order.LESS
    assert bigrade_compare(bigrade(2, 0), bigrade(2, -1)) is Order.GREATER
    assert bigrade_compare(bigrade(3, -2), bigrade(3, -2)) is Order.EQUAL


def test_compare_rejects_mixed_metrics():
    with pytest.raises(MetricMismatchError):
        bigrade_compare(bigrade(0, 1, "taxicab"), bigrade(0, 1, "euclidean"))
    with pytest.raises(MetricMismatchError):
        Offset.finite(1, "taxicab") < Offset.finite(2, "euclidean")


def test_minimal_points_examples():
    pts = [bigrade(2, 0), bigrade(2, -1), bigrade(0, 5), bigrade(1, 1),
           bigrade(3, -2), bigrade(5, -3), bigrade(6, NEG)]
    want = (bigrade(0, 5), bigrade(1, 1), bigrade(2, -1), bigrade(3, -2), bigrade(5, -3), bigrade(6, NEG))
    assert minimal_points(pts) == want
    assert minimal_points([]) == ()
    assert minimal_points([bigrade(1, 0), bigrade(1, 0)]) == (bigrade(1, 0),)


def test_offset_invariants():
    with pytest.raises(ValueError):
        Offset(Metric.TAXICAB, sign=1, magnitude=0)
    with pytest.raises(ValueError):
        Offset(Metric.TAXICAB, sign=0, magnitude=3)
    ninf = Offset.negative_infinity("euclidean")
    assert ninf < Offset.finite(-10**12, "euclidean")
    assert str(ninf) == "-inf"
    assert str(Offset.finite(-13, "euclidean")) == "-s13"
    assert str(Offset.finite(0, "euclidean")) == "0"
    assert str(Offset.finite(-3, "taxicab")) == "-3"
    assert Offset.finite(-13, "euclidean").real == pytest.approx(-math.sqrt(13))


def test_offset_order_matches_reals():
    rng = random.Random(20240611)
    top = 2 ** 40
    for _ in range(1_000_000):
        a = rng.randint(-top, top)
        b = rng.randint(-top, top)
        oa = Offset.finite(a, Metric.EUCLIDEAN)
        ob = Offset.finite(b, Metric.EUCLIDEAN)
        ra = math.copysign(math.sqrt(abs(a)), a)
        rb = math.copysign(math.sqrt(abs(b)), b)
        if ra != rb:
            assert (oa < ob) == (ra < rb)
        else:
            assert a == b


@given(grades, grades)
def test_compare_is_antisymmetric(a, b):
    ab = bigrade_compare(a, b)
    ba = bigrade_compare(b, a)
    flip = {Order.LESS: Order.GREATER, Order.GREATER: Order.LESS,
            Order.EQUAL: Order.EQUAL, Order.INCOMPARABLE: Order.INCOMPARABLE}
    assert ba is flip[ab]
    assert (ab is Order.EQUAL) == (a == b)


@given(grades, grades, grades)
def test_precedes_is_transitive(a, b, c):
    assert precedes(a, a)
    if precedes(a, b) and precedes(b, c):
        assert precedes(a, c)


@given(st.lists(grades, max_size=30))
def test_minimal_points_antichain_and_idempotent(pts):
    m = minimal_points(pts)
    assert minimal_points(m) == m
    for i, a in enumerate(m):
        for b in m[i + 1:]:
            assert bigrade_compare(a, b) is Order.INCOMPARABLE
    # every input point is dominated by some minimal point
    for p in pts:
        assert any(precedes(q, p) for q in m)


@given(st.lists(grades, max_size=30))
def test_maximal_points_antichain(pts):
    m = maximal_points(pts)
    for i, a in enumerate(m):
        for b in m[i + 1:]:
            assert bigrade_compare(a, b) is Order.INCOMPARABLE
    for p in pts:
        assert any(precedes(p, q) for q in m)


def test_staircase_validation():
    EntranceSet((bigrade(0, 2), bigrade(1, NEG))).validate(max_value=1)
    with pytest.raises(ValueError):
        EntranceSet((bigrade(0, 2), bigrade(1, 3))).validate()
    with pytest.raises(ValueError):
        EntranceSet((bigrade(0, 2),)).validate()
    with pytest.raises(ValueError):
        ComplementEntranceSet((bigrade(0, 1),)).validate()


def test_gray_image_checks():
    with pytest.raises(ValueError):
        GrayImage(np.zeros((0, 3), dtype=int))
    with pytest.raises(ValueError):
        GrayImage(np.array([[70000]]))
    with pytest.raises(ValueError):
        GrayImage(np.array([[-1]]))
    with pytest.raises(ValueError):
        GrayImage(np.array([[0.5]]))
    img = GrayImage.from_rows([[1, 2], [3, 4]])
    assert img[0, 0] == 3 and img[1, 1] == 2
    assert img == GrayImage.from_flat(2, 2, [3, 4, 1, 2])
    assert list(img.value_set()) == [1, 2, 3, 4]
    with pytest.raises(IndexError):
        img[2, 0]
    assert GrayImage(np.array([[65535, 0]], dtype=np.uint16)).width == 2


def test_sublevel_set_examples():
    img = fixture("fig1").image
    assert sublevel_set(img, 0) == {(0, 3), (3, 1)}
    assert sublevel_set(img, 3) == set(img.coords())
    assert sublevel_set(img, -1) == set()


@given(images(), st.integers(-1, 41), st.integers(-1, 41))
def test_sublevel_sets_nest(img, v0, v1):
    lo, hi = sorted((v0, v1))
    assert sublevel_set(img, lo) <= sublevel_set(img, hi)

import math

import numpy as np
import pytest
from hypothesis import given

from vobif import (
    GrayImage,
    PixelLists,
    bigrade,
    compute_bifiltration,
    convert,
    fixture,
    gen_centralized,
    gen_random,
    precedes,
    prev_distance,
    taxicab_thicken,
    taxicab_thin,
)
from vobif.core import NEG_INF_CODE
from vobif.oracle import oracle_bifiltration, oracle_complement_set, present, realizable_distances
from strategies import images, metrics

NEG = -math.inf


def pts(*pairs):
    return tuple(bigrade(v, t) for v, t in pairs)


def one_pixel_lists(width, height, at, lists):
    """PixelLists holding ``lists`` at pixel index ``at`` and nothing elsewhere."""
    n = width * height
    sizes = np.zeros(n, dtype=np.int64)
    sizes[at] = len(lists)
    indptr = np.concatenate([[0], np.cumsum(sizes)])
    return PixelLists("taxicab", width, height, indptr,
                      np.array([v for v, _ in lists], dtype=np.int64),
                      np.array([t for _, t in lists], dtype=np.int64))


def test_prev_examples():
    assert prev_distance(2, (2, 2), (5, 5), "taxicab") == 1
    assert prev_distance(13, (0, 0), (6, 6), "euclidean") == 10
    assert prev_distance(1, (0, 0), (6, 6), "taxicab") == 0
    assert prev_distance(1, (0, 0), (6, 6), "euclidean") == 0
    with pytest.raises(ValueError):
        prev_distance(0, (0, 0), (2, 2), "taxicab")
    with pytest.raises(IndexError):
        prev_distance(3, (2, 0), (2, 2), "taxicab")


@given(images(max_side=7), metrics)
def test_prev_matches_realizable_set(img, metric):
    for p in img.coords():
        dists = realizable_distances(GrayImage(np.zeros_like(img.pixels)), p, metric)
        for r in range(1, int(dists[-1]) + 2):
            want = int(dists[dists < r].max())
            assert prev_distance(r, p, (img.width, img.height), metric) == want


def test_convert_origin_of_fixture():
    img = fixture("fig3").image
    plus = taxicab_thicken(img)
    comp = taxicab_thin(img)
    r = convert(plus, comp, img, "taxicab")
    assert tuple(r.entrance_set(0, 0)) == pts((0, 5), (1, 1), (2, -1), (3, -2), (5, -3), (6, NEG))


def test_convert_constant_image():
    img = GrayImage(np.full((2, 2), 5))
    plus = one_pixel_lists(2, 2, 0, [(5, 0)])
    comp = one_pixel_lists(2, 2, 0, [])
    r = convert(plus, comp, img, "taxicab")
    assert tuple(r.entrance_set(0, 0)) == pts((5, NEG))


def test_convert_centralized_corner():
    img = gen_centralized(6, 6, 4)
    plus = one_pixel_lists(6, 6, 0, [(0, 0)])
    comp = one_pixel_lists(6, 6, 0, [(0, -1), (1, -2), (2, -4)])
    r = convert(plus, comp, img, "taxicab")
    assert tuple(r.entrance_set(0, 0)) == pts((0, 0), (1, -1), (2, -3), (3, NEG))


def test_convert_rejects_mismatches():
    img = fixture("fig5").image
    plus, comp = taxicab_thicken(img), taxicab_thin(img)
    with pytest.raises(ValueError):
        convert(plus, comp, img, "euclidean")
    with pytest.raises(ValueError):
        convert(plus, comp, fixture("fig1").image, "taxicab")


def test_single_pixel():
    r = compute_bifiltration(GrayImage(np.array([[0]])), "taxicab")
    assert tuple(r.entrance_set(0, 0)) == pts((0, NEG))


def test_random_16_seed_7_matches_oracle():
    img = gen_random(16, 16, 8, 7)
    assert compute_bifiltration(img, "taxicab").same_sets(oracle_bifiltration(img, "taxicab"))


@given(images(max_side=10, max_values=7))
def test_taxicab_matches_oracle(img):
    r = compute_bifiltration(img, "taxicab")
    assert r.exact
    r.validate()
    assert r.same_sets(oracle_bifiltration(img, "taxicab"))


@given(images(max_side=8), metrics)
def test_complement_and_negative_points_interleave(img, metric):
    r = compute_bifiltration(img, metric)
    r.validate()
    for (x, y), e in r:
        comp = list(oracle_complement_set(img, (x, y), metric))
        nonpos = [b for b in e if b.offset.sign <= 0]
        for a, b in zip(comp, comp[1:]):
            assert sum(a.value < c.value <= b.value for c in nonpos) == 1
        for c0, c1 in zip(nonpos, nonpos[1:]):
            assert sum(c0.value <= a.value < c1.value for a in comp) == 1


@given(images(max_side=6, max_values=4))
def test_presence_reconstruction(img):
    r = compute_bifiltration(img, "taxicab")
    for (x, y), e in r:
        dists = realizable_distances(img, (x, y), "taxicab").tolist()
        for v in img.value_set().tolist():
            for t in dists + [-d for d in dists[1:]]:
                b = bigrade(v, t)
                assert any(precedes(c, b) for c in e) == present(img, (x, y), b, "taxicab")


def test_counters_recorded():
    r = compute_bifiltration(gen_random(20, 10, 5, 1), "euclidean")
    assert set(r.counters) == {"thicken", "thin", "seconds"}
    assert r.counters["thin"]["num_values"] == 5
    assert not r.exact

import math

import numpy as np
from hypothesis import given

from vobif import GrayImage, bigrade, compare, compute_bifiltration, euclidean_thicken, euclidean_thin, fixture, gen_random
from vobif.analytics import directional_check, pass_distances
from vobif.oracle import oracle_bifiltration, oracle_complement_set
from strategies import images


def eu(v, t):
    return bigrade(v, t, "euclidean")


def test_first_points_of_small_search():
    f = fixture("fig5")
    plus = euclidean_thicken(f.image)
    for p, want in f.first_points["euclidean"].items():
        assert plus.get(*p)[0] == want


def test_thin_origin_matches_oracle():
    img = fixture("fig3").image
    comp = euclidean_thin(img).get(0, 0)
    assert comp == tuple(oracle_complement_set(img, (0, 0), "euclidean"))
    assert eu(4, -5) in comp


def test_thin_constant_and_single_site():
    assert euclidean_thin(GrayImage(np.full((3, 3), 2))).point_values.size == 0
    a = np.zeros((7, 9), dtype=np.int64)
    a[3, 4] = 1
    comp = euclidean_thin(GrayImage(a))
    for y in range(7):
        for x in range(9):
            assert comp.get(x, y) == (eu(0, -((x - 4) ** 2 + (y - 3) ** 2)),)


def test_bound_on_seed_11():
    img = gen_random(24, 24, 8, 11)
    d = compare(compute_bifiltration(img, "euclidean"), oracle_bifiltration(img, "euclidean"))
    assert d.bound_violations == 0
    assert d.max_abs_diff < 1
    rep = directional_check(img, euclidean_thicken(img), euclidean_thin(img))
    assert rep.ok, rep


@given(images(max_side=9, max_values=5))
def test_bound_and_direction(img):
    d = compare(compute_bifiltration(img, "euclidean"), oracle_bifiltration(img, "euclidean"))
    assert d.bound_violations == 0
    rep = directional_check(img, euclidean_thicken(img), euclidean_thin(img))
    assert rep.ok, rep


@given(images(max_side=10, max_values=6))
def test_queue_counters(img):
    n = img.num_pixels
    for lists in (euclidean_thicken(img), euclidean_thin(img)):
        assert lists.counters["pop_order_violations"] == 0
        assert lists.counters["max_queue"] <= 8 * n


def test_pass_distances_respect_value_gaps():
    # labels v - 1 fall between listed values here
    img = GrayImage(np.array([[0, 5, 9]]))
    plus, comp = euclidean_thicken(img), euclidean_thin(img)
    below, above = pass_distances(plus, comp, img.value_set())
    assert below[0].tolist() == [0, 0, 0]
    assert above[0].tolist() == [1, 4, -1]

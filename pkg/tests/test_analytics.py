import io

import numpy as np
import pytest
from hypothesis import given

from vobif import GrayImage, compare, compute_bifiltration, entrance_stats, fixture, gen_random
from vobif.analytics import BENCH_COLUMNS, bench_run, write_bench_csv
from vobif.imgio import format_entrance_sets, parse_entrance_sets
from vobif.oracle import oracle_bifiltration
from strategies import images, metrics


def test_stats_worst_case_fixture():
    rep = entrance_stats(oracle_bifiltration(fixture("fig9a").image, "taxicab"))
    assert rep.average == 4.0
    assert rep.min_size == rep.max_size == 4
    assert rep.histogram == {4: 36}
    assert rep.num_values == 4 and rep.num_pixels == 36


def test_stats_constant_image():
    rep = entrance_stats(compute_bifiltration(GrayImage(np.full((5, 3), 8)), "euclidean"))
    assert rep.average == 1.0
    assert rep.total_bigrades == 15


@given(images(max_side=10), metrics)
def test_stats_totals_are_consistent(img, metric):
    r = compute_bifiltration(img, metric)
    rep = entrance_stats(r)
    assert rep.total_bigrades == int(r.sizes().sum())
    assert rep.average_exact * rep.num_pixels == rep.total_bigrades
    assert sum(rep.histogram.values()) == rep.num_pixels
    assert sum(k * c for k, c in rep.histogram.items()) == rep.total_bigrades


def test_compare_taxicab_against_oracle():
    img = gen_random(32, 32, 8, 2)
    d = compare(compute_bifiltration(img, "taxicab"), oracle_bifiltration(img, "taxicab"))
    assert d.identical and d.max_abs_diff == 0 and d.worst_pixel is None


def test_compare_identical_inputs():
    r = compute_bifiltration(gen_random(12, 9, 5, 4), "euclidean")
    d = compare(r, r)
    assert d.identical and d.bound_violations == 0
    assert "differences 0" in d.format()


def test_compare_euclidean_against_oracle():
    img = gen_random(24, 24, 8, 5)
    d = compare(compute_bifiltration(img, "euclidean"), oracle_bifiltration(img, "euclidean"))
    assert d.max_abs_diff < 1
    assert d.bound_violations == 0


def test_compare_reports_worst_pixel():
    img = fixture("fig3").image
    a = compute_bifiltration(img, "taxicab")
    text = "\n".join(
        line.replace("(0,5)", "(0,7)") if line.startswith("0 0 :") else line
        for line in format_entrance_sets(a).splitlines()
    )
    b = parse_entrance_sets(text)
    d = compare(a, b)
    assert d.worst_pixel == (0, 0) and d.worst_value == 0
    assert d.max_abs_diff == 2 and d.bound_violations == 1


def test_compare_mismatches():
    a = compute_bifiltration(gen_random(4, 4, 3, 0), "taxicab")
    with pytest.raises(ValueError, match="metric"):
        compare(a, compute_bifiltration(gen_random(4, 4, 3, 0), "euclidean"))
    with pytest.raises(ValueError, match="dimension"):
        compare(a, compute_bifiltration(gen_random(4, 5, 3, 0), "taxicab"))


def test_bench_zero_reps_is_header_only():
    buf = io.StringIO()
    write_bench_csv(bench_run([64], [8], "taxicab", reps=0), buf)
    assert buf.getvalue() == ",".join(BENCH_COLUMNS) + "\n"


def test_bench_rows():
    rows = bench_run([16, (20, 10)], [4, 8], "euclidean", reps=2, seed=3)
    assert [(r.width, r.height, r.num_values) for r in rows] == [(16, 16, 4), (16, 16, 8), (20, 10, 4), (20, 10, 8)]
    r = rows[0]
    assert r.total_bigrades == compute_bifiltration(gen_random(16, 16, 4, 3), "euclidean").total_bigrades
    assert r.pixels == 256 and r.seconds > 0


def test_doubling_pixels_roughly_doubles_runtime():
    rows = bench_run([(512, 256), (512, 512)], [16], "taxicab", reps=5, seed=1)
    ratio = rows[1].seconds / rows[0].seconds
    print(f"runtime ratio for doubled N: {ratio:.2f}")
    assert 1.5 <= ratio <= 3.0


def test_euclidean_average_at_least_taxicab():
    for seed in (0, 1):
        img = gen_random(256, 256, 256, seed)
        tx = entrance_stats(compute_bifiltration(img, "taxicab")).average
        eu = entrance_stats(compute_bifiltration(img, "euclidean")).average
        assert eu >= tx

import json
import math
from fractions import Fraction

import pytest

import bellvol


def test_origin_is_in_every_set():
    profile = bellvol.membership_profile((0.0, 0.0, 0.0, 0.0))
    assert set(profile) >= {"C", "Q", "U", "T", "L"}
    assert all(inside for inside, _ in profile.values())


def test_pr_point_is_only_in_the_box():
    inside, margin = bellvol.in_region((1, 1, 1, -1), "L")
    assert inside and margin == 0.0
    assert not bellvol.in_region((1, 1, 1, -1), "Q")[0]
    assert bellvol.chsh_value((1, 1, 1, -1), 1, 1) == 4.0


def test_out_of_range_point_raises():
    with pytest.raises(ValueError):
        bellvol.membership_profile((1.5, 0, 0, 0))


def test_polytope_counts_and_volume():
    assert bellvol.polytope_counts("ns") == (24, 16)
    assert bellvol.polytope_counts("local") == (16, 24)
    assert bellvol.exact_volume("corrC") == Fraction(32, 3)


def test_small_monte_carlo_is_reproducible():
    a = bellvol.mc_volume("C", n=100_000, seed=5, workers=1)
    b = bellvol.mc_volume("C", n=100_000, seed=5, workers=2)
    assert a == b
    assert abs(a["value"] - 32 / 3) < 5 * a["std_error"]
    r = bellvol.ratio_estimate("Q", "C", n=100_000, seed=5)
    assert abs(r["value"] - (3 * math.pi / 8) ** 2) < 5 * r["std_error"]


def test_quadrature_matches_closed_form():
    q = bellvol.quadrature_volume_Q(1e-6)
    assert q["method"] == "quadrature"
    assert abs(q["value"] - 1.5 * math.pi**2) < 1e-6
    assert bellvol.analytic_constants()["V_Q"] == pytest.approx(1.5 * math.pi**2)


def test_tsirelson_witness():
    c = bellvol.tsirelson_witness()
    assert abs(c[0] + c[1] + c[2] - c[3]) == pytest.approx(2 * math.sqrt(2), abs=1e-12)


def test_sampled_quantum_points_are_quantum():
    for p in bellvol.sample_quantum_points(500, seed=2):
        inside, margin = bellvol.in_region(p, "Q")
        assert margin > -1e-9


def test_toggles():
    d = bellvol.toggle_distance((0, 0, 0, 0), (0.5, 0.5, 0.5, 0.5))
    assert list(d) == [0.25] * 4
    r = bellvol.min_toggles([1, 1, -1, 1], [1, -1, -1, -1], 1.0)
    assert r["count"] == 2 and r["toggled"] == [1, 3]
    assert r["alice"] == [1, -1, -1, -1]


def test_behavior_examples():
    pr = bellvol.check_behavior(bellvol.behavior_example("pr-box"))
    assert pr["no_signaling"] and pr["correlations"] == ["1", "1", "1", "-1"]
    sig = bellvol.check_behavior(bellvol.behavior_example("signaling"))
    assert not sig["no_signaling"] and sig["correlations"] == ["0"] * 4
    table = json.loads(bellvol.behavior_example("signaling"))
    assert len(table["settings"]) == 4


def test_run_cli():
    code, out, err = bellvol.run_cli(["polytope", "--which", "ns", "--task", "counts"])
    assert code == 0 and out == "vertices: 24, facets: 16\n"
    code, _, err = bellvol.run_cli(["membership", "--point", "0,0,0"])
    assert code == 2 and err

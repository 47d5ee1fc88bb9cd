import math

import pytest

import relaxflux


def test_burgers_exact_boundary_and_initial():
    assert relaxflux.burgers_exact(0.0, 2.0, 0.01) == pytest.approx(0.0)
    x, mu = 0.3, 0.01
    expected = 2 * mu * math.pi * math.sin(math.pi * x) / (2 + math.cos(math.pi * x))
    assert relaxflux.burgers_exact(x, 0.0, mu) == pytest.approx(expected)


def test_sod_star_state():
    p, u = relaxflux.euler_star_state([1, 0, 1], [0.125, 0, 0.1], 1.4)
    assert p == pytest.approx(0.30313, rel=1e-4)
    assert u == pytest.approx(0.92745, rel=1e-4)
    assert relaxflux.euler_exact_riemann([1, 0, 1], [0.125, 0, 0.1], 1.4, -5.0) == pytest.approx([1, 0, 1])


def test_blasius_wall_shear():
    assert relaxflux.blasius()["fpp0"] == pytest.approx(0.332057, rel=1e-5)


def test_observed_order():
    assert relaxflux.observed_order(4e-5, 1e-5) == pytest.approx(2.0)


def test_run_config_burgers():
    text = "[problem]\nname = burgers_ibvp\n[grid]\nnx = 16, 32\n[time]\nt_end = 0.5\n"
    out = relaxflux.run_config(text)
    assert [lv["nx"] for lv in out["levels"]] == [16, 32]
    assert out["levels"][1]["l1"] < out["levels"][0]["l1"]
    assert "errors" in out["tables"]


def test_config_error_is_raised():
    with pytest.raises(relaxflux.SolverError, match="ConfigError"):
        relaxflux.run_config("[problem]\nname = nonsense\n")


def test_property_suite_passes():
    results = relaxflux.property_suite(3)
    assert results and all(r["passed"] for r in results)

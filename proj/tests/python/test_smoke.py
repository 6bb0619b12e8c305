import json
import math

import numpy as np
import pytest

import weightlab as wl


def test_grid_basics():
    g = wl.Grid(1, 8, 16)
    assert g.h == 1.0
    x = g.coords()
    assert x[0] == -7.5 and x[-1] == 7.5
    with pytest.raises(ValueError):
        wl.Grid(1, 8, 15)


def test_phi_and_validation():
    assert wl.phi(2.0, 3.0) == 16.0
    assert not wl.validate_power_weight(1, 2, 0, -1, 1)["accepted"]
    v = wl.validate_power_weight(1, 2, -3, 0.5, 4)
    assert v["accepted"] and v["gamma1_certified"]


def test_ap_constants():
    g = wl.Grid(1, 4, 64)
    r = wl.ap_phi_constant(g, 0.0, 0.0, 2.0, alpha0=1.0)
    assert r["constant"] == pytest.approx((1 + g.h) ** -2)
    a1 = wl.a1_phi_constant(wl.Grid(1, 8, 128), -1.5, 0.0, refine="widen")
    assert math.isfinite(a1["constant"])
    assert a1["trend"]["relative_change"] < 0.1


def test_maximal_of_constant():
    g = wl.Grid(1, 4, 64)
    one = np.ones(64)
    m = wl.maximal(g, one, alpha0=1.0, eta=1.0)
    assert m.shape == (64,)
    assert np.allclose(m, 1 / (1 + g.h))
    s = wl.maximal(g, 3 * one, alpha0=1.0, eta=1.0, family="dyadic", sharp=True)
    assert np.allclose(s, 1.5)


def test_cz_example():
    g = wl.Grid(1, 2, 256)
    f = wl.sample(g, lambda x: ((x >= 0) & (x < 1)).astype(float))
    r = wl.cz_decompose(g, f, 0.3)
    assert len(r["cubes"]) == 1
    assert r["cubes"][0]["center"] == [1.0]
    assert r["cubes"][0]["side"] == 2.0
    assert r["property_i"] and r["property_iv"] and r["disjoint"]


def test_pdo_identity_and_mode():
    g = wl.Grid(2, 4, 32)
    rng = np.random.default_rng(0)
    f = rng.normal(size=(32, 32)) + 1j * rng.normal(size=(32, 32))
    assert np.max(np.abs(wl.apply_pdo(g, "identity", f) - f)) <= 1e-9 * np.max(np.abs(f))

    g1 = wl.Grid(1, 8, 128)
    xi = 5 / 16
    mode = np.exp(2j * np.pi * g1.coords() * xi)
    out = wl.apply_pdo(g1, "riesz", mode)
    assert np.allclose(out, xi / math.sqrt(1 + xi * xi) * mode, atol=1e-12)


def test_partition_and_commutator():
    assert wl.partition_check(wl.Grid(1, 8, 512), 6) <= 1e-12
    g = wl.Grid(1, 8, 256)
    f = wl.sample(g, lambda x: np.exp(-x * x))
    assert np.max(np.abs(wl.commutator(g, "constant", "riesz", f, c=2.0))) <= 1e-12
    assert np.max(np.abs(wl.commutator(g, "sign", "riesz", f))) > 1e-3
    assert wl.bmo_norm(g, "sign")["norm"] == pytest.approx(1.0)


def test_luxemburg_constant():
    for c in (0.1, 1.0, 10.0):
        assert wl.luxemburg_llogl(np.full(16, c)) == pytest.approx(c, rel=1e-8)


def test_run_check_and_suite(tmp_path):
    rep = wl.run_check({"check": "identity", "grid": {"n": 1, "L": 8, "N": 256}, "test_set": {"count": 4}})
    assert rep["pass"]
    assert rep["constant"] <= 1e-9
    assert "smoke" in wl.suite_names()
    cfgs = wl.suite_configs("smoke")
    assert {c["check"] for c in cfgs} >= {"identity", "partition", "cz"}
    res = wl.run_suite("smoke", out=str(tmp_path))
    assert res["all_pass"]
    manifest = json.loads((tmp_path / res["run_id"] / "manifest.json").read_text())
    assert manifest["status"]
    assert res["csv"].startswith("check,id,variant,input,lambda")

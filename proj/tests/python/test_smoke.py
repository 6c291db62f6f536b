import math

import numpy as np
import pytest

import pairgraph


def test_version():
    assert pairgraph.__version__ == "0.1.0"


def test_null_moments_examples():
    m = pairgraph.null_moments(2, [(0, 1), (2, 3), (0, 2)])
    assert m["edge_count"] == 2
    assert m["e_r1"] == 0.5
    assert m["var_r1"] == 0.25
    assert m["cov_r12"] == 0.25
    assert m["var_diff"] == 0.0
    assert m["var_sum"] == 1.0

    m = pairgraph.null_moments(2, [(0, 1), (0, 3)])
    assert m["cov_r12"] == -0.25
    assert m["var_sum"] == 0.0


def test_degenerate_statistics_are_none():
    s = pairgraph.statistics(2, [(0, 1), (2, 3)])
    assert s["z_m"] == pytest.approx(1.0)
    assert s["z_s"] is None
    assert s["z_g"] is None


def test_full_report():
    x, y = pairgraph.generate("normal", 30, 4, mean_shift=1.0, gamma12=0.5, seed=3)
    assert x.shape == (30, 4) and y.shape == (30, 4)
    r = pairgraph.test(x, y, k=5, pvalue="both", n_perm=500, seed=9, baseline_ht=True)
    z = r["statistics"]
    assert z["z_g"] == pytest.approx(z["z_m"] ** 2 + z["z_s"] ** 2, rel=1e-10)
    assert r["graph"]["edges"] == 5 * 59
    assert r["pvalues"]["permutation"]["mode"] == "monte-carlo"
    assert 0.0 < r["pvalues"]["asymptotic"]["p_m"] <= 1.0
    assert "p" in r["baseline"]["hotelling"]
    assert pairgraph.test(x, y, seed=9, pvalue="both", n_perm=500) == pairgraph.test(
        x, y, seed=9, pvalue="both", n_perm=500
    )


def test_kmst_edge_count():
    rng = np.random.default_rng(0)
    pts = rng.normal(size=(12, 3))
    dist = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
    assert len(pairgraph.kmst(dist, 3)) == 3 * 11


def test_baselines():
    t, p = pairgraph.paired_t([1.0, 3.0], [0.0, 0.0])
    assert t == pytest.approx(2.0)
    assert p == pytest.approx(1.0 - 2.0 * math.atan(2.0) / math.pi)
    x = np.arange(12.0).reshape(6, 2) ** 1.5
    y = np.cos(x)
    h = pairgraph.hotelling(x, y)
    assert h["df1"] == 2 and h["df2"] == 4
    assert pairgraph.bonferroni([0.001] + [0.5] * 21, 0.05) == [True] + [False] * 21


def test_errors():
    x = np.zeros((3, 3))
    with pytest.raises(ValueError):
        pairgraph.hotelling(x, x + 1.0)
    with pytest.raises(ValueError):
        pairgraph.test(np.zeros((5, 2)), np.zeros((4, 2)))
    with pytest.raises(ValueError):
        pairgraph.test(np.zeros((5, 2)), np.ones((5, 2)), k=0)


def test_oracle():
    s = pairgraph.oracle(instances=20, seed=1)
    assert s["passed"]
    assert s["census_mismatches"] == 0

import math

import numpy as np
import pytest

import pymdt


def rot(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def test_fisher_distortion():
    assert pymdt.fisher_distortion(np.eye(3)) == pytest.approx(0.0)
    d = np.diag([2.0, 0.5])
    assert pymdt.fisher_distortion(d) == pytest.approx(math.sqrt(2) * math.log(2))


def test_fisher_distance_and_pullback():
    p = np.eye(2)
    q = np.diag([math.e**2, 1.0])
    assert pymdt.fisher_distance(p, q) == pytest.approx(2.0)
    l = np.diag([math.e, math.e])
    assert pymdt.pullback_distance(np.eye(2), l) == pytest.approx(2 * math.sqrt(2))


def test_lq_and_cholesky():
    a = np.array([[2.0, 1.0], [0.5, 3.0]])
    l, q = pymdt.lq_decompose(a)
    assert np.allclose(l @ q, a, atol=1e-10)
    assert np.allclose(np.triu(l, 1), 0.0)
    assert np.all(np.diag(l) > 0)

    p = np.array([[2.0, 1.0], [1.0, 2.0]])
    c = pymdt.cholesky_factor(p)
    assert np.allclose(c @ c.T, p, atol=1e-12)


def test_karcher_mean_matches_midpoint():
    rng = np.random.default_rng(7)
    g = rng.normal(size=(3, 3))
    p = g @ g.T + 3 * np.eye(3)
    g = rng.normal(size=(3, 3))
    q = g @ g.T + 3 * np.eye(3)
    res = pymdt.karcher_mean([p, q])
    mid = pymdt.geodesic_midpoint(p, q)
    assert np.allclose(res["mean"], mid, rtol=1e-8)


def test_mdt_geometric_mean():
    res = pymdt.mdt([np.diag([4.0, 1.0]), np.diag([1.0, 1.0])])
    assert np.allclose(res["transform"], np.diag([2.0, 1.0]), atol=1e-9)
    assert res["objective"] <= min(res["baseline_objectives"]) + 1e-8


def test_rotation_average():
    avg = pymdt.rotation_average([rot(0.2), rot(0.4)])
    assert np.allclose(avg, rot(-0.3), atol=1e-12)


def test_estimate_affine():
    a = np.array([[1.1, 0.2], [-0.3, 0.9]])
    b = np.array([4.0, -1.0])
    pts = [np.array([0.0, 0.0]), np.array([1.0, 0.0]), np.array([0.0, 1.0])]
    fit = pymdt.estimate_affine([(p, a @ p + b) for p in pts])
    assert np.allclose(fit["linear"], a, atol=1e-10)
    assert np.allclose(fit["translation"], b, atol=1e-10)


def test_rereference_rigid_set():
    linears = [rot(0.3), rot(-0.4)]
    translations = [np.array([1.0, 2.0]), np.array([-1.0, 0.5])]
    res = pymdt.rereference(linears, translations)
    assert res["total_after"] == pytest.approx(0.0, abs=1e-15)
    for lin in res["linears"]:
        assert pymdt.fisher_distortion(lin) == pytest.approx(0.0, abs=1e-10)


def test_errors_surface_as_exceptions():
    with pytest.raises(pymdt.MdtError):
        pymdt.fisher_distortion(np.array([[1.0, 2.0], [2.0, 4.0]]))

"""Smoke tests for the python bindings: construction, the headline constants,
and one small end-to-end metric estimate."""

import json
import math

import pytest

import heatbound as hb


def test_sharp_decay_constant():
    assert hb.sharp_decay_constant(1) == pytest.approx(0.25, abs=1e-14)
    assert hb.sharp_decay_constant(2) == pytest.approx(0.23623519685528872, abs=1e-12)


def test_domain_membership_and_reach():
    disc = hb.Domain.disc(1.0)
    assert disc.inside(0.0, 0.0)
    assert not disc.inside(2.0, 0.0)
    reach = hb.estimate_reach(disc, samples=256, tol=1e-4)
    assert reach.r == pytest.approx(1.0, abs=1e-3)

    horseshoe = hb.Domain.from_json(
        json.dumps({"shape": "horseshoe", "params": {"r_in": 1.0, "r_out": 2.0, "opening_angle": 0.5236}})
    )
    assert not horseshoe.inside(1.5, 0.0)


def test_free_kernel_matches_gaussian():
    got = hb.free_space_kernel(1, 1.0, 2.0)
    want = (4 * math.pi) ** -0.5 * math.exp(-1.0)
    assert got == pytest.approx(want, rel=1e-9)


def test_projection_and_boundary_samples():
    annulus = hb.Domain.annulus(1.0, 2.0)
    reach = hb.estimate_reach(annulus, samples=512, tol=1e-4)
    point = hb.project_to_closure(annulus, reach, (0.8, 0.0))
    assert point[0] == pytest.approx(1.0, abs=1e-9)
    samples = hb.boundary_samples(annulus, 64)
    assert len(samples) >= 64
    p, n, curvature = samples[0]
    assert math.hypot(*n) == pytest.approx(1.0, abs=1e-12)
    assert curvature > 0


def test_metric_estimate_convex_identity():
    square = hb.Domain.square(2.0)
    grid = hb.GridDiscretization(square, 0.05)
    solver = hb.GeodesicSolver(square, grid)
    est = solver.distance((-0.5, -0.5), (0.5, 0.5))
    assert est.method == hb.MetricMethod.euclidean
    assert est.lower == pytest.approx(math.sqrt(2.0))
    assert est.upper == pytest.approx(math.sqrt(2.0))


def test_sandwich_estimate_on_horseshoe():
    domain = hb.Domain.horseshoe(1.0, 2.0, 0.3)
    grid = hb.GridDiscretization(domain, domain.diameter / 40)
    solver = hb.GeodesicSolver(domain, grid)
    reach = hb.estimate_reach(domain, samples=1024, tol=1e-4)
    kernel = hb.make_mollifier(2, 2, quadrature_points=96)
    beta = 4 * kernel.K / reach.r
    x = (-1.5, 0.2)
    y = (0.4, 1.5)
    est = hb.riemannian_type_estimate(domain, reach, solver, kernel, 2, beta, x, y)
    dg = solver.distance(x, y).upper
    tol = 0.03 * dg + 2 * grid.spacing
    factor = 1 - math.sqrt(kernel.K / (beta * reach.r))
    assert factor * (dg - tol) <= est.lower <= dg + tol


def test_transformations_and_catalog():
    assert hb.growth_rate_from_threshold(0.25, 0.05, 1.0, 1) == pytest.approx(1.2)
    assert hb.threshold_from_growth_rate(1.0, 1.0, 1) == pytest.approx(1.0)
    assert "horseshoe" in hb.catalog_text()
    assert "sharpness-m2" in hb.catalog_text()
    with pytest.raises(Exception):
        hb.estimate_reach(hb.Domain.square(2.0), samples=256, tol=1e-4)

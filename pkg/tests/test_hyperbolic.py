import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmcbounds import hyperbolic as hyp
from cmcbounds.hyperbolic import (
    BoundaryCurve,
    DomainError,
    HyperbolicPoint,
    TangentVector,
    collar_area,
    collar_area_unit,
    equidistant_curvature,
    equidistant_point,
    equidistant_total_curvature,
    geodesic,
    hyperbolic_distance,
    jacobi_factor,
    lorentz_inner,
    parallel_transport,
)
from cmcbounds.oracles import oracle_geodesic, random_curve

ORIGIN = HyperbolicPoint.origin()


def random_point(rng):
    return HyperbolicPoint.from_plane(*rng.uniform(-2, 2, 2))


def random_tangent(rng, p):
    return TangentVector.project(p, rng.normal(size=3))


def unit(t: TangentVector) -> TangentVector:
    return TangentVector(t.base, t.direction / t.norm)


# --- Lorentz form -----------------------------------------------------------


@pytest.mark.parametrize(
    "u, v, expected",
    [((1, 0, 0), (1, 0, 0), 1.0), ((0, 0, 1), (0, 0, 1), -1.0), ((1, 2, 3), (4, 5, 6), -4.0)],
)
def test_lorentz_inner_values(u, v, expected):
    assert lorentz_inner(u, v) == expected


def test_lorentz_inner_bilinear_symmetric(rng):
    for _ in range(50):
        u, v, w = rng.normal(size=(3, 3))
        a, b = rng.normal(size=2)
        assert lorentz_inner(u, v) == pytest.approx(lorentz_inner(v, u))
        assert lorentz_inner(a * u + b * v, w) == pytest.approx(a * lorentz_inner(u, w) + b * lorentz_inner(v, w))


def test_point_and_tangent_validation():
    with pytest.raises(DomainError):
        HyperbolicPoint([0, 0, -1])
    with pytest.raises(DomainError):
        HyperbolicPoint([1, 0, 1])
    with pytest.raises(DomainError):
        TangentVector(ORIGIN, [0, 0, 1])


def test_rotation_orientation():
    r = hyp.rotate(TangentVector(ORIGIN, [1, 0, 0]))
    np.testing.assert_allclose(r.direction, [0, 1, 0])


# --- geodesics and transport -----------------------------------------------


def test_geodesic_at_zero_is_identity(rng):
    p = random_point(rng)
    v = random_tangent(rng, p)
    np.testing.assert_allclose(geodesic(p, v, 0.0).position, p.position)


def test_geodesic_from_origin():
    g = geodesic(ORIGIN, [1, 0, 0], 1.0).position
    np.testing.assert_allclose(g, [math.sinh(1), 0, math.cosh(1)], rtol=1e-15)
    ode = oracle_geodesic([0, 0, 1], [1, 0, 0], 1.0)
    assert np.linalg.norm(g - ode) / np.linalg.norm(ode) < 1e-8


@pytest.mark.parametrize("t", [0.5, 2.0, 10.0])
def test_geodesic_stays_on_hyperboloid(t):
    g = geodesic(ORIGIN, [0.6, 0.8, 0], t).position
    # the residual of <g, g> + 1 is limited by rounding in |g|^2
    assert abs(lorentz_inner(g, g) + 1) < 1e-10 * max(1.0, g @ g)


def test_geodesic_rejects_zero_vector():
    with pytest.raises(DomainError):
        geodesic(ORIGIN, [0, 0, 0], 1.0)


def test_transport_at_zero_is_identity(rng):
    p = random_point(rng)
    v, w = random_tangent(rng, p), random_tangent(rng, p)
    np.testing.assert_allclose(parallel_transport(p, v, w, 0.0).direction, w.direction, atol=1e-14)


def test_transport_of_orthogonal_vector_unchanged():
    w = [0, 1.7, 0]
    out = parallel_transport(ORIGIN, [1, 0, 0], w, 2.3)
    np.testing.assert_allclose(out.direction, w)


def test_transport_is_isometry(rng):
    for _ in range(20):
        p = random_point(rng)
        v, w1, w2 = (random_tangent(rng, p) for _ in range(3))
        t1 = parallel_transport(p, v, w1, 1.3).direction
        t2 = parallel_transport(p, v, w2, 1.3).direction
        assert abs(lorentz_inner(t1, t1) ** 0.5 - w1.norm) < 1e-10 * max(1, w1.norm)
        assert lorentz_inner(t1, t2) == pytest.approx(lorentz_inner(w1.direction, w2.direction), abs=1e-10)


def test_transport_rejects_zero_velocity():
    with pytest.raises(DomainError):
        parallel_transport(ORIGIN, [0, 0, 0], [1, 0, 0], 1.0)


# --- normal flow ------------------------------------------------------------


def test_jacobi_factor_values():
    assert jacobi_factor(-3.0, 0.0) == 1.0
    assert jacobi_factor(-1.0, 1.0) == pytest.approx(math.e, rel=1e-15)
    h = 1e-6
    assert (jacobi_factor(-2.5, h) - jacobi_factor(-2.5, -h)) / (2 * h) == pytest.approx(2.5, rel=1e-8)


def test_equidistant_curvature_values():
    assert equidistant_curvature(-2.0, 0.0) == -2.0
    for r in (0.1, 1.0, 7.0):
        assert equidistant_curvature(-1.0, r) == pytest.approx(-1.0, rel=1e-15)
    assert equidistant_curvature(-2.0, 1.0) == pytest.approx(-1.094486, abs=1e-6)


@pytest.mark.parametrize("kappa", [0.0, 0.5])
def test_equidistant_curvature_rejects_nonnegative(kappa):
    with pytest.raises(DomainError):
        equidistant_curvature(kappa, 1.0)


def test_equidistant_curvature_monotone_and_limit():
    r = np.linspace(0, 8, 400)
    above = equidistant_curvature(-0.4, r)
    below = equidistant_curvature(-3.0, r)
    assert np.all(np.diff(above) < 0) and np.all(np.diff(below) > 0)
    assert abs(above[-1] + 1) < 1e-6 and abs(below[-1] + 1) < 1e-6
    assert np.all(above < 0) and np.all(below < 0)


def test_equidistant_point_basic(rng):
    t = TangentVector(ORIGIN, [1, 0, 0])
    np.testing.assert_allclose(equidistant_point(ORIGIN, t, 0.0).position, ORIGIN.position)
    for r in (0.1, 1.0, 5.0):
        q = equidistant_point(ORIGIN, t, r).position
        assert abs(lorentz_inner(q, q) + 1) < 1e-12 * max(1, q @ q)


def test_equidistant_point_distance(rng):
    for _ in range(20):
        p = random_point(rng)
        t = unit(random_tangent(rng, p))
        r = rng.uniform(0.01, 4)
        assert hyperbolic_distance(p, equidistant_point(p, t, r)) == pytest.approx(r, abs=1e-10)


def test_equidistant_point_rejects_non_unit():
    with pytest.raises(DomainError):
        equidistant_point(ORIGIN, TangentVector(ORIGIN, [2, 0, 0]), 1.0)


# --- curves -----------------------------------------------------------------


def test_curve_validation():
    with pytest.raises(DomainError):
        BoundaryCurve([0, 1, 1], [-1, -1, -1])
    with pytest.raises(DomainError):
        BoundaryCurve([0.1, 1], [-1, -1])
    with pytest.raises(DomainError):
        BoundaryCurve([0, 1], [-1, 0])


def test_curve_csv_roundtrip(tmp_path, rng):
    curve = random_curve(rng)
    path = tmp_path / "curve.csv"
    curve.to_csv(path)
    back = BoundaryCurve.from_csv(path)
    np.testing.assert_array_equal(back.s, curve.s)
    np.testing.assert_array_equal(back.kappa, curve.kappa)
    bad = tmp_path / "bad.csv"
    bad.write_text("t,k\n0,-1\n1,-1\n")
    with pytest.raises(DomainError):
        BoundaryCurve.from_csv(bad)


def test_collar_area_values():
    c = BoundaryCurve.constant(-1.0, 1.0)
    assert collar_area(c, 0.0) == 0.0
    assert collar_area(c, 1.0) == pytest.approx(math.e - 1, rel=1e-14)
    with pytest.raises(DomainError):
        collar_area(c, 1.0, K1=0.0)


def test_collar_area_unit_curvature_matches_reduced_form(rng):
    for _ in range(20):
        c = random_curve(rng)
        r = rng.uniform(0, 3)
        assert collar_area(c, r, -1.0) == pytest.approx(collar_area_unit(c, r), rel=1e-12, abs=1e-14)


def test_collar_area_increasing_in_r(rng):
    c = random_curve(rng)
    values = [collar_area(c, r, -2.5) for r in np.linspace(0, 3, 50)]
    assert np.all(np.diff(values) > 0)


def test_equidistant_total_curvature_values():
    c = BoundaryCurve.constant(-1.0, 1.0)
    assert equidistant_total_curvature(c, 0.0) == c.total_curvature()
    assert equidistant_total_curvature(c, 1.0) == pytest.approx(-math.e, rel=1e-14)


def test_gauss_bonnet_closure(rng):
    for _ in range(10):
        c = random_curve(rng)
        r = rng.uniform(0.1, 3)
        lhs = collar_area(c, r)
        rhs = c.total_curvature() - equidistant_total_curvature(c, r)
        assert lhs == pytest.approx(rhs, rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    kappa=st.floats(-6, -0.05),
    length=st.floats(0.05, 10),
    r=st.floats(0, 3),
    K1=st.floats(-30, -0.1),
)
def test_collar_area_rescaling(kappa, length, r, K1):
    a = math.sqrt(-K1)
    curve = BoundaryCurve.constant(kappa, length)
    scaled = BoundaryCurve.constant(kappa / a, length * a)
    lhs = collar_area(curve, r, K1)
    rhs = collar_area(scaled, r * a, -1.0) / (-K1)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-300)


def test_hyperbolic_disk_area():
    assert hyp.hyperbolic_disk_area(1.0) == pytest.approx(2 * math.pi * (math.cosh(1) - 1), rel=1e-15)
    assert hyp.hyperbolic_disk_area(0.5, -4.0) == pytest.approx(hyp.hyperbolic_disk_area(1.0) / 4, rel=1e-14)
    assert hyp.hyperbolic_disk_area(1e-4) / (math.pi * 1e-8) == pytest.approx(1, rel=1e-7)

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polychain import geometry as geo

UNIT = st.floats(0.0, 1.0, allow_nan=False)
OPEN_UNIT = st.floats(1e-6, 1.0 - 1e-6)


def interior_points(draw):
    x = draw(st.floats(1e-6, 1.0 - 2e-6))
    y = draw(st.floats(1e-6, (1.0 - x) * (1.0 - 1e-9) - 1e-9))
    return x, y


def test_standard_constants():
    assert geo.STANDARD_TRIANGLE.area == pytest.approx(0.5)
    assert geo.CBRT_HALF ** 3 == pytest.approx(0.5)


def test_to_standard_roundtrip():
    tri = geo.Triangle((2.0, 1.0), (0.5, -1.0), (3.0, 4.0))
    m = geo.to_standard(tri)
    assert np.allclose(m(np.array(tri.p0)), geo.P0, atol=1e-12)
    assert np.allclose(m(np.array(tri.p1)), geo.P1, atol=1e-12)
    assert np.allclose(m(np.array(tri.p2)), geo.P2, atol=1e-12)
    inv = m.inverse()
    pts = np.array([[0.2, 0.3], [0.1, 0.1]])
    assert np.allclose(inv(m(pts)), pts, atol=1e-12)


def test_to_standard_rejects_degenerate():
    with pytest.raises(ValueError):
        geo.to_standard(geo.Triangle((0.0, 0.0), (1.0, 1.0), (2.0, 2.0)))


@given(p=OPEN_UNIT, r=st.floats(-0.5, 0.5))
def test_gamma_point_lies_on_scaled_parabola(p, r):
    x, y = geo.gamma_point(p, r)
    assert math.sqrt(x / (1 + r)) + math.sqrt(y / (1 + r)) == pytest.approx(1.0)


@given(data=st.data())
def test_tangent_line_split(data):
    x, y = interior_points(data.draw)
    split = geo.tangent_line((x, y))
    fx, fy, c = split.line
    # the line passes through q and is tangent: r recovered consistently
    assert fx * x + fy * y == pytest.approx(c, rel=1e-9)
    assert split.r == pytest.approx((math.sqrt(x) + math.sqrt(y)) ** 2 - 1.0)
    assert split.t1 >= 0.0 and split.t2 >= 0.0


def test_tangent_line_symmetric_point():
    # the midpoint of Gamma: both cut-off triangles have equal area
    q = geo.gamma_point(0.25)
    split = geo.tangent_line(q)
    assert split.r == pytest.approx(0.0, abs=1e-12)
    assert split.t1 == pytest.approx(split.t2, rel=1e-9)


@given(p=st.floats(0.05, 0.95), r=st.floats(-0.5, 0.5))
def test_parallel_tangent_distance_bound(p, r):
    d = geo.parallel_tangent_distance(p, r)
    assert d <= abs(r) / math.sqrt(8.0) + 1e-12


@given(a=UNIT, b=UNIT, c=UNIT)
def test_mobius_deficiency_lower_bound(a, b, c):
    assert geo.mobius_deficiency(a, b, c) >= (a - b) ** 2 / 3.0 - 1e-12


@given(a=OPEN_UNIT, b=OPEN_UNIT)
def test_mobius_minimizing_c_is_argmin(a, b):
    c0 = geo.mobius_minimizing_c(a, b)
    f0 = geo.mobius_deficiency(a, b, c0)
    for c in np.linspace(1e-6, 1.0 - 1e-6, 101):
        assert f0 <= geo.mobius_deficiency(a, b, c) + 1e-10


@settings(max_examples=30)
@given(t=st.floats(1e-5, 0.4))
def test_equal_area_subdivision(t):
    tris = geo.equal_area_subdivision(t)
    areas = [tri.area for tri in tris]
    assert all(a <= t + 1e-12 for a in areas)
    assert all(a == pytest.approx(t, rel=1e-9) for a in areas[:-1])
    total = sum(a ** (1.0 / 3.0) for a in areas)
    assert total == pytest.approx(geo.CBRT_HALF, rel=1e-9)


def test_affine_perimeter_constant():
    target = 2.0 * geo.CBRT_HALF
    assert geo.affine_perimeter([0.0, 1.0]) == pytest.approx(target, abs=1e-12)
    assert geo.affine_perimeter(np.linspace(0, 1, 17)) == pytest.approx(
        target, abs=1e-12)


def test_affine_perimeter_validation():
    with pytest.raises(ValueError):
        geo.affine_perimeter([0.5])
    with pytest.raises(ValueError):
        geo.affine_perimeter([0.5, 0.4])
    with pytest.raises(ValueError):
        geo.affine_perimeter([0.0, 1.5])


def test_gamma_distance_zero_on_curve():
    ps = np.linspace(0.01, 0.99, 50)
    pts = np.array([geo.gamma_point(p) for p in ps])
    d = geo.gamma_distance(pts)
    assert float(np.max(d)) < 1e-6


def test_gamma_distance_known_point():
    # distance from the origin-side corner point (0,0) to Gamma
    d = geo.gamma_distance(np.array([[0.0, 0.0]]))[0]
    # nearest Gamma point to the origin is (1/4, 1/4)
    assert d == pytest.approx(math.sqrt(2.0) / 4.0, abs=1e-6)


def test_hausdorff_chord():
    # the straight chord from p0 to p2: farthest Gamma point is (1/4, 1/4)
    path = np.array([geo.P0, geo.P2], dtype=float)
    d = geo.hausdorff_to_gamma(path)
    assert d == pytest.approx(math.sqrt(2.0) / 4.0, abs=1e-4)


def test_hausdorff_dense_polyline_small():
    ps = np.linspace(0.0, 1.0, 400)
    path = np.array([geo.gamma_point(p) for p in ps])
    assert geo.hausdorff_to_gamma(path) < 1e-3

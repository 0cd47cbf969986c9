import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trajsmooth.curve import (
    curvature,
    default_spacing,
    element_lengths,
    grid_normals,
    perp,
    resample,
    total_length,
)
from trajsmooth.errors import DegenerateCurveError, InputError

from conftest import wavy_curve


def rotation(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


class TestElementLengths:
    def test_unit_spacing(self):
        assert element_lengths([(0, 0), (1, 0), (2, 0)]).tolist() == [1.0, 1.0]

    def test_345(self):
        assert element_lengths([(0, 0), (3, 4)]).tolist() == [5.0]

    def test_regular_polygon_chord(self):
        k = np.arange(101)
        pts = np.column_stack([np.cos(2 * np.pi * k / 100), np.sin(2 * np.pi * k / 100)])
        h = element_lengths(pts)
        direct = np.array([np.sqrt(np.sum((pts[i + 1] - pts[i]) ** 2)) for i in range(100)])
        np.testing.assert_allclose(h, 2 * np.sin(np.pi / 100), rtol=1e-12)
        np.testing.assert_allclose(h, direct, rtol=1e-12)

    def test_degenerate_element(self):
        with pytest.raises(DegenerateCurveError, match="element 2"):
            element_lengths([(0, 0), (1, 0), (1, 0), (2, 0)])

    def test_explicit_floor(self):
        with pytest.raises(DegenerateCurveError):
            element_lengths([(0, 0), (1e-3, 0), (1, 0)], floor=1e-2)


class TestCurvature:
    def test_collinear_zero(self):
        k = curvature([(0, 0), (1, 1), (2, 2), (3, 3), (4, 4)])
        assert np.all(k == 0.0)

    def test_quarter_turn_hand_value(self):
        # h_1 = (1, 0), h_2 of unit length, h_3 = (0, 1): the turn between h_1 and h_3
        # is pi/2, spread over 2 h_2 = 2
        c = np.sqrt(0.5)
        pts = [(0, 0), (1, 0), (1 + c, c), (1 + c, c + 1)]
        k = curvature(pts)
        assert k[1] == pytest.approx(np.pi / 4, rel=1e-14)
        assert k[0] == k[1] and k[2] == k[1]

    def test_right_turn_negative(self):
        c = np.sqrt(0.5)
        pts = [(0, 0), (1, 0), (1 + c, -c), (1 + c, -c - 1)]
        assert curvature(pts)[1] == pytest.approx(-np.pi / 4)

    @pytest.mark.parametrize("radius", [0.5, 1.0, 7.0])
    def test_circle_arc(self, radius):
        t = np.linspace(0, np.pi, 202)
        pts = radius * np.column_stack([np.cos(t), np.sin(t)])
        k = curvature(pts)
        np.testing.assert_allclose(k[1:-1], 1 / radius, rtol=0.02)

    def test_boundary_copies(self):
        k = curvature(wavy_curve())
        assert k[0] == k[1] and k[-1] == k[-2]

    def test_three_points_vertex_rule(self):
        # single interior vertex turning by 90 degrees, unit elements
        k = curvature([(0, 0), (1, 0), (1, 1)])
        assert k.tolist() == pytest.approx([np.pi / 2, np.pi / 2])

    def test_single_element(self):
        assert curvature([(0, 0), (1, 2)]).tolist() == [0.0]

    def test_mirror_flips_sign(self):
        pts = wavy_curve()
        mirrored = pts * [1, -1]
        np.testing.assert_array_equal(curvature(mirrored), -curvature(pts))

    @settings(max_examples=50, deadline=None)
    @given(
        theta=st.floats(0, 2 * np.pi),
        shift=st.tuples(st.floats(-100, 100), st.floats(-100, 100)),
    )
    def test_rigid_motion_invariance(self, theta, shift):
        pts = wavy_curve(30)
        moved = pts @ rotation(theta).T + np.array(shift)
        np.testing.assert_allclose(curvature(moved), curvature(pts), atol=1e-10)

    @settings(max_examples=100, deadline=None)
    @given(
        origin=st.tuples(st.floats(-10, 10), st.floats(-10, 10)),
        angle=st.floats(0, 2 * np.pi),
        t1=st.floats(0.1, 5),
        t2=st.floats(0.1, 5),
    )
    def test_collinear_any_orientation(self, origin, angle, t1, t2):
        d = np.array([np.cos(angle), np.sin(angle)])
        pts = np.array([origin, origin + t1 * d, origin + (t1 + t2) * d])
        # coordinates are rounded, so the points are collinear only up to ulps
        assert np.all(np.abs(curvature(pts)) <= 1e-12 * 20 / min(t1, t2))

    def test_collinear_exact_points(self):
        for pts in ([(0, 0), (2, 1), (6, 3)], [(3, 0), (1, 0), (-5, 0)], [(0, 1), (0, 0.5), (0, -4)]):
            assert np.all(curvature(pts) == 0.0)


class TestNormals:
    def test_horizontal(self):
        n = grid_normals([(0, 0), (1, 0), (2, 0), (3, 0)])
        np.testing.assert_array_equal(n, [[0, -1], [0, -1]])

    def test_v_shape_bisects_exterior_angle(self):
        n = grid_normals([(-1, 1), (0, 0), (1, 1)])
        np.testing.assert_allclose(n, [[0, -1]], atol=1e-15)
        # tilted symmetric V: equal arms at +-50 degrees about the direction (0.6, 0.8)
        axis = np.array([0.6, 0.8])
        arms = [rotation(a) @ axis for a in (np.radians(50), np.radians(-50))]
        n = grid_normals([2 * arms[0], (0, 0), 2 * arms[1]])
        np.testing.assert_allclose(n[0], -axis, atol=1e-14)

    def test_unit_length(self, rng):
        pts = np.cumsum(rng.standard_normal((40, 2)), axis=0)
        n = grid_normals(pts)
        np.testing.assert_allclose(np.linalg.norm(n, axis=1), 1.0, atol=1e-12)

    def test_orientation_convention(self):
        # T ^ N = -1 with N = T^perp
        t = np.array([0.6, 0.8])
        nv = perp(t)
        assert t[0] * nv[1] - t[1] * nv[0] == pytest.approx(-1.0)

    def test_fold_back(self):
        with pytest.raises(DegenerateCurveError, match="folds back"):
            grid_normals([(0, 0), (1, 0), (0, 0)])


class TestResample:
    def test_equal_subdivision(self):
        pts, seed = resample([(0, 0), (1, 0)], 0.25)
        np.testing.assert_array_equal(pts[:, 0], [0, 0.25, 0.5, 0.75, 1])
        assert seed.indices.tolist() == [0, 4]

    def test_ceil_rule(self):
        pts, seed = resample([(0, 0), (1, 0), (1, 2)], 0.5)
        assert seed.indices.tolist() == [0, 2, 6]
        assert seed.lengths.tolist() == [1.0, 2.0]
        assert len(pts) == 7

    def test_rejects_duplicates(self):
        with pytest.raises(InputError, match="coincide"):
            resample([(0, 0), (1, 0), (1, 0)], 0.1)

    def test_default_spacing(self):
        raw = [(0, 0), (1, 0), (1, 2), (1, 2.5)]
        assert default_spacing(raw) == pytest.approx(0.25)

    @settings(max_examples=60, deadline=None)
    @given(
        steps=st.lists(st.tuples(st.floats(-3, 3), st.floats(-3, 3)), min_size=1, max_size=12),
        spacing=st.floats(0.05, 2.0),
    )
    def test_properties(self, steps, spacing):
        steps = [s for s in steps if np.hypot(*s) > 1e-3]
        if not steps:
            return
        raw = np.concatenate([[[0.0, 0.0]], np.cumsum(steps, axis=0)])
        pts, seed = resample(raw, spacing)
        h = element_lengths(pts, floor=0.0)
        assert h.max() <= spacing * (1 + 1e-12)
        np.testing.assert_array_equal(pts[seed.indices], raw)
        assert seed.lengths.sum() == pytest.approx(total_length(raw), rel=1e-12)
        assert h.sum() == pytest.approx(seed.lengths.sum(), rel=1e-12)

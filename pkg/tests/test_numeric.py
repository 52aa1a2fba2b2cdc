import math

import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from tritri import numeric
from tritri.errors import DegenerateConstruction, InvalidCoordinate
from tritri.numeric import (
    LPIPoint,
    Sign,
    SSIPoint,
    exact_coordinates,
    exact_orient2d,
    exact_orient3d,
    forced_exact,
    orient2d,
    orient3d,
)


def rational_orient2d(a, b, c):
    """Independent oracle: rational 2x2 determinant."""
    A = [mpq(x) for x in a]
    B = [mpq(x) for x in b]
    C = [mpq(x) for x in c]
    det = (B[0] - A[0]) * (C[1] - A[1]) - (B[1] - A[1]) * (C[0] - A[0])
    return Sign.POSITIVE if det > 0 else (Sign.NEGATIVE if det < 0 else Sign.ZERO)


def rational_orient3d(a, b, c, d):
    """Independent oracle: rational 3x3 determinant."""
    A, B, C, D = ([mpq(x) for x in p] for p in (a, b, c, d))
    m = [[B[k] - A[k] for k in range(3)],
         [C[k] - A[k] for k in range(3)],
         [D[k] - A[k] for k in range(3)]]
    det = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    return Sign.POSITIVE if det > 0 else (Sign.NEGATIVE if det < 0 else Sign.ZERO)


class TestOrient2d:
    def test_left_turn(self):
        assert orient2d((0.0, 0.0), (1.0, 0.0), (0.0, 1.0)) == Sign.POSITIVE

    def test_collinear(self):
        assert orient2d((0.5, 0.5), (12.0, 12.0), (24.0, 24.0)) == Sign.ZERO

    def test_near_collinear_matches_rational_determinant(self):
        # one ulp off the diagonal; expectation frozen from the rational oracle
        c = (24.0, 24.0 + 2.0 ** -48)  # smallest representable bump at 24
        a, b = (0.5, 0.5), (12.0, 12.0)
        assert rational_orient2d(a, b, c) == Sign.POSITIVE
        assert orient2d(a, b, c) == Sign.POSITIVE

    def test_near_collinear_rational_backend(self):
        # 24 + 2^-52 is not a representable float; the rational
        # representation carries it exactly (det = 23 * 2^-53 > 0)
        a = (mpq(1, 2), mpq(1, 2))
        b = (mpq(12), mpq(12))
        c = (mpq(24), mpq(24) + mpq(1, 2 ** 52))
        assert orient2d(a, b, c) == Sign.POSITIVE

    def test_projection_axes(self):
        # drop X keeps (y, z); drop Y keeps (x, z)
        a, b, c = (9.0, 0.0, 0.0), (7.0, 1.0, 0.0), (5.0, 0.0, 1.0)
        assert orient2d(a, b, c, drop_axis=0) == Sign.POSITIVE
        a, b, c = (0.0, 9.0, 0.0), (1.0, 7.0, 0.0), (0.0, 5.0, 1.0)
        assert orient2d(a, b, c, drop_axis=1) == Sign.POSITIVE

    def test_non_finite_rejected(self):
        with pytest.raises(InvalidCoordinate):
            orient2d((float("nan"), 0.0), (1.0, 0.0), (0.0, 1.0))
        with pytest.raises(InvalidCoordinate):
            orient2d((float("inf"), 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0))


class TestOrient3d:
    def test_canonical_positive(self):
        a, b, c = (0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0)
        assert orient3d(a, b, c, (0.0, 0.0, 1.0)) == Sign.POSITIVE
        assert orient3d(a, b, c, (0.0, 0.0, -1.0)) == Sign.NEGATIVE

    def test_in_plane_zero(self):
        a, b, c = (0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0)
        assert orient3d(a, b, c, (0.3, 0.4, 0.0)) == Sign.ZERO

    def test_lpi_point_on_its_plane(self):
        lpi = LPIPoint(
            (1.0, 1.0, -1.0), (1.0, 1.0, 2.0),
            (0.0, 0.0, 0.0), (5.0, 0.0, 0.0), (0.0, 5.0, 0.0),
        )
        assert orient3d((0.0, 0.0, 0.0), (5.0, 0.0, 0.0), (0.0, 5.0, 0.0), lpi) == Sign.ZERO

    def test_implicit_explicit_coherence(self):
        lpi = LPIPoint(
            (0.25, 0.75, -3.0), (0.25, 0.75, 5.0),
            (0.0, 0.0, 0.0), (2.0, 0.0, 0.0), (0.0, 2.0, 0.0),
        )
        coords = exact_coordinates(lpi)
        probe = ((0.0, 0.0, 1.0), (3.0, 0.0, 0.0), (0.0, 3.0, 2.0))
        assert orient3d(*probe, lpi) == orient3d(*probe, coords)


class TestExactFallback:
    def test_all_equal_is_zero(self):
        p = (1.0, 2.0, 3.0)
        assert exact_orient3d(p, p, p, p) == Sign.ZERO
        assert exact_orient2d((1.0, 1.0), (1.0, 1.0), (1.0, 1.0)) == Sign.ZERO

    def test_float_cancellation_resolved_exactly(self):
        # filtered value is ~0 in floats but the exact determinant is not
        eps = 2.0 ** -53
        a = (0.0, 0.0, 0.0)
        b = (1.0, 0.0, 0.0)
        c = (0.0, 1.0, 0.0)
        d = (0.5, 0.5, eps * 0.5)  # representable; tiny but nonzero height
        assert orient3d(a, b, c, d) == rational_orient3d(a, b, c, d) == Sign.POSITIVE

    def test_random_cross_check(self):
        rng = np.random.default_rng(7)
        for _ in range(2000):
            pts = [tuple(float(x) for x in rng.integers(-8, 9, 3)) for _ in range(4)]
            assert orient3d(*pts) == rational_orient3d(*pts)
            p2 = [p[:2] for p in pts[:3]]
            assert orient2d(*p2) == rational_orient2d(*p2)

    def test_filter_soundness(self):
        # wherever the filtered path decides, forcing exact agrees
        rng = np.random.default_rng(11)
        for _ in range(500):
            pts = [tuple(float(x) for x in rng.normal(0, 1, 3)) for _ in range(4)]
            fast = orient3d(*pts)
            with forced_exact():
                assert exact_orient3d(*pts) == fast


class TestExactCoordinates:
    def test_float_embedding(self):
        x, y, z = exact_coordinates((0.1, 0.0, 0.0))
        assert x == mpq(3602879701896397, 36028797018963968)
        assert y == 0 and z == 0

    def test_lpi_axis_aligned(self):
        lpi = LPIPoint(
            (1.0, 1.0, -1.0), (1.0, 1.0, 2.0),
            (0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0),
        )
        assert exact_coordinates(lpi) == (1, 1, 0)

    def test_ssi_symmetric_crossing(self):
        ssi = SSIPoint((0.0, 0.0, 0.0), (2.0, 2.0, 0.0), (0.0, 2.0, 0.0), (2.0, 0.0, 0.0))
        assert exact_coordinates(ssi) == (1, 1, 0)

    def test_lpi_parallel_raises(self):
        lpi = LPIPoint(
            (0.0, 0.0, 1.0), (1.0, 0.0, 1.0),
            (0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0),
        )
        with pytest.raises(DegenerateConstruction):
            exact_coordinates(lpi)

    def test_ssi_parallel_and_skew_raise(self):
        par = SSIPoint((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (1.0, 1.0, 0.0))
        with pytest.raises(DegenerateConstruction):
            exact_coordinates(par)
        skew = SSIPoint((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 1.0), (0.0, -1.0, 1.0))
        with pytest.raises(DegenerateConstruction):
            exact_coordinates(skew)


coord = st.integers(-512, 512).map(lambda n: n / 16.0)
point3 = st.tuples(coord, coord, coord)


class TestProperties:
    @settings(max_examples=200, deadline=None)
    @given(point3, point3, point3, point3)
    def test_antisymmetry_orient3d(self, a, b, c, d):
        base = orient3d(a, b, c, d)
        assert orient3d(b, a, c, d) == -base
        assert orient3d(a, c, b, d) == -base
        assert orient3d(a, b, d, c) == -base

    @settings(max_examples=200, deadline=None)
    @given(point3, point3, point3)
    def test_antisymmetry_orient2d(self, a, b, c):
        base = orient2d(a, b, c, 2)
        assert orient2d(b, a, c, 2) == -base
        assert orient2d(a, c, b, 2) == -base

    @settings(max_examples=200, deadline=None)
    @given(point3, point3, point3, point3, st.integers(-4, 4))
    def test_translation_invariance_power_of_two(self, a, b, c, d, k):
        off = float(2 ** abs(k)) * (1 if k >= 0 else -1)
        shift = lambda p: (p[0] + off, p[1] + off, p[2] + off)
        assert orient3d(a, b, c, d) == orient3d(shift(a), shift(b), shift(c), shift(d))


class TestCounters:
    def test_paths_counted(self):
        numeric.reset_call_counts()
        orient3d((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
        orient3d((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.3, 0.4, 0.0))
        c = numeric.get_call_counts()
        assert c[("orient3d", "filtered")] == 1  # clean sign
        assert c[("orient3d", "exact")] == 1  # exact zero needs fallback

    def test_instrumentation_neutrality(self):
        pts = ((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.2, 0.2, 0.7))
        before = orient3d(*pts)
        numeric.reset_call_counts()
        assert orient3d(*pts) == before

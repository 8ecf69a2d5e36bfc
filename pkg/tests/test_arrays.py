import numpy as np
import pytest

from rissim.arrays import (
    AnglePair,
    ArrayGeometry,
    UlaGeometry,
    dirichlet_kernel,
    element_index,
    inner_product_magnitude,
    steering_matrix,
    ula_steering,
    upa_steering,
)


def reference_upa(geom, azimuth, elevation, sign=-1.0):
    """Independent elementwise construction of the planar response (test oracle)."""
    out = np.empty(geom.m, dtype=complex)
    for m in range(1, geom.m + 1):
        i, j = element_index(m, geom.m_h)
        phase = 2 * np.pi * (
            i * geom.d_h * np.cos(elevation) * np.sin(azimuth) + j * geom.d_v * np.sin(elevation)
        )
        out[m - 1] = np.exp(sign * 1j * phase)
    return out


class TestElementIndex:
    def test_first_element(self):
        assert element_index(1, 8) == (0, 0)

    def test_last_of_first_row(self):
        assert element_index(8, 8) == (7, 0)

    def test_first_of_second_row(self):
        assert element_index(9, 8) == (0, 1)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            element_index(0, 8)


class TestGeometryValidation:
    def test_rejects_zero_counts(self):
        with pytest.raises(ValueError):
            ArrayGeometry(0, 4, 0.25, 0.25)

    def test_rejects_nonpositive_spacing(self):
        with pytest.raises(ValueError):
            ArrayGeometry(4, 4, 0.0, 0.25)
        with pytest.raises(ValueError):
            UlaGeometry(4, -0.5)

    def test_angle_pair_range(self):
        with pytest.raises(ValueError):
            AnglePair(2.0, 0.0)
        with pytest.raises(ValueError):
            AnglePair(0.0, -2.0)


class TestUpaSteering:
    def test_boresight_is_all_ones(self):
        geom = ArrayGeometry(4, 4, 0.25, 0.5)
        v = upa_steering(geom, AnglePair(0.0, 0.0))
        np.testing.assert_allclose(v, np.ones(16))

    def test_unit_modulus_and_norm(self):
        geom = ArrayGeometry(8, 8, 0.25, 0.25)
        rng = np.random.default_rng(1)
        for _ in range(20):
            pair = AnglePair(rng.uniform(-np.pi / 2, np.pi / 2), rng.uniform(-np.pi / 2, np.pi / 2))
            v = upa_steering(geom, pair)
            np.testing.assert_allclose(np.abs(v), 1.0, atol=1e-12)
            assert np.linalg.norm(v) ** 2 == pytest.approx(geom.m, rel=1e-12)

    def test_2x2_endfire_phases(self):
        # direct evaluation: phases (0, -pi/2, 0, -pi/2) in element order
        geom = ArrayGeometry(2, 2, 0.25, 0.25)
        v = upa_steering(geom, AnglePair(np.pi / 2, 0.0))
        expected = np.exp(-1j * np.array([0.0, np.pi / 2, 0.0, np.pi / 2]))
        np.testing.assert_allclose(v, expected, atol=1e-12)

    def test_matches_elementwise_reference(self):
        geom = ArrayGeometry(5, 3, 0.3, 0.45)
        rng = np.random.default_rng(2)
        for _ in range(10):
            az = rng.uniform(-np.pi / 2, np.pi / 2)
            el = rng.uniform(-np.pi / 2, np.pi / 2)
            np.testing.assert_allclose(
                upa_steering(geom, AnglePair(az, el)), reference_upa(geom, az, el), atol=1e-12
            )

    def test_steering_matrix_columns(self):
        geom = ArrayGeometry(4, 4, 0.25, 0.25)
        az = np.array([0.1, -0.4])
        el = np.array([0.2, 0.9])
        mat = steering_matrix(geom, az, el)
        for t in range(2):
            np.testing.assert_allclose(mat[:, t], upa_steering(geom, AnglePair(az[t], el[t])))


class TestUlaSteering:
    def test_broadside_all_ones(self):
        v = ula_steering(UlaGeometry(6, 0.5), 0.0)
        np.testing.assert_allclose(v, np.ones(6))

    def test_norm(self):
        v = ula_steering(UlaGeometry(32, 0.5), 0.7)
        assert np.linalg.norm(v) ** 2 == pytest.approx(32, rel=1e-12)

    def test_endfire_phases(self):
        v = ula_steering(UlaGeometry(4, 0.5), np.pi / 2)
        expected = np.exp(-1j * np.pi * np.arange(4))
        np.testing.assert_allclose(v, expected, atol=1e-12)


class TestInnerProduct:
    def test_self_product_equals_m(self):
        geom = ArrayGeometry(8, 8, 0.25, 0.25)
        pair = AnglePair(0.3, -0.5)
        assert inner_product_magnitude(geom, pair, pair) == pytest.approx(geom.m, rel=1e-12)

    def test_matches_brute_force(self):
        geom = ArrayGeometry(8, 8, 0.25, 0.25)
        rng = np.random.default_rng(3)
        for _ in range(50):
            a1 = AnglePair(rng.uniform(-np.pi / 2, np.pi / 2), rng.uniform(-np.pi / 2, np.pi / 2))
            a2 = AnglePair(rng.uniform(-np.pi / 2, np.pi / 2), rng.uniform(-np.pi / 2, np.pi / 2))
            brute = np.abs(np.vdot(reference_upa(geom, a2.azimuth, a2.elevation),
                                   reference_upa(geom, a1.azimuth, a1.elevation)))
            closed = inner_product_magnitude(geom, a1, a2)
            assert abs(closed - brute) <= 1e-10 * geom.m

    def test_conjugation_convention_irrelevant(self):
        geom = ArrayGeometry(6, 4, 0.25, 0.4)
        rng = np.random.default_rng(4)
        for _ in range(20):
            a1 = AnglePair(rng.uniform(-np.pi / 2, np.pi / 2), rng.uniform(-np.pi / 2, np.pi / 2))
            a2 = AnglePair(rng.uniform(-np.pi / 2, np.pi / 2), rng.uniform(-np.pi / 2, np.pi / 2))
            minus = np.abs(np.vdot(reference_upa(geom, a2.azimuth, a2.elevation, -1),
                                   reference_upa(geom, a1.azimuth, a1.elevation, -1)))
            plus = np.abs(np.vdot(reference_upa(geom, a2.azimuth, a2.elevation, +1),
                                  reference_upa(geom, a1.azimuth, a1.elevation, +1)))
            assert minus == pytest.approx(plus, abs=1e-12 * geom.m)
            assert inner_product_magnitude(geom, a1, a2) == pytest.approx(minus, abs=1e-10 * geom.m)


def test_dirichlet_kernel_scalar_and_array():
    assert dirichlet_kernel(0.0, 8, 0.25) == 1.0
    vals = dirichlet_kernel(np.array([0.0, 0.5]), 8, 0.25)
    assert vals.shape == (2,)

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rollphase.errors import DegenerateFrame, DomainViolation
from rollphase.geometry import (check_beta, connection_matrix, finite_rotation_check, gauss_velocity,
                                gauss_vector, local_frame, s3_from_angles)

angles = st.floats(-10, 10, allow_nan=False)
tilts = st.floats(1e-3, math.pi - 1e-3)


def test_gauss_vector_poles_and_equator():
    np.testing.assert_allclose(gauss_vector(0.3, 0.0), [0, 0, 1], atol=1e-15)
    np.testing.assert_allclose(gauss_vector(0.3, math.pi), [0, 0, -1], atol=1e-15)
    np.testing.assert_allclose(gauss_vector(math.pi / 2, math.pi / 2), [0, 1, 0], atol=1e-15)


def test_check_beta_rejects_outside_range():
    with pytest.raises(DomainViolation):
        check_beta(-0.1)
    with pytest.raises(DomainViolation):
        check_beta(math.pi + 0.1)
    # round-off just outside the range is clipped
    assert check_beta(math.pi + 1e-12) == pytest.approx(math.pi)


@given(angles, tilts)
def test_frame_is_right_handed_orthonormal(theta, beta):
    f = local_frame(theta, beta)
    E = np.stack([f.e1, f.e2, f.e3])
    np.testing.assert_allclose(E @ E.T, np.eye(3), atol=1e-12)
    assert np.linalg.det(E) == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(f.e3, gauss_vector(theta, beta), atol=1e-15)


def test_frame_degenerate_at_pole():
    with pytest.raises(DegenerateFrame):
        local_frame(0.0, 0.0)


@given(angles, tilts, angles, angles)
def test_connection_matrix_antisymmetric(theta, beta, dth, dbe):
    w = connection_matrix(theta, beta, dth, dbe)
    assert np.array_equal(w, -np.swapaxes(w, -1, -2))


@given(angles, tilts, st.floats(-3, 3), st.floats(-3, 3))
def test_frame_derivative_matches_connection(theta, beta, dth, dbe):
    h = 1e-6
    fp = local_frame(theta + h * dth, beta + h * dbe)
    fm = local_frame(theta - h * dth, beta - h * dbe)
    f = local_frame(theta, beta)
    E = np.stack([f.e1, f.e2, f.e3])
    dE = (np.stack([fp.e1, fp.e2, fp.e3]) - np.stack([fm.e1, fm.e2, fm.e3])) / (2 * h)
    w = connection_matrix(theta, beta, dth, dbe)
    np.testing.assert_allclose(dE, np.einsum("ji,jx->ix", w, E), atol=1e-7)


@settings(max_examples=50)
@given(angles, tilts, st.floats(-3, 3), st.floats(-3, 3))
def test_gauss_velocity_is_tangent_and_matches_fd(theta, beta, dth, dbe):
    v = gauss_velocity(theta, beta, dth, dbe)
    assert abs(np.dot(v, gauss_vector(theta, beta))) < 1e-12
    h = 1e-6
    fd = (gauss_vector(theta + h * dth, beta + h * dbe) - gauss_vector(theta - h * dth, beta - h * dbe)) / (2 * h)
    np.testing.assert_allclose(v, fd, atol=1e-7)


def test_finite_rotation_residual_is_second_order():
    t = np.linspace(0, 1, 201)
    r1 = finite_rotation_check(2 * math.pi * t, 1.0 + 0.3 * np.sin(2 * math.pi * t))
    t = np.linspace(0, 1, 401)
    r2 = finite_rotation_check(2 * math.pi * t, 1.0 + 0.3 * np.sin(2 * math.pi * t))
    assert 3.5 < r1 / r2 < 4.5


@given(angles, angles, tilts)
def test_s3_points_are_unit_and_cover_the_gauss_vector(phi, theta, beta):
    z = s3_from_angles(phi, theta, beta)
    assert np.linalg.norm(z) == pytest.approx(1.0, abs=1e-14)
    # Hopf projection (2 Re z1 conj z2, 2 Im z1 conj z2, |z1|^2 - |z2|^2)
    w = z[0] * np.conj(z[1])
    g = np.array([2 * w.real, 2 * w.imag, abs(z[0]) ** 2 - abs(z[1]) ** 2])
    np.testing.assert_allclose(g, gauss_vector(theta, beta), atol=1e-13)

import math
import warnings

import numpy as np
import pytest

from oracles import LATITUDES, WOBBLES, small_circle_table
from rollphase.errors import CompassJumpWarning, DegenerateCurve, NonSmoothCurve, NotSimple
from rollphase.curvature import (arclength, compass_angle, corollary_check, frenet_check, geodesic_curvature,
                                 lemma_omega_check, second_kind_curvature, total_curvature)
from rollphase.lift import horizontal_lift
from rollphase.motion import constant_tilt, sample, table_motion, tilt_sweep, wobble


@pytest.mark.parametrize("beta0", LATITUDES)
def test_latitude_closed_forms(beta0):
    p = sample(constant_tilt(beta0), 1024)
    assert arclength(p).L == pytest.approx(2 * math.pi * math.sin(beta0), abs=1e-12)
    prof = geodesic_curvature(p)
    np.testing.assert_allclose(prof.kappa_g, -1 / math.tan(beta0), atol=1e-12)
    assert total_curvature(p) == pytest.approx(-2 * math.pi * math.cos(beta0), abs=1e-12)
    # an eastward latitude points west-facing in the compass frame: phi_c = pi
    np.testing.assert_allclose(prof.phi_c, math.pi, atol=1e-14)


def test_degenerate_curve():
    with pytest.raises(DegenerateCurve):
        arclength(sample(constant_tilt(0.0), 256))


def test_compass_jump_warning():
    with pytest.warns(CompassJumpWarning):
        compass_angle(sample(wobble(1.0, 0.4, m=100), 256))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        compass_angle(sample(wobble(1.0, 0.4, m=2), 1024))


@pytest.mark.parametrize("w", WOBBLES)
def test_frame_is_orthonormal(w):
    assert frenet_check(sample(wobble(*w), 1024)) < 1e-12


def test_second_kind_identity():
    # g''.nu = -g'.nu' holds because g'.nu = 0 along the curve
    a, b = second_kind_curvature(sample(wobble(1.0, 0.3, 2), 4096))
    assert np.max(np.abs(a - b)) < 1e-8


def test_second_kind_equals_kappa_on_latitude():
    p = sample(constant_tilt(1.0), 4096)
    a, _ = second_kind_curvature(p)
    np.testing.assert_allclose(a, geodesic_curvature(p).kappa_g, atol=1e-8)


@pytest.mark.xfail(strict=True, reason="g''.nu equals -(dphi_c + cos(beta) dtheta)/ds, which differs from "
                                       "kappa_g = (dphi_c - cos(beta) dtheta)/ds wherever the compass angle turns")
def test_second_kind_equals_kappa_on_wobble():
    p = sample(wobble(1.0, 0.3, 2), 4096)
    a, _ = second_kind_curvature(p)
    np.testing.assert_allclose(a, geodesic_curvature(p).kappa_g, atol=1e-6)


def test_second_kind_formula_with_compass_rate():
    p = sample(wobble(1.0, 0.3, 2), 4096)
    a, _ = second_kind_curvature(p)
    prof = geodesic_curvature(p)
    speed = arclength(p).speed
    np.testing.assert_allclose(a, -(prof.dphi_c + np.cos(p.beta) * p.dtheta) / speed, atol=1e-7)


@pytest.mark.parametrize("w", WOBBLES)
def test_corollary_on_wobbles(w):
    r = corollary_check(sample(wobble(*w), 4096))
    assert (r.I_plus, r.I_minus) == (1, 1)
    assert max(r.residuals) < 1e-8
    assert r.residuals == pytest.approx(r.stated_residuals)
    assert abs(r.compass_increment) < 1e-9


@pytest.mark.parametrize("reverse,I_plus", [(False, 0), (True, 2)])
def test_corollary_index_sign(reverse, I_plus):
    r = corollary_check(sample(table_motion(*small_circle_table(0.4, reverse=reverse)), 4096))
    assert r.I_plus == I_plus
    assert max(r.residuals) < 1e-5
    # the opposite sign convention is off by a full 4 pi
    assert min(r.stated_residuals) == pytest.approx(4 * math.pi, abs=1e-5)


def test_corollary_rejects_non_smooth_curves():
    with pytest.raises(NonSmoothCurve):
        corollary_check(sample(tilt_sweep(0.8, 0.0), 1024))
    with pytest.raises(NonSmoothCurve):
        corollary_check(sample(table_motion([0, 0.5, 1], [0, math.pi, 2 * math.pi], [0.5, 1.0, 0.5]), 256))
    with pytest.raises(NotSimple):
        corollary_check(sample(constant_tilt(1.0, n=2), 1024))


def test_lemma_for_lift_increments():
    p = sample(wobble(1.0, 0.3, 2), 4096)
    step, glob = lemma_omega_check(p, horizontal_lift(p))
    assert step < 1e-10 and glob < 1e-9

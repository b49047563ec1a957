import math

import numpy as np
import pytest

from oracles import LATITUDES, WOBBLES, cap_area, latitude_area, latitude_phase, small_circle_table, wobble_phase
from rollphase.errors import NotSimple, PointOnCurve, PoleHit
from rollphase.geometry import gauss_vector
from rollphase.motion import ReversedMotion, constant_tilt, sample, table_motion, tilt_sweep, wobble
from rollphase.topology import (ChartedCurve, curve_topology, enclosed_area, find_self_intersection, is_simple,
                                main_theorem_check, pole_indices, signed_area, stereographic, winding_number)


def circle(n=400, r=1.0, c=0.0, turns=1):
    s = np.linspace(0, 2 * math.pi * turns, n + 1)
    return c + r * np.exp(1j * s)


def octant(k=300):
    """Boundary of the first octant, counterclockwise seen from outside."""
    s = np.linspace(0, math.pi / 2, k, endpoint=False)
    arcs = [np.stack([np.cos(s), np.sin(s), 0 * s], 1),
            np.stack([0 * s, np.cos(s), np.sin(s)], 1),
            np.stack([np.sin(s), 0 * s, np.cos(s)], 1)]
    pts = np.concatenate(arcs)
    return np.concatenate([pts, pts[:1]])


def test_winding_numbers():
    z = circle()
    assert winding_number(z, 0.0) == 1
    assert winding_number(z[::-1], 0.0) == -1
    assert winding_number(z, 3.0) == 0
    assert winding_number(circle(turns=2), 0.1) == 2
    with pytest.raises(PointOnCurve):
        winding_number(z, 1.0)


def test_signed_area():
    assert signed_area(circle(4000)) == pytest.approx(math.pi, rel=1e-5)
    assert signed_area(circle(4000)[::-1]) == pytest.approx(-math.pi, rel=1e-5)


def test_self_intersection():
    assert find_self_intersection(circle()) is None
    s = np.linspace(0, 2 * math.pi, 401)
    eight = np.sin(s) + 1j * np.sin(s) * np.cos(s)
    assert find_self_intersection(eight) is not None
    assert not is_simple(circle(turns=2))


def test_stereographic_pole_hit():
    with pytest.raises(PoleHit):
        stereographic(np.array([[0, 0, -1.0]]), "north")
    with pytest.raises(PoleHit):
        stereographic(np.array([[0, 0, 1.0]]), "south")


def test_octant_area():
    pts = octant()
    assert enclosed_area(pts, "left") == pytest.approx(math.pi / 2, abs=1e-6)
    assert enclosed_area(pts, "right") == pytest.approx(3.5 * math.pi, abs=1e-6)
    assert enclosed_area(pts[::-1], "left") == pytest.approx(3.5 * math.pi, abs=1e-6)


@pytest.mark.parametrize("beta0", LATITUDES)
def test_latitude_indices_and_areas(beta0):
    t = curve_topology(sample(constant_tilt(beta0), 2048))
    assert (t.simple, t.I_plus, t.I_minus) == (True, 1, 1)
    assert t.A_plus == pytest.approx(latitude_area(beta0), abs=1e-6)
    assert t.A_plus + t.A_minus == pytest.approx(4 * math.pi, abs=1e-12)


@pytest.mark.parametrize("reverse,I_plus", [(False, 0), (True, 2)])
def test_small_circle_away_from_poles(reverse, I_plus):
    p = sample(table_motion(*small_circle_table(0.4, reverse=reverse)), 4096)
    assert pole_indices(p.gauss()) == (I_plus, 2 - I_plus)
    r = main_theorem_check(p)
    assert r.topology.A_plus == pytest.approx(cap_area(0.4) if I_plus == 0 else 4 * math.pi - cap_area(0.4), abs=1e-5)
    assert r.max_residual < 2e-3


def test_pole_indices_reverse_swap():
    m = wobble(1.0, 0.3, 2)
    fwd = pole_indices(sample(m, 1024).gauss())
    bwd = pole_indices(sample(ReversedMotion(m), 1024).gauss())
    assert fwd == (1, 1) and bwd == (1, 1)


@pytest.mark.parametrize("w", WOBBLES)
def test_main_theorem_on_wobbles(w):
    r = main_theorem_check(sample(wobble(*w), 4096))
    assert r.delta_g == pytest.approx(wobble_phase(*w), abs=1e-12)
    assert r.max_residual < 1e-5


def test_main_theorem_through_the_pole():
    # the clamp makes the curve hug the pole; the extrapolated areas follow
    r = main_theorem_check(sample(tilt_sweep(0.8, 0.0), 4096))
    assert r.topology.I_plus == 1
    assert r.max_residual < 2e-3


def test_double_latitude_is_not_simple():
    with pytest.raises(NotSimple):
        main_theorem_check(sample(constant_tilt(1.0, n=2), 1024))
    assert not curve_topology(sample(constant_tilt(1.0, n=2), 1024)).simple


def test_charted_curve_left_membership():
    pts = sample(constant_tilt(1.0), 1024).gauss()
    cc = ChartedCurve(pts)
    assert cc.left(np.array([0, 0, 1.0]))
    assert not cc.left(np.array([0, 0, -1.0]))
    assert cc.left(gauss_vector(0.3, 0.5))
    assert latitude_phase(1.0) == pytest.approx(latitude_area(1.0) - 2 * math.pi)

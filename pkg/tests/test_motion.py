import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import small_circle_table
from rollphase.errors import (BasePointMismatch, ClosureViolation, DomainViolation, LipschitzWarning,
                              NonPositiveRadius)
from rollphase.motion import (ConcatenatedMotion, ReversedMotion, constant_tilt, lipschitz_estimate,
                              read_table, sample, table_motion, tilt_sweep, wobble)


def test_constant_tilt_state():
    m = constant_tilt(0.7, n=2)
    s = m.evaluate(np.array([0.0, 0.25, 1.0]))
    np.testing.assert_allclose(s.theta, [0, math.pi, 4 * math.pi])
    np.testing.assert_allclose(s.beta, 0.7)
    np.testing.assert_allclose(s.dtheta, 4 * math.pi)
    assert m.turns == 2 and m.is_closed()


@pytest.mark.parametrize("bad", [dict(a=0), dict(b=-1.0)])
def test_nonpositive_radius(bad):
    with pytest.raises(NonPositiveRadius):
        constant_tilt(0.5, **bad)


def test_wobble_leaving_the_sphere_is_rejected():
    with pytest.raises(DomainViolation):
        wobble(0.2, 0.5)


def test_tilt_sweep_can_touch_the_pole():
    m = tilt_sweep(0.8, 0.0)
    assert m.evaluate(np.array([0.5])).beta[0] == pytest.approx(0.0, abs=1e-15)


def test_wobble_derivatives_match_finite_differences():
    m = wobble(1.0, 0.4, m=3, n=2)
    t = np.linspace(0.05, 0.95, 7)
    h = 1e-6
    sp, sm, s = m.evaluate(t + h), m.evaluate(t - h), m.evaluate(t)
    np.testing.assert_allclose(s.dtheta, (sp.theta - sm.theta) / (2 * h), rtol=1e-8)
    np.testing.assert_allclose(s.dbeta, (sp.beta - sm.beta) / (2 * h), atol=1e-6)
    np.testing.assert_allclose(s.ddbeta, (sp.dbeta - sm.dbeta) / (2 * h), atol=1e-4)


def test_table_must_close():
    with pytest.raises(ClosureViolation):
        table_motion([0, 0.5, 1], [0, 1, 2], [1, 1.2, 1])


def test_table_rejects_bad_times():
    with pytest.raises(ValueError):
        table_motion([0, 0.7, 0.5, 1], [0, 1, 2, 2 * math.pi], [1, 1, 1, 1])


def test_short_table_has_corners_at_rows():
    m = table_motion([0, 0.5, 1], [0, math.pi, 2 * math.pi], [0.5, 1.0, 0.5])
    assert m.breakpoints == (0.5,)
    right = m.evaluate(np.array([0.5]), 1)
    left = m.evaluate(np.array([0.5]), -1)
    assert right.dbeta[0] == pytest.approx(-1.0)
    assert left.dbeta[0] == pytest.approx(1.0)


def test_dense_table_reproduces_smooth_motion():
    t = np.linspace(0, 1, 4097)
    ref = wobble(1.0, 0.3, m=2)
    s = ref.evaluate(t)
    m = table_motion(t, s.theta, s.beta)
    assert m.breakpoints == ()
    q = np.linspace(0, 1, 333)
    got, want = m.evaluate(q), ref.evaluate(q)
    np.testing.assert_allclose(got.beta, want.beta, atol=1e-6)
    np.testing.assert_allclose(got.dbeta, want.dbeta, atol=1e-4)


def test_read_table(tmp_path):
    f = tmp_path / "loop.txt"
    f.write_text("# t theta beta\n0 0 1.0\n0.5 3.141592653589793 1.2\n\n1 6.283185307179586 1.0\n")
    t, theta, beta = read_table(f)
    assert t.tolist() == [0, 0.5, 1]
    assert table_motion(t, theta, beta).turns == 1


def test_read_table_reports_line(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("0 0 1\n0.5 x 1\n")
    with pytest.raises(ValueError, match=":2:"):
        read_table(f)


def test_reversed_motion():
    m = wobble(1.0, 0.3)
    r = ReversedMotion(m)
    t = np.array([0.1, 0.6])
    np.testing.assert_allclose(r.evaluate(t).beta, m.evaluate(1 - t).beta)
    np.testing.assert_allclose(r.evaluate(t).dtheta, -m.evaluate(1 - t).dtheta)


def test_concatenation_needs_a_shared_base_point():
    with pytest.raises(BasePointMismatch):
        ConcatenatedMotion(constant_tilt(math.pi / 3), constant_tilt(2 * math.pi / 3))
    c = ConcatenatedMotion(constant_tilt(1.0), wobble(1.0, 0.2))
    assert c.breakpoints == (0.5,)
    s = c.evaluate(np.array([1.0]))
    assert s.theta[0] == pytest.approx(4 * math.pi)


def test_sample_grid_and_readonly():
    p = sample(constant_tilt(1.0), 256)
    assert p.n_intervals == 256 and p.h == pytest.approx(1 / 256)
    with pytest.raises(ValueError):
        p.beta[0] = 2.0
    with pytest.raises(ValueError):
        sample(constant_tilt(1.0), 100)


def test_sample_stores_one_sided_derivatives_at_corners():
    m = table_motion([0, 0.5, 1], [0, math.pi, 2 * math.pi], [0.5, 1.0, 0.5])
    p = sample(m, 256)
    assert p.dbeta[128] == pytest.approx(-1.0)
    assert p.dbeta_left[128] == pytest.approx(1.0)


def test_lipschitz_warning():
    p = sample(constant_tilt(1.0, n=200), 256)
    with pytest.warns(LipschitzWarning):
        lipschitz_estimate(p)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        lipschitz_estimate(sample(constant_tilt(1.0), 256))


@settings(max_examples=25, deadline=None)
@given(st.floats(0.3, 2.8), st.floats(0.0, 0.29), st.integers(1, 4), st.integers(-3, 3))
def test_wobbles_close(beta0, amp, m, n):
    mo = wobble(beta0, amp, m=m, n=n)
    assert mo.is_closed() and mo.turns == n


def test_small_circle_table_has_zero_turns():
    assert table_motion(*small_circle_table(0.4)).turns == 0

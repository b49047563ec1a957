"""Arclength, compass angle and geodesic curvature of the Gauss curve.

The compass angle ``phi_c`` fixes the direction of the curve against the
east/north frame by ``cos(phi_c) = -sin(beta) dtheta/ds`` and
``sin(phi_c) = dbeta/ds``; the curvature used throughout is
``kappa_g ds = dphi_c - cos(beta) dtheta``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import cumulative_simpson

from .errors import CompassJumpWarning, DegenerateCurve, NonSmoothCurve, NotSimple
from .geometry import gauss_velocity, gauss_vector, local_frame
from .motion import SampledPath
from .phase import interval_integrals, running_geometric_phase
from .regularize import clamp
from .tolerances import COMPASS_JUMP, DEFAULT_EPS_LADDER, DEGENERATE_LENGTH, STATIONARY_SPEED


class ArclengthPath(NamedTuple):
    s: np.ndarray
    L: float
    speed: np.ndarray
    stationary: np.ndarray


class CompassProfile(NamedTuple):
    phi_c: np.ndarray
    kappa_g: np.ndarray
    dphi_c: np.ndarray


def _speed(theta, beta, dtheta, dbeta):
    return np.sqrt((np.sin(beta) * dtheta) ** 2 + dbeta**2)


def _cumulate(y, h):
    out = np.zeros(y.size)
    if y.size >= 3:
        out[1:] = cumulative_simpson(y, dx=h)
    else:
        out[1:] = np.cumsum(0.5 * h * (y[1:] + y[:-1]))
    return out


def arclength(path: SampledPath) -> ArclengthPath:
    """Cumulative length ``s(t)`` of the Gauss curve.

    Raises
    ------
    DegenerateCurve
        If the total length is below 1e-9.

    Examples
    --------
    >>> from rollphase.motion import constant_tilt, sample
    >>> round(arclength(sample(constant_tilt(math.pi / 6), 256)).L / math.pi, 12)
    1.0
    """
    speed = _speed(path.theta, path.beta, path.dtheta, path.dbeta)
    s = np.zeros(path.t.size)
    np.cumsum(interval_integrals(path, _speed), out=s[1:])
    # guard the monotonicity against quadrature wiggle across corners
    s = np.maximum.accumulate(s)
    L = float(s[-1])
    if L < DEGENERATE_LENGTH:
        raise DegenerateCurve("the Gauss vector does not move (zero length curve)")
    return ArclengthPath(s, L, speed, speed < STATIONARY_SPEED)


def _fill_stationary(values, stationary):
    """Hold values constant across stationary nodes."""
    if not stationary.any():
        return values
    if stationary.all():
        raise DegenerateCurve("the Gauss curve is stationary everywhere")
    idx = np.where(~stationary, np.arange(values.size), -1)
    idx = np.maximum.accumulate(idx)
    first = int(np.argmax(~stationary))
    idx[idx < 0] = first
    return values[idx]


def compass_angle(path: SampledPath) -> np.ndarray:
    """Continuously unwrapped compass angle at every node.

    Emits :class:`~rollphase.errors.CompassJumpWarning` if the angle turns
    by more than pi/2 between neighbouring nodes, which means the grid is
    too coarse for the motion.
    """
    x = -np.sin(path.beta) * path.dtheta
    y = path.dbeta
    speed = np.hypot(x, y)
    stationary = speed < STATIONARY_SPEED
    raw = _fill_stationary(np.arctan2(y, x), stationary)
    phi = np.unwrap(raw)
    if phi.size > 1 and np.max(np.abs(np.diff(phi))) > COMPASS_JUMP:
        warnings.warn("compass angle turns by more than pi/2 in one step; refine the grid",
                      CompassJumpWarning, stacklevel=2)
    return phi


def compass_rate(path: SampledPath) -> np.ndarray:
    """``dphi_c/dt`` from the second derivatives of the motion (0 where stationary)."""
    sb, cb = np.sin(path.beta), np.cos(path.beta)
    x = -sb * path.dtheta
    y = path.dbeta
    xd = -cb * path.dbeta * path.dtheta - sb * path.ddtheta
    yd = path.ddbeta
    r2 = x * x + y * y
    ok = r2 >= STATIONARY_SPEED**2
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(ok, (x * yd - y * xd) / r2, 0.0)


def geodesic_curvature(path: SampledPath) -> CompassProfile:
    """Compass angle, curvature ``kappa_g = (dphi_c/dt - cos(beta) theta')/(ds/dt)``
    and the compass rate.  ``kappa_g`` is NaN at stationary nodes.

    Raises
    ------
    DegenerateCurve
        If the curve never moves.
    """
    al = arclength(path)
    phi = compass_angle(path)
    rate = compass_rate(path)
    with np.errstate(divide="ignore", invalid="ignore"):
        kappa = (rate - np.cos(path.beta) * path.dtheta) / al.speed
    kappa = np.where(al.stationary, np.nan, kappa)
    return CompassProfile(phi, kappa, rate)


def curvature_density(path: SampledPath) -> np.ndarray:
    """``kappa_g ds/dt`` per node (0 at stationary nodes)."""
    speed = _speed(path.theta, path.beta, path.dtheta, path.dbeta)
    dens = compass_rate(path) - np.cos(path.beta) * path.dtheta
    return np.where(speed < STATIONARY_SPEED, 0.0, dens)


def running_total_curvature(path: SampledPath) -> np.ndarray:
    """``int_0^{s(t)} kappa_g ds`` at every node."""
    return _cumulate(curvature_density(path), path.h)


def total_curvature(path: SampledPath) -> float:
    """``oint kappa_g ds`` by composite Simpson."""
    return float(running_total_curvature(path)[-1])


def _periodic_derivative(f, h):
    """Fourth-order central difference of node values of a closed curve."""
    g = f[:-1]
    d = (np.roll(g, 2, 0) - 8 * np.roll(g, 1, 0) + 8 * np.roll(g, -1, 0) - np.roll(g, -2, 0)) / (12 * h)
    return np.concatenate([d, d[:1]])


def frame_vectors(path: SampledPath):
    """Unit tangent ``T = g'(s)``, the normal ``nu`` built from the compass
    angle as ``-sin(phi_c) e1 + cos(phi_c) e2``, and the speed."""
    f = local_frame(path.theta, path.beta)
    gd = gauss_velocity(path.theta, path.beta, path.dtheta, path.dbeta)
    speed = np.linalg.norm(gd, axis=-1)
    if np.any(speed < STATIONARY_SPEED):
        raise DegenerateCurve("frame undefined at stationary nodes")
    T = gd / speed[:, None]
    phi = compass_angle(path)
    nu = -np.sin(phi)[:, None] * f.e1 + np.cos(phi)[:, None] * f.e2
    return T, nu, speed


def frenet_check(path: SampledPath) -> float:
    """Largest deviation from ``|T| = |nu| = 1`` and ``T . nu = 0``."""
    T, nu, _ = frame_vectors(path)
    return float(max(np.max(np.abs(np.linalg.norm(T, axis=-1) - 1)),
                     np.max(np.abs(np.linalg.norm(nu, axis=-1) - 1)),
                     np.max(np.abs(np.sum(T * nu, axis=-1)))))


def second_kind_curvature(path: SampledPath):
    """``g''(s) . nu`` and ``-g'(s) . nu'(s)`` by finite differences.

    Derivatives along the closed curve are fourth-order periodic central
    differences in ``t`` divided by the speed.  Requires a smooth closed
    motion without stationary points.
    """
    T, nu, speed = frame_vectors(path)
    Tp = _periodic_derivative(T, path.h) / speed[:, None]
    nup = _periodic_derivative(nu, path.h) / speed[:, None]
    return np.sum(Tp * nu, axis=-1), -np.sum(T * nup, axis=-1)


@dataclass(frozen=True)
class CorollaryResult:
    """Index formula data for one curve.

    ``residuals`` compare ``delta_g`` with ``2 pi (I+ - 1)``,
    ``2 pi (1 - I-)`` and ``pi (I+ - I-)`` each plus ``oint kappa_g ds``.
    ``stated_residuals`` use the opposite index signs,
    ``2 pi (1 - I+)``, ``2 pi (I- - 1)`` and ``pi (I- - I+)``; the two sets
    coincide when ``I+ = 1``.
    """

    delta_g: float
    total_curvature: float
    compass_increment: float
    I_plus: int
    I_minus: int
    residuals: tuple
    stated_residuals: tuple


def corollary_check(path: SampledPath, epsilon: float = DEFAULT_EPS_LADDER[-1]) -> CorollaryResult:
    """Index formula for the geometric phase on the curve clamped at ``epsilon``.

    Raises
    ------
    NotSimple
        If the regularized curve intersects itself (checked first).
    NonSmoothCurve
        If the motion has corners or the clamp is active somewhere; the
        formula has no corner terms.
    DegenerateCurve
        If the curve does not move.
    """
    from .topology import ChartedCurve, is_simple, pole_indices

    rp = clamp(path, epsilon)
    reg = rp.as_sampled()
    pts = reg.gauss()
    cc = ChartedCurve(pts)
    if not is_simple(cc.plane):
        raise NotSimple("corollary needs a simple Gauss curve")
    if path.breakpoints:
        raise NonSmoothCurve("motion has corners")
    if rp.active.any() and not np.all(rp.active):
        raise NonSmoothCurve("the tilt clamp switches on and off along the curve")
    arclength(reg)  # raises on degenerate curves
    ip, im = pole_indices(pts)
    dg = float(running_geometric_phase(reg)[-1])
    k = total_curvature(reg)
    phi = compass_angle(reg)
    two_pi = 2 * math.pi
    res = (abs(dg - (two_pi * (ip - 1) + k)), abs(dg - (two_pi * (1 - im) + k)),
           abs(dg - (math.pi * (ip - im) + k)))
    stated = (abs(dg - (two_pi * (1 - ip) + k)), abs(dg - (two_pi * (im - 1) + k)),
              abs(dg - (math.pi * (im - ip) + k)))
    return CorollaryResult(dg, k, float(phi[-1] - phi[0]), ip, im, res, stated)


def lemma_omega_check(path: SampledPath, lifted) -> tuple:
    """Residuals of the horizontal-lift identity ``dphi = -dphi_c + kappa_g ds``.

    Returns ``(per_step, global)``: the largest per-interval mismatch, and
    the largest node mismatch of
    ``delta_g(t) = phi_c(0) - phi_c(t) + int_0^{s(t)} kappa_g ds``.
    """
    phi_c = compass_angle(path)
    run_k = running_total_curvature(path)
    dfib = np.diff(lifted.phi)
    step = dfib - (-np.diff(phi_c) + np.diff(run_k))
    dg = running_geometric_phase(path)
    glob = dg - (phi_c[0] - phi_c + run_k)
    return float(np.max(np.abs(step))), float(np.max(np.abs(glob)))

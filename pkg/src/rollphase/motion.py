"""Closed motions of the rolling disc and their sampling on a uniform grid.

A motion is a map ``t -> (theta(t), beta(t))`` on ``[0, 1]`` that returns
to its starting configuration: ``theta(1) - theta(0) = 2 pi n`` and
``beta(1) = beta(0)``.  Four families are built in (constant tilt, wobble,
tilt sweep, and linearly interpolated tables); :class:`Motion` subclasses
can be combined by reversal, concatenation and time reparameterization.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import BasePointMismatch, ClosureViolation, DomainViolation, LipschitzWarning, NonPositiveRadius
from .geometry import gauss_vector
from .tolerances import CLOSURE_TOL, DEFAULT_GRID, DOMAIN_SLACK, LIPSCHITZ_BOUND, MIN_GRID

FAMILIES = ("constant_tilt", "wobble", "tilt_sweep", "piecewise_linear_table")

# tables with fewer rows are polygonal motions: every interior row is a corner
DENSE_TABLE_ROWS = 64


class MotionState(NamedTuple):
    theta: np.ndarray
    beta: np.ndarray
    dtheta: np.ndarray
    dbeta: np.ndarray
    ddtheta: np.ndarray
    ddbeta: np.ndarray


class Motion:
    """Interface shared by all motions.

    Subclasses implement :meth:`evaluate`.  ``breakpoints`` lists the interior
    times where derivatives may jump; ``side=-1`` asks for left limits there.
    """

    breakpoints: tuple = ()

    def evaluate(self, t, side: int = 1) -> MotionState:
        raise NotImplementedError

    def gauss(self, t):
        s = self.evaluate(t)
        return gauss_vector(s.theta, s.beta)

    @property
    def winding(self) -> float:
        """Net number of turns ``(theta(1) - theta(0)) / 2 pi`` (not rounded)."""
        a, b = self.evaluate(np.array([0.0, 1.0])).theta
        return float((b - a) / (2 * math.pi))

    @property
    def turns(self) -> int:
        return int(round(self.winding))

    def is_closed(self, tol: float = CLOSURE_TOL) -> bool:
        s = self.evaluate(np.array([0.0, 1.0]))
        dt = s.theta[1] - s.theta[0]
        k = round(dt / (2 * math.pi))
        if abs(s.beta[1] - s.beta[0]) >= tol:
            return False
        if abs(dt - 2 * math.pi * k) < tol:
            return True
        # at a pole the contact angle is irrelevant for the Gauss vector
        g = gauss_vector(s.theta, s.beta)
        return bool(np.linalg.norm(g[1] - g[0]) < tol)


@dataclass(frozen=True)
class MotionTable:
    """Tabulated motion, linearly interpolated between rows."""

    t: np.ndarray
    theta: np.ndarray
    beta: np.ndarray
    corners: tuple = ()
    fd_step: float = 0.0
    periodic: bool = True


@dataclass(frozen=True)
class MotionSpec(Motion):
    """A built-in motion family with its parameters and the two disc radii.

    Use :func:`make_motion` (or the family helpers) to obtain a validated spec.
    """

    family: str
    beta0: float = math.pi / 2
    amplitude: float = 0.0
    m: int = 1
    beta1: float = 0.0
    n: int = 1
    a: float = 1.0
    b: float = 1.0
    table: Optional[MotionTable] = field(default=None, compare=False, repr=False)

    @property
    def breakpoints(self):
        return self.table.corners if self.table is not None else ()

    @property
    def turns(self) -> int:
        return self.n

    def evaluate(self, t, side: int = 1) -> MotionState:
        t = np.asarray(t, dtype=float)
        if self.family == "piecewise_linear_table":
            return _table_evaluate(self.table, self.n, t, side)
        w = 2 * math.pi
        theta = w * self.n * t
        dtheta = np.full_like(t, w * self.n)
        zero = np.zeros_like(t)
        if self.family == "constant_tilt":
            return MotionState(theta, np.full_like(t, self.beta0), dtheta, zero, zero, zero.copy())
        if self.family == "wobble":
            k = w * self.m
            beta = self.beta0 + self.amplitude * np.sin(k * t)
            dbeta = self.amplitude * k * np.cos(k * t)
            ddbeta = -self.amplitude * k * k * np.sin(k * t)
            return MotionState(theta, beta, dtheta, dbeta, zero, ddbeta)
        if self.family == "tilt_sweep":
            d = self.beta1 - self.beta0
            beta = self.beta0 + 0.5 * d * (1 - np.cos(w * t))
            dbeta = 0.5 * d * w * np.sin(w * t)
            ddbeta = 0.5 * d * w * w * np.cos(w * t)
            return MotionState(theta, beta, dtheta, dbeta, zero, ddbeta)
        raise ValueError(f"unknown motion family {self.family!r}")

    def beta_range(self):
        """Exact ``(min, max)`` of the tilt over the motion."""
        if self.family == "constant_tilt":
            return self.beta0, self.beta0
        if self.family == "wobble":
            amp = abs(self.amplitude) if self.m != 0 else 0.0
            return self.beta0 - amp, self.beta0 + amp
        if self.family == "tilt_sweep":
            return min(self.beta0, self.beta1), max(self.beta0, self.beta1)
        return float(self.table.beta.min()), float(self.table.beta.max())


def _table_values(tab: MotionTable, n: int, t):
    """Linear interpolation, continued periodically outside [0, 1]."""
    k = np.floor(t)
    if not tab.periodic:
        k = np.zeros_like(t)
    u = t - k
    theta = np.interp(u, tab.t, tab.theta) + 2 * math.pi * n * k
    beta = np.interp(u, tab.t, tab.beta)
    return theta, beta


def _table_evaluate(tab: MotionTable, n: int, t, side: int) -> MotionState:
    theta, beta = _table_values(tab, n, t)
    if tab.periodic:
        bounds = np.array([-np.inf, np.inf])
    else:
        bounds = np.array([0.0, *sorted(tab.corners), 1.0])
    # smooth piece [lo, hi] holding each point; at a corner, side picks the piece
    idx = np.searchsorted(bounds, t, side="right" if side >= 0 else "left") - 1
    idx = np.clip(idx, 0, bounds.size - 2)
    lo, hi = bounds[idx], bounds[idx + 1]
    d = np.minimum(tab.fd_step, 0.25 * (hi - lo))
    central = (t - d >= lo) & (t + d <= hi)
    forward = ~central & (t + 2 * d <= hi)
    # stencil offsets in units of d: central (-1, 0, 1), forward (0, 1, 2), backward (-2, -1, 0)
    shift = np.where(central, 0.0, np.where(forward, 1.0, -1.0))
    tm, t0, tp = t + (shift - 1) * d, t + shift * d, t + (shift + 1) * d
    vm, v0, vp = _table_values(tab, n, tm), _table_values(tab, n, t0), _table_values(tab, n, tp)
    out = []
    for i in range(2):
        # first derivative of the quadratic through the stencil, evaluated at t
        a = (vp[i] - vm[i]) / (2 * d)
        c2 = (vp[i] - 2 * v0[i] + vm[i]) / d**2
        out.append((a - shift * d * c2, c2))
    return MotionState(theta, beta, out[0][0], out[1][0], out[0][1], out[1][1])


def make_motion(spec: MotionSpec) -> MotionSpec:
    """Validate a motion spec.

    Raises
    ------
    NonPositiveRadius
        If either disc radius is not positive.
    DomainViolation
        If the tilt leaves ``[0, pi]`` anywhere on the motion.
    ClosureViolation
        If the motion does not return to its initial configuration.
    """
    if spec.family not in FAMILIES:
        raise ValueError(f"unknown motion family {spec.family!r}; expected one of {FAMILIES}")
    if not (spec.a > 0 and spec.b > 0):
        raise NonPositiveRadius(f"disc radii must be positive, got a={spec.a}, b={spec.b}")
    if int(spec.n) != spec.n or int(spec.m) != spec.m:
        raise ValueError("turn count n and wobble frequency m must be integers")
    lo, hi = spec.beta_range()
    if lo < -DOMAIN_SLACK or hi > math.pi + DOMAIN_SLACK:
        raise DomainViolation(f"tilt ranges over [{lo:.6g}, {hi:.6g}], outside [0, pi]")
    s = spec.evaluate(np.array([0.0, 1.0]))
    if abs(s.beta[1] - s.beta[0]) >= CLOSURE_TOL:
        raise ClosureViolation(f"beta(1) - beta(0) = {s.beta[1] - s.beta[0]:.3g}")
    if abs(s.theta[1] - s.theta[0] - 2 * math.pi * spec.n) >= CLOSURE_TOL:
        raise ClosureViolation(
            f"theta(1) - theta(0) = {s.theta[1] - s.theta[0]:.12g} is not 2 pi n with n={spec.n}")
    return spec


def constant_tilt(beta0, n=1, a=1.0, b=1.0) -> MotionSpec:
    return make_motion(MotionSpec("constant_tilt", beta0=beta0, n=n, a=a, b=b))


def wobble(beta0, amplitude, m=1, n=1, a=1.0, b=1.0) -> MotionSpec:
    """Tilt oscillating as ``beta0 + amplitude * sin(2 pi m t)``."""
    return make_motion(MotionSpec("wobble", beta0=beta0, amplitude=amplitude, m=m, n=n, a=a, b=b))


def tilt_sweep(beta0, beta1, n=1, a=1.0, b=1.0) -> MotionSpec:
    """Tilt ramping ``beta0 -> beta1 -> beta0`` with a raised-cosine profile.

    Taking ``beta1 = 0`` (or ``pi``) lays the disc flat at mid-cycle, so the
    Gauss curve runs through a pole.
    """
    return make_motion(MotionSpec("tilt_sweep", beta0=beta0, beta1=beta1, n=n, a=a, b=b))


def table_motion(t, theta, beta, a=1.0, b=1.0, corners: Optional[Sequence[float]] = None) -> MotionSpec:
    """Linearly interpolated motion from tabulated ``(t, theta, beta)`` rows.

    ``t`` must increase strictly from 0 to 1.  Derivatives are central
    differences of the interpolant, one-sided next to corners.  Unless given
    explicitly, corners are every interior row of a short table (fewer than
    ``DENSE_TABLE_ROWS`` rows) and none for a dense one, which is then
    treated as samples of a smooth periodic motion.
    """
    t = np.asarray(t, dtype=float)
    theta = np.asarray(theta, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if not (t.ndim == theta.ndim == beta.ndim == 1 and t.size == theta.size == beta.size):
        raise ValueError("table columns must be 1-d and of equal length")
    if t.size < 2:
        raise ValueError("a motion table needs at least two rows")
    if abs(t[0]) > 1e-12 or abs(t[-1] - 1) > 1e-12 or np.any(np.diff(t) <= 0):
        raise ValueError("table times must increase strictly from 0 to 1")
    t = t.copy()
    t[0], t[-1] = 0.0, 1.0
    dtheta = theta[-1] - theta[0]
    n = int(round(dtheta / (2 * math.pi)))
    if abs(dtheta - 2 * math.pi * n) >= CLOSURE_TOL:
        raise ClosureViolation(f"theta(1) - theta(0) = {dtheta:.12g} is not a multiple of 2 pi")
    if corners is None:
        corners = tuple(t[1:-1]) if t.size < DENSE_TABLE_ROWS else ()
    corners = tuple(float(c) for c in corners)
    periodic = t.size >= DENSE_TABLE_ROWS and not corners
    fd = float(np.min(np.diff(t)))
    for arr in (t, theta, beta):
        arr.setflags(write=False)
    tab = MotionTable(t, theta, beta, corners, fd, periodic)
    return make_motion(MotionSpec("piecewise_linear_table", beta0=float(beta[0]), n=n, a=a, b=b, table=tab))


def read_table(path) -> tuple:
    """Parse a motion table file: one ``t theta beta`` record per line (radians)."""
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.replace(",", " ").split()
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected 't theta beta', got {line!r}")
            try:
                rows.append([float(p) for p in parts])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    if not rows:
        raise ValueError(f"{path}: empty motion table")
    arr = np.array(rows)
    return arr[:, 0], arr[:, 1], arr[:, 2]


class ReversedMotion(Motion):
    """The motion traversed backwards, ``t -> 1 - t``."""

    def __init__(self, base: Motion):
        self.base = base
        self.breakpoints = tuple(sorted(1.0 - c for c in base.breakpoints))

    def evaluate(self, t, side=1):
        s = self.base.evaluate(1.0 - np.asarray(t, dtype=float), -side)
        return MotionState(s.theta, s.beta, -s.dtheta, -s.dbeta, s.ddtheta, s.ddbeta)


class ConcatenatedMotion(Motion):
    """``first`` on ``[0, 1/2]`` followed by ``second`` on ``[1/2, 1]``.

    The contact angle of ``second`` is shifted so theta is continuous at the
    junction.  The end of ``first`` must coincide with the start of
    ``second`` on the sphere.
    """

    def __init__(self, first: Motion, second: Motion, tol: float = CLOSURE_TOL):
        g_end = first.gauss(np.array(1.0))
        g_start = second.gauss(np.array(0.0))
        if np.linalg.norm(g_end - g_start) > tol:
            raise BasePointMismatch(f"junction mismatch {np.linalg.norm(g_end - g_start):.3g}")
        self.first, self.second = first, second
        self.shift = float(first.evaluate(np.array(1.0), -1).theta - second.evaluate(np.array(0.0)).theta)
        bps = [0.5 * c for c in first.breakpoints] + [0.5] + [0.5 + 0.5 * c for c in second.breakpoints]
        self.breakpoints = tuple(bps)

    def evaluate(self, t, side=1):
        t = np.asarray(t, dtype=float)
        at_mid = t == 0.5
        use_first = (t < 0.5) | (at_mid & (side < 0))
        s1 = self.first.evaluate(np.clip(2 * t, 0.0, 1.0), side)
        s2 = self.second.evaluate(np.clip(2 * t - 1, 0.0, 1.0), side)
        pick = lambda a, b, k: np.where(use_first, a, b) * k  # noqa: E731
        return MotionState(
            np.where(use_first, s1.theta, s2.theta + self.shift),
            np.where(use_first, s1.beta, s2.beta),
            pick(s1.dtheta, s2.dtheta, 2.0), pick(s1.dbeta, s2.dbeta, 2.0),
            pick(s1.ddtheta, s2.ddtheta, 4.0), pick(s1.ddbeta, s2.ddbeta, 4.0))


class ReparameterizedMotion(Motion):
    """The motion precomposed with an increasing bijection ``r`` of [0, 1].

    ``dr`` and ``ddr`` are the first two derivatives of ``r``.
    """

    def __init__(self, base: Motion, r: Callable, dr: Callable, ddr: Callable):
        self.base, self.r, self.dr, self.ddr = base, r, dr, ddr
        self.breakpoints = tuple(brentq(lambda x, c=c: r(x) - c, 0.0, 1.0, xtol=1e-15)
                                 for c in base.breakpoints)

    def evaluate(self, t, side=1):
        t = np.asarray(t, dtype=float)
        u, du, ddu = self.r(t), self.dr(t), self.ddr(t)
        s = self.base.evaluate(u, side)
        return MotionState(s.theta, s.beta, s.dtheta * du, s.dbeta * du,
                           s.ddtheta * du**2 + s.dtheta * ddu, s.ddbeta * du**2 + s.dbeta * ddu)


def _readonly(*arrays):
    for a in arrays:
        a.setflags(write=False)


@dataclass(frozen=True, eq=False)
class SampledPath:
    """A motion sampled on ``N + 1`` uniform nodes of ``[0, 1]``.

    ``dtheta``/``dbeta`` hold right derivatives; ``dtheta_left``/``dbeta_left``
    differ from them only at nodes that sit on a corner of the motion.
    """

    t: np.ndarray
    theta: np.ndarray
    beta: np.ndarray
    dtheta: np.ndarray
    dbeta: np.ndarray
    ddtheta: np.ndarray
    ddbeta: np.ndarray
    dtheta_left: np.ndarray
    dbeta_left: np.ndarray
    motion: Motion

    @property
    def n_intervals(self) -> int:
        return self.t.size - 1

    @property
    def h(self) -> float:
        return 1.0 / self.n_intervals

    @property
    def turns(self) -> int:
        return self.motion.turns

    @property
    def breakpoints(self):
        return self.motion.breakpoints

    def gauss(self):
        return gauss_vector(self.theta, self.beta)


def sample(motion: Motion, N: int = DEFAULT_GRID) -> SampledPath:
    """Sample ``motion`` on ``N`` uniform intervals (``N + 1`` nodes)."""
    if int(N) != N or N < MIN_GRID:
        raise ValueError(f"grid size must be an integer >= {MIN_GRID}, got {N}")
    N = int(N)
    t = np.arange(N + 1) / N
    s = motion.evaluate(t, 1)
    dth_l, dbe_l = s.dtheta.copy(), s.dbeta.copy()
    for c in motion.breakpoints:
        k = int(round(c * N))
        if abs(k - c * N) < 1e-9 and 0 < k < N:
            left = motion.evaluate(np.array([t[k]]), -1)
            dth_l[k], dbe_l[k] = left.dtheta[0], left.dbeta[0]
    arrays = [np.array(a, dtype=float) for a in (t, s.theta, s.beta, s.dtheta, s.dbeta, s.ddtheta, s.ddbeta)]
    arrays += [dth_l, dbe_l]
    _readonly(*arrays)
    return SampledPath(*arrays, motion=motion)


def lipschitz_estimate(path: SampledPath, bound: float = LIPSCHITZ_BOUND):
    """Largest difference quotient of theta and beta between adjacent nodes.

    Emits :class:`~rollphase.errors.LipschitzWarning` if either constant
    exceeds ``bound``.
    """
    dt = np.diff(path.t)
    c_theta = float(np.max(np.abs(np.diff(path.theta)) / dt))
    c_beta = float(np.max(np.abs(np.diff(path.beta)) / dt))
    if max(c_theta, c_beta) > bound:
        warnings.warn(f"Lipschitz constants ({c_theta:.4g}, {c_beta:.4g}) exceed bound {bound:.4g}",
                      LipschitzWarning, stacklevel=2)
    return c_theta, c_beta

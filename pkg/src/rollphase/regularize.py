"""Pole regularization of the Gauss curve.

Clamping the tilt to ``[eps, pi - eps]`` pushes the Gauss curve off both
poles, so winding numbers about them are defined.  The geometric phase of
the clamped curve tends to the line integral of the original motion as
``eps -> 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EpsilonOutOfRange
from .motion import Motion, MotionState, SampledPath
from .phase import interval_integrals
from .tolerances import DEFAULT_EPS_LADDER, EPS_MAX


def _check_eps(epsilon: float) -> float:
    if not (0.0 < epsilon < EPS_MAX):
        raise EpsilonOutOfRange(f"epsilon must lie in (0, pi/8), got {epsilon!r}")
    return float(epsilon)


def clamp_beta(beta, epsilon: float):
    """``beta`` clamped to ``[eps, pi - eps]`` (the three-case definition)."""
    return np.clip(beta, epsilon, math.pi - epsilon)


class ClampedMotion(Motion):
    """A motion with its tilt clamped to ``[eps, pi - eps]``.

    Tilt derivatives vanish wherever the clamp is active.
    """

    def __init__(self, base: Motion, epsilon: float):
        self.base = base
        self.epsilon = _check_eps(epsilon)
        self.breakpoints = base.breakpoints

    @property
    def turns(self):
        return self.base.turns

    def evaluate(self, t, side=1):
        s = self.base.evaluate(t, side)
        eps = self.epsilon
        active = (s.beta <= eps) | (s.beta >= math.pi - eps)
        zero = np.zeros_like(s.beta)
        return MotionState(s.theta, clamp_beta(s.beta, eps), s.dtheta,
                           np.where(active, zero, s.dbeta), s.ddtheta, np.where(active, zero, s.ddbeta))


@dataclass(frozen=True, eq=False)
class RegularizedPath:
    epsilon: float
    base: SampledPath
    beta_eps: np.ndarray

    @property
    def motion(self) -> ClampedMotion:
        return ClampedMotion(self.base.motion, self.epsilon)

    @property
    def active(self) -> np.ndarray:
        """Nodes where the clamp changed the tilt."""
        return self.beta_eps != self.base.beta

    def as_sampled(self) -> SampledPath:
        """The clamped curve as an ordinary :class:`SampledPath`."""
        b = self.base
        act = self.active
        dbeta = np.where(act, 0.0, b.dbeta)
        dbeta_l = np.where(act, 0.0, b.dbeta_left)
        ddbeta = np.where(act, 0.0, b.ddbeta)
        arrays = [b.t, b.theta, self.beta_eps, b.dtheta, dbeta, b.ddtheta, ddbeta, b.dtheta_left, dbeta_l]
        for a in arrays:
            if a.flags.writeable:
                a.setflags(write=False)
        return SampledPath(*arrays, motion=self.motion)


def clamp(path, epsilon: float) -> RegularizedPath:
    """Clamp the tilt of a sampled path.

    Accepts a :class:`SampledPath` or a :class:`RegularizedPath`; clamping
    twice with the same ``epsilon`` is a no-op.

    Raises
    ------
    EpsilonOutOfRange
        If ``epsilon`` is not in ``(0, pi/8)``.
    """
    eps = _check_eps(epsilon)
    if isinstance(path, RegularizedPath):
        beta, base = path.beta_eps, path.base
    else:
        beta, base = path.beta, path
    beta_eps = clamp_beta(beta, eps)
    beta_eps.setflags(write=False)
    return RegularizedPath(eps, base, beta_eps)


def regularized_line_integral(path: SampledPath, epsilon: float) -> float:
    """``-int cos(beta_eps) dtheta`` along the path."""
    eps = _check_eps(epsilon)

    def f(theta, beta, dtheta, dbeta):
        return -np.cos(clamp_beta(beta, eps)) * dtheta

    return float(np.sum(interval_integrals(path, f)))


def richardson_limit(eps: Sequence[float], values: Sequence[float]):
    """Extrapolate ``values(eps)`` to ``eps = 0``.

    The order ``p`` of the leading error term ``C eps**p`` is estimated from
    the last three values and clipped to ``[1, 6]``; with fewer than three
    values, or when the sequence is already constant, the last value is
    returned.  Returns ``(limit, p)`` with ``p = nan`` when no order was
    estimated.
    """
    eps = np.asarray(eps, dtype=float)
    v = np.asarray(values, dtype=float)
    if v.size < 3:
        return float(v[-1]), float("nan")
    d1, d2 = v[-2] - v[-3], v[-1] - v[-2]
    if abs(d2) < 1e-15 or abs(d1) < 1e-15 or d1 * d2 <= 0:
        return float(v[-1]), float("nan")
    r1, r2 = eps[-3] / eps[-2], eps[-2] / eps[-1]
    # for a ladder with constant ratio this is exact for C eps**p
    p = math.log(abs(d1 / d2)) / math.log(0.5 * (r1 + r2))
    p = min(max(p, 1.0), 6.0)
    limit = v[-1] + d2 / (r2**p - 1)
    return float(limit), float(p)


@dataclass(frozen=True)
class RegularizedPhase:
    epsilons: tuple
    values: tuple
    limit: float
    order: float


def regularized_phase(path: SampledPath, epsilons: Sequence[float] = DEFAULT_EPS_LADDER) -> RegularizedPhase:
    """Regularized geometric phase per ``eps`` and its extrapolated limit.

    Examples
    --------
    >>> from rollphase.motion import constant_tilt, sample
    >>> r = regularized_phase(sample(constant_tilt(0.0), 512))
    >>> round(r.limit / math.pi, 6)
    -2.0
    """
    eps = tuple(float(e) for e in epsilons)
    if not eps:
        raise ValueError("empty epsilon ladder")
    for e in eps:
        _check_eps(e)
    if any(b >= a for a, b in zip(eps[:-1], eps[1:])):
        raise ValueError(f"epsilon ladder must be strictly decreasing, got {eps}")
    vals = tuple(regularized_line_integral(path, e) for e in eps)
    limit, order = richardson_limit(eps, vals)
    return RegularizedPhase(eps, vals, limit, order)

"""Dynamical and geometric phase of the rolling disc.

The rotation angle of the rolling disc after a closed motion splits as
``delta = delta_d + delta_g`` with ``delta_d = 2 pi n a / b`` and
``delta_g = -int cos(beta) dtheta``.  The geometric phase is kept as a real
number; it is never reduced modulo ``2 pi``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NonPositiveRadius
from .motion import Motion, SampledPath

# Gauss-Legendre rule for intervals where the grid integrand is not smooth
_GL_X, _GL_W = np.polynomial.legendre.leggauss(8)


@dataclass(frozen=True)
class PhaseResult:
    delta_d: float
    delta_g: float
    delta_total: float
    running_delta_g: np.ndarray


def dynamical_phase(a: float, b: float, n: int) -> float:
    """Rolling contribution ``2 pi n a / b``.

    Examples
    --------
    >>> dynamical_phase(2.0, 1.0, -1) / math.pi
    -4.0
    """
    if not (a > 0 and b > 0):
        raise NonPositiveRadius(f"disc radii must be positive, got a={a}, b={b}")
    return 2 * math.pi * n * a / b


def geometric_integrand(theta, beta, dtheta, dbeta):
    return -np.cos(beta) * dtheta


def _gl_integral(motion: Motion, f: Callable, lo: float, hi: float) -> float:
    """Integral of ``f(state)`` over ``[lo, hi]``, split at motion breakpoints."""
    cuts = [lo] + [c for c in motion.breakpoints if lo < c < hi] + [hi]
    total = 0.0
    for u, v in zip(cuts[:-1], cuts[1:]):
        mid, half = 0.5 * (u + v), 0.5 * (v - u)
        s = motion.evaluate(mid + half * _GL_X)
        total += half * float(np.dot(_GL_W, f(s.theta, s.beta, s.dtheta, s.dbeta)))
    return total


def interval_integrals(path: SampledPath, f: Callable = geometric_integrand,
                       motion: Motion | None = None) -> np.ndarray:
    """Per-interval integrals of ``f`` along ``path`` (length ``N``).

    Smooth stretches use composite Simpson split into half-pairs, so every
    even node carries the exact Simpson partial sum.  Simpson pairs whose
    middle node is a corner, or which contain a corner strictly inside an
    interval, are integrated with Gauss-Legendre on the smooth pieces using
    ``motion`` (defaults to the path's own motion).
    """
    motion = path.motion if motion is None else motion
    N, h = path.n_intervals, path.h
    fr = f(path.theta, path.beta, path.dtheta, path.dbeta)
    fl = f(path.theta, path.beta, path.dtheta_left, path.dbeta_left)
    out = np.empty(N)
    n_pairs = N // 2
    f0 = fr[0:2 * n_pairs:2]
    f1 = fr[1:2 * n_pairs:2]
    f2 = fl[2:2 * n_pairs + 1:2]
    pair = h / 3 * (f0 + 4 * f1 + f2)
    first = h / 12 * (5 * f0 + 8 * f1 - f2)
    out[0:2 * n_pairs:2] = first
    out[1:2 * n_pairs:2] = pair - first
    if N % 2:
        out[N - 1] = h / 12 * (-fr[N - 2] + 8 * fr[N - 1] + 5 * fl[N])
    bad = set()
    for c in motion.breakpoints:
        x = c * N
        k = int(round(x))
        if abs(k - x) < 1e-9:
            if k % 2 == 1:
                bad.add(k // 2)
            if N % 2 and k in (N - 2, N - 1):
                bad.add(n_pairs)
        elif 0 < x < N:
            bad.add(min(int(x) // 2, n_pairs))
    for j in sorted(bad):
        for k in (2 * j, 2 * j + 1):
            if k < N:
                out[k] = _gl_integral(motion, f, path.t[k], path.t[k + 1])
    return out


def running_geometric_phase(path: SampledPath) -> np.ndarray:
    """Cumulative geometric phase; node ``k`` holds ``-int_0^{t_k} cos(beta) theta' dt``."""
    run = np.zeros(path.t.size)
    np.cumsum(interval_integrals(path), out=run[1:])
    return run


def geometric_phase(path: SampledPath) -> float:
    """Geometric phase ``-int_0^1 cos(beta) theta' dt`` by composite Simpson.

    Examples
    --------
    >>> from rollphase.motion import constant_tilt, sample
    >>> round(geometric_phase(sample(constant_tilt(math.pi / 3), 256)) / math.pi, 12)
    -1.0
    """
    return float(running_geometric_phase(path)[-1])


def phase(path: SampledPath, a: float = 1.0, b: float = 1.0) -> PhaseResult:
    """Both phases and their sum for a sampled closed motion."""
    run = running_geometric_phase(path)
    run.setflags(write=False)
    dd = dynamical_phase(a, b, path.turns)
    dg = float(run[-1])
    return PhaseResult(dd, dg, dd + dg, run)

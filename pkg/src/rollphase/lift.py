"""Horizontal lift of the Gauss curve to S^3 and its holonomy.

Two independent integrators are provided.  The primary one solves the
scalar fiber equation ``phi' = -cos(beta) theta'`` with the classical
fourth-order Runge-Kutta step; the second integrates the lift directly in
C^2 as ``z' = P'(t) z`` with ``P = z z^H`` the projector onto the fiber
through the curve, which is horizontal by construction.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotClosed
from .geometry import gauss_velocity, gauss_vector, local_frame, s3_from_angles
from .motion import ConcatenatedMotion, Motion, ReversedMotion, SampledPath, sample
from .phase import running_geometric_phase
from .tolerances import DEFAULT_GRID


@dataclass(frozen=True, eq=False)
class LiftedPath:
    """Horizontal lift sampled on the grid of ``base``.

    ``phi`` comes from the scalar fiber equation and ``s3`` is rebuilt from
    it; ``z`` and ``phi_embedded`` come from the C^2 integrator.
    """

    base: SampledPath
    phi: np.ndarray
    s3: np.ndarray
    z: np.ndarray
    phi_embedded: np.ndarray
    horizontality_residual: float
    norm_drift: float


def _steps(path: SampledPath):
    """Grid steps, each split at motion breakpoints strictly inside it."""
    t = path.t
    bps = np.asarray(sorted(path.breakpoints), dtype=float)
    out = []
    for k in range(path.n_intervals):
        lo, hi = t[k], t[k + 1]
        inner = bps[(bps > lo + 1e-14) & (bps < hi - 1e-14)] if bps.size else ()
        out.append([lo, *inner, hi])
    return out


def _fiber_increments(path: SampledPath) -> np.ndarray:
    """RK4 increments of ``phi`` per grid interval."""
    m = path.motion
    N = path.n_intervals
    simple = all(len(s) == 2 for s in _steps(path)) if path.breakpoints else True
    if simple:
        t = path.t
        h = path.h
        f0 = -np.cos(path.beta[:-1]) * path.dtheta[:-1]
        f1 = -np.cos(path.beta[1:]) * path.dtheta_left[1:]
        mid = m.evaluate(0.5 * (t[:-1] + t[1:]))
        fm = -np.cos(mid.beta) * mid.dtheta
        # RK4 on a t-only right-hand side: k2 = k3 at the midpoint
        return h / 6 * (f0 + 2 * fm + 2 * fm + f1)
    inc = np.empty(N)
    for k, cuts in enumerate(_steps(path)):
        acc = 0.0
        for lo, hi in zip(cuts[:-1], cuts[1:]):
            s0 = m.evaluate(np.array([lo]), 1)
            s1 = m.evaluate(np.array([hi]), -1)
            sm = m.evaluate(np.array([0.5 * (lo + hi)]))
            f0 = -math.cos(s0.beta[0]) * s0.dtheta[0]
            f1 = -math.cos(s1.beta[0]) * s1.dtheta[0]
            fm = -math.cos(sm.beta[0]) * sm.dtheta[0]
            acc += (hi - lo) / 6 * (f0 + 4 * fm + f1)
        inc[k] = acc
    return inc


def _projector_rate(state):
    """``P'(t)`` for ``P = (I + g . sigma)/2``: entries ``(c', a' + i b'; a' - i b', -c')/2``."""
    gd = gauss_velocity(state.theta, state.beta, state.dtheta, state.dbeta)
    a, b, c = gd[..., 0], gd[..., 1], gd[..., 2]
    P = np.empty(a.shape + (2, 2), dtype=complex)
    P[..., 0, 0] = 0.5 * c
    P[..., 0, 1] = 0.5 * (a + 1j * b)
    P[..., 1, 0] = 0.5 * (a - 1j * b)
    P[..., 1, 1] = -0.5 * c
    return P


def _flat_steps(path: SampledPath):
    """Step endpoints and the grid interval owning each step."""
    if not path.breakpoints:
        return path.t[:-1], path.t[1:], np.arange(path.n_intervals)
    lo, hi, owner = [], [], []
    for k, cuts in enumerate(_steps(path)):
        lo.extend(cuts[:-1])
        hi.extend(cuts[1:])
        owner.extend([k] * (len(cuts) - 1))
    return np.array(lo), np.array(hi), np.array(owner)


def _rk4_propagators(A0, Am, A1, h):
    """One-step RK4 propagators of ``x' = A(t) x`` (vectorized over steps)."""
    I = np.eye(A0.shape[-1])
    h = h[..., None, None]
    K1 = A0
    K2 = Am @ (I + 0.5 * h * K1)
    K3 = Am @ (I + 0.5 * h * K2)
    K4 = A1 @ (I + h * K3)
    return I + h / 6 * (K1 + 2 * K2 + 2 * K3 + K4)


def _embedded_lift(path: SampledPath, z0):
    m = path.motion
    lo, hi, owner = _flat_steps(path)
    A0 = _projector_rate(m.evaluate(lo, 1))
    A1 = _projector_rate(m.evaluate(hi, -1))
    Am = _projector_rate(m.evaluate(0.5 * (lo + hi)))
    U = _rk4_propagators(A0, Am, A1, hi - lo)
    ends = np.append(owner[1:] != owner[:-1], True)
    z = np.empty((path.t.size, 2), dtype=complex)
    z[0] = z0
    u00, u01, u10, u11 = (U[:, i, j].tolist() for i, j in ((0, 0), (0, 1), (1, 0), (1, 1)))
    x, y = complex(z0[0]), complex(z0[1])
    drift = 0.0
    node = 1
    for s in range(len(u00)):
        x, y = u00[s] * x + u01[s] * y, u10[s] * x + u11[s] * y
        r = math.sqrt(abs(x) ** 2 + abs(y) ** 2)
        drift = max(drift, abs(r - 1.0))
        x, y = x / r, y / r
        if ends[s]:
            z[node] = (x, y)
            node += 1
    return z, drift


def _fd_velocity(z, h, skip):
    """Fourth-order central differences at interior nodes not flagged in ``skip``."""
    zd = np.full(z.shape, np.nan, dtype=complex)
    zd[2:-2] = (z[:-4] - 8 * z[1:-3] + 8 * z[3:-1] - z[4:]) / (12 * h)
    zd[skip] = np.nan
    return zd


def horizontal_lift(path: SampledPath, phi0: float = 0.0) -> LiftedPath:
    """Horizontal lift of the Gauss curve starting at fiber coordinate ``phi0``.

    Examples
    --------
    >>> from rollphase.motion import constant_tilt, sample
    >>> lift = horizontal_lift(sample(constant_tilt(math.pi / 3), 256))
    >>> round(float(lift.phi[-1]) / math.pi, 10)
    -1.0
    """
    inc = _fiber_increments(path)
    phi = np.empty(path.t.size)
    phi[0] = phi0
    np.cumsum(inc, out=phi[1:])
    phi[1:] += phi0
    s3 = s3_from_angles(phi, path.theta, path.beta)
    z, drift = _embedded_lift(path, s3[0])
    s0 = s3_from_angles(0.0, path.theta, path.beta)
    rel = np.angle(np.sum(np.conj(s0) * z, axis=-1))
    phi_emb = 2 * np.unwrap(rel)
    phi_emb += phi0 - phi_emb[0]
    # nodes whose FD stencil straddles a corner are not checked
    N = path.n_intervals
    skip = np.zeros(path.t.size, dtype=bool)
    for c in path.breakpoints:
        k = int(math.floor(c * N))
        skip[max(0, k - 2):min(N + 1, k + 4)] = True
    zd = _fd_velocity(z, path.h, skip)
    resid = np.abs(np.imag(np.sum(np.conj(z) * zd, axis=-1)))
    horiz = float(np.nanmax(resid)) if np.isfinite(resid).any() else 0.0
    for a in (phi, s3, z, phi_emb):
        a.setflags(write=False)
    return LiftedPath(path, phi, s3, z, phi_emb, horiz, drift)


def _require_closed(motion: Motion):
    if not motion.is_closed():
        raise NotClosed("holonomy needs a closed motion")


def holonomy(path: SampledPath, lifted: LiftedPath | None = None) -> complex:
    """Holonomy ``exp(i (phi(1) - phi(0)))`` of the horizontal lift.

    Raises
    ------
    NotClosed
        If the motion does not return to its starting configuration.
    """
    _require_closed(path.motion)
    lifted = horizontal_lift(path) if lifted is None else lifted
    return cmath.exp(1j * float(lifted.phi[-1] - lifted.phi[0]))


def fiber_element(lifted: LiftedPath) -> complex:
    """U(1) element ``s`` with ``z(1) = z(0) s`` for the embedded lift.

    With the half-angle parameterization of S^3 this is
    ``(-1)^n exp(i delta_g / 2)``; its square is the holonomy.
    """
    z0, z1 = lifted.z[0], lifted.z[-1]
    s = complex(np.vdot(z0, z1))
    return s / abs(s)


def fiber_coordinate_check(path: SampledPath, lifted: LiftedPath | None = None) -> float:
    """``max_k |delta_g(t_k) - (phi(t_k) - phi(0))|``."""
    lifted = horizontal_lift(path) if lifted is None else lifted
    run = running_geometric_phase(path)
    return float(np.max(np.abs(run - (lifted.phi - lifted.phi[0]))))


def holonomy_homomorphism_check(first: Motion, second: Motion, N: int = DEFAULT_GRID):
    """Residuals ``(|tau(c' c) - tau(c) tau(c')|, |tau(c^-1 c) - 1|)``.

    Both loops must start and end at the same point of the sphere.

    Raises
    ------
    BasePointMismatch
        If the loops do not share a base point.
    """
    _require_closed(first)
    _require_closed(second)
    both = ConcatenatedMotion(first, second)
    there_and_back = ConcatenatedMotion(first, ReversedMotion(first))
    t1 = holonomy(sample(first, N))
    t2 = holonomy(sample(second, N))
    t12 = holonomy(sample(both, 2 * N))
    t0 = holonomy(sample(there_and_back, 2 * N))
    return abs(t12 - t1 * t2), abs(t0 - 1.0)


def _transport_matrix(state):
    """``B`` with ``v' = B v`` for Levi-Civita transport: ``B = -g g'^T``."""
    g = gauss_vector(state.theta, state.beta)
    gd = gauss_velocity(state.theta, state.beta, state.dtheta, state.dbeta)
    return -g[..., :, None] * gd[..., None, :], g


def transport_oracle(path: SampledPath) -> float:
    """Rotation angle of a tangent vector parallel-transported around the curve.

    Integrates ``v' = -(v . g') g`` with RK4 on the grid, renormalizing and
    re-projecting onto the tangent plane after every step.  Returns the
    angle from the initial to the final vector, oriented by the outward
    normal at the base point, in ``(-pi, pi]``.
    """
    m = path.motion
    st0 = m.evaluate(np.array([0.0]))
    f = local_frame(st0.theta, st0.beta)
    v0, g0 = f.e1[0], f.e3[0]
    lo, hi, _ = _flat_steps(path)
    B0, _ = _transport_matrix(m.evaluate(lo, 1))
    B1, g1 = _transport_matrix(m.evaluate(hi, -1))
    Bm, _ = _transport_matrix(m.evaluate(0.5 * (lo + hi)))
    U = _rk4_propagators(B0, Bm, B1, hi - lo)
    v = v0.copy()
    for Uk, gk in zip(U, g1):
        v = Uk @ v
        v -= np.dot(v, gk) * gk
        v /= math.sqrt(np.dot(v, v))
    return math.atan2(float(np.dot(np.cross(v0, v), g0)), float(np.dot(v0, v)))

"""The Hopf bundle S^3 -> CP^1 and its canonical connection.

Points of S^3 are complex arrays of shape ``(..., 2)`` with unit norm.  A
real tangent vector at ``z`` is stored as its complex components
``v = (v1, v2)``; the conjugate components are implied.  U(1) acts on the
right by ``z -> z * a``.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import ChartDomain, DegenerateFrame, DomainViolation, TangencyViolation
from .geometry import check_beta, s3_from_angles
from .projective import normalize_cp1
from .tolerances import CHART_ZERO, NORM_TOL, POLE_SIN_MIN, TANGENCY_TOL


class Split(NamedTuple):
    horizontal: np.ndarray
    vertical: np.ndarray


def _as_s3(p, check: bool = True):
    p = np.asarray(p, dtype=complex)
    if check and np.any(np.abs(np.linalg.norm(p, axis=-1) - 1) > 1e-10):
        raise DomainViolation("point is not on the unit sphere S^3")
    return p


def inner(z, w):
    """Hermitian product ``conj(z1) w1 + conj(z2) w2`` over the last axis."""
    return np.sum(np.conj(z) * w, axis=-1)


def hopf_map(p):
    """Class ``[z1, z2]`` of a point of S^3."""
    return normalize_cp1(_as_s3(p))


def right_action(p, a):
    """``p * a`` for unit complex ``a``."""
    return np.asarray(p, dtype=complex) * np.asarray(a, dtype=complex)[..., None]


def section(chart_id: int, p):
    """Local section ``sigma_i``: the representative with ``z_i`` real positive.

    Raises
    ------
    ChartDomain
        If ``|z_i| < 1e-12`` (relative to the representative's norm).
    """
    if chart_id not in (1, 2):
        raise ValueError(f"chart must be 1 or 2, got {chart_id!r}")
    p = np.asarray(p, dtype=complex)
    norm = np.linalg.norm(p, axis=-1, keepdims=True)
    zi = p[..., chart_id - 1:chart_id]
    if np.any(np.abs(zi) < CHART_ZERO * norm):
        raise ChartDomain(f"section {chart_id} undefined where z{chart_id} = 0")
    return p * (np.abs(zi) / zi) / norm


def transition_function(p):
    """``psi_12 = (z1/|z1|) (z2/|z2|)^-1`` on the overlap of the two charts."""
    p = np.asarray(p, dtype=complex)
    z1, z2 = p[..., 0], p[..., 1]
    norm = np.linalg.norm(p, axis=-1)
    if np.any(np.abs(z1) < CHART_ZERO * norm) or np.any(np.abs(z2) < CHART_ZERO * norm):
        raise ChartDomain("transition function needs z1 != 0 and z2 != 0")
    return (z1 / np.abs(z1)) / (z2 / np.abs(z2))


def _check_tangent(p, v):
    r = np.abs(np.real(inner(p, v)))
    scale = np.maximum(1.0, np.linalg.norm(v, axis=-1))
    if np.any(r > TANGENCY_TOL * scale):
        raise TangencyViolation(f"vector is not tangent to S^3 (Re<z, v> = {np.max(r):.3g})")


def canonical_connection(p, v, check: bool = True):
    """``omega(v) = i Im(<z, v>)``, purely imaginary.

    Examples
    --------
    >>> complex(canonical_connection([1, 0], [1j, 0]))
    1j
    """
    p = _as_s3(p, check)
    v = np.asarray(v, dtype=complex)
    if check:
        _check_tangent(p, v)
    return 1j * np.imag(inner(p, v))


def connection_in_angles(theta, beta, dphi, dtheta, dbeta=0.0):
    """Angle-coordinate form ``(i/2)(dphi + cos(beta) dtheta)``; ``dbeta`` drops out."""
    return 0.5j * (np.asarray(dphi) + np.cos(beta) * np.asarray(dtheta))


def _dphase(z, dz):
    # d arg z = Im(dz / z)
    return np.imag(dz / z)


def chart_connection(chart_id: int, p, dp):
    """Local connection form ``omega_i`` on ``U_i``.

    ``p`` is any representative ``(z1, z2)`` of a point of CP^1 and ``dp`` the
    velocity of a curve of representatives through it.  Evaluates
    ``omega_1 = i |z2|^2/|z|^2 d(arg z2 - arg z1)`` and
    ``omega_2 = -i |z1|^2/|z|^2 d(arg z2 - arg z1)``.

    Raises
    ------
    ChartDomain
        Outside the chart domain.  ``omega_1`` vanishes identically where
        ``z2 = 0``, so that case returns 0 without evaluating the phase.
    """
    if chart_id not in (1, 2):
        raise ValueError(f"chart must be 1 or 2, got {chart_id!r}")
    p = np.asarray(p, dtype=complex)
    dp = np.asarray(dp, dtype=complex)
    z1, z2 = p[..., 0], p[..., 1]
    dz1, dz2 = dp[..., 0], dp[..., 1]
    n2 = np.abs(z1) ** 2 + np.abs(z2) ** 2
    zi = z1 if chart_id == 1 else z2
    if np.any(np.abs(zi) ** 2 < CHART_ZERO**2 * n2):
        raise ChartDomain(f"point outside chart {chart_id}")
    other = z2 if chart_id == 1 else z1
    safe = np.abs(other) ** 2 >= CHART_ZERO**2 * n2
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(safe, _dphase(z2, dz2) - _dphase(z1, dz1), 0.0)
    if chart_id == 1:
        return 1j * np.abs(z2) ** 2 / n2 * rel
    return -1j * np.abs(z1) ** 2 / n2 * rel


def fundamental_vector(A, p):
    """Vertical vector ``A* = (z1 A, z2 A)`` generated by ``A`` in ``u(1) = iR``."""
    A = np.asarray(A, dtype=complex)
    if np.any(np.abs(A.real) > NORM_TOL * np.maximum(1.0, np.abs(A))):
        raise ValueError("A must be purely imaginary")
    return np.asarray(p, dtype=complex) * A[..., None]


def split(p, v):
    """Horizontal and vertical parts of a tangent vector.

    The vertical part is ``fundamental_vector(omega(v), p)``; the horizontal
    part is the remainder, so the two sum back to ``v``.
    """
    p = _as_s3(p)
    v = np.asarray(v, dtype=complex)
    vert = fundamental_vector(canonical_connection(p, v), p)
    return Split(v - vert, vert)


def angle_tangents(phi, theta, beta):
    """C^2 components of the coordinate vectors ``d/dphi``, ``d/dtheta``, ``d/dbeta``."""
    z = s3_from_angles(phi, theta, beta)
    beta = check_beta(beta)
    half = 0.5 * np.asarray(beta)
    d_phi = 0.5j * z
    d_theta = np.stack([0.5j * z[..., 0], -0.5j * z[..., 1]], axis=-1)
    e1 = np.exp(0.5j * (np.asarray(phi) + np.asarray(theta)))
    e2 = np.exp(0.5j * (np.asarray(phi) - np.asarray(theta)))
    d_beta = np.stack([-0.5 * e1 * np.sin(half), 0.5 * e2 * np.cos(half)], axis=-1)
    return z, d_phi, d_theta, d_beta


def angle_basis_check(phi, theta, beta):
    """Residuals of the horizontal/vertical basis in angle coordinates.

    Returns ``(|omega(d_theta - cos(beta) d_phi)|, |omega(d_beta)|,
    |omega(2 d_phi) - i|)``; all vanish up to round-off.

    Raises
    ------
    DegenerateFrame
        At a pole, where ``d_theta`` and ``d_phi`` are parallel.
    """
    if np.any(np.sin(np.asarray(beta, dtype=float)) < POLE_SIN_MIN):
        raise DegenerateFrame("angle coordinates are singular at the poles")
    z, d_phi, d_theta, d_beta = angle_tangents(phi, theta, beta)
    h1 = d_theta - np.cos(beta)[..., None] * d_phi if np.ndim(beta) else d_theta - np.cos(beta) * d_phi
    r1 = np.abs(canonical_connection(z, h1))
    r2 = np.abs(canonical_connection(z, d_beta))
    r3 = np.abs(canonical_connection(z, 2 * d_phi) - 1j)
    return float(np.max(r1)), float(np.max(r2)), float(np.max(r3))

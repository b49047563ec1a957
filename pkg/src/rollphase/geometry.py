"""Points and moving frames on S^2 and S^3.

Angles follow the rolling-disc convention: ``theta`` is the contact angle
on the rim of the fixed disc (carried unwrapped) and ``beta`` is the tilt
of the rolling disc against the horizontal plane, ``0 <= beta <= pi``.
Every function broadcasts over array arguments.
"""
from typing import NamedTuple

import numpy as np

from .errors import DegenerateFrame, DomainViolation
from .tolerances import DOMAIN_SLACK, POLE_SIN_MIN


class Frame(NamedTuple):
    """Right-handed orthonormal frame; ``e3`` is the base point on S^2."""

    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray


class Angles(NamedTuple):
    theta: float
    beta: float
    phi: float = 0.0


def check_beta(beta):
    """Validate tilt angles and clip round-off excursions back into [0, pi]."""
    beta = np.asarray(beta, dtype=float)
    if np.any(beta < -DOMAIN_SLACK) or np.any(beta > np.pi + DOMAIN_SLACK):
        bad = beta[(beta < -DOMAIN_SLACK) | (beta > np.pi + DOMAIN_SLACK)]
        raise DomainViolation(f"beta outside [0, pi]: {bad.ravel()[:3]}")
    return np.clip(beta, 0.0, np.pi)


def gauss_vector(theta, beta):
    """Unit normal of the rolling disc, ``(sin b cos t, sin b sin t, cos b)``.

    Returns an array of shape ``broadcast(theta, beta).shape + (3,)``.
    """
    beta = check_beta(beta)
    theta = np.asarray(theta, dtype=float)
    sb = np.sin(beta)
    return np.stack(np.broadcast_arrays(sb * np.cos(theta), sb * np.sin(theta), np.cos(beta)), axis=-1)


def gauss_velocity(theta, beta, dtheta, dbeta):
    """Time derivative of :func:`gauss_vector` along a motion."""
    theta, beta, dtheta, dbeta = np.broadcast_arrays(
        *(np.asarray(x, dtype=float) for x in (theta, beta, dtheta, dbeta)))
    sb, cb = np.sin(beta), np.cos(beta)
    st, ct = np.sin(theta), np.cos(theta)
    return np.stack([cb * ct * dbeta - sb * st * dtheta,
                     cb * st * dbeta + sb * ct * dtheta,
                     -sb * dbeta], axis=-1)


def local_frame(theta, beta):
    """East/north/sky frame at the Gauss vector.

    Raises
    ------
    DegenerateFrame
        If ``sin(beta) < 1e-9``; the east direction is undefined at a pole.
    """
    beta = check_beta(beta)
    theta = np.asarray(theta, dtype=float)
    if np.any(np.sin(beta) < POLE_SIN_MIN):
        raise DegenerateFrame("local frame requested at a pole")
    theta, beta = np.broadcast_arrays(theta, beta)
    st, ct = np.sin(theta), np.cos(theta)
    sb, cb = np.sin(beta), np.cos(beta)
    e1 = np.stack([-st, ct, np.zeros_like(st)], axis=-1)
    e2 = np.stack([-cb * ct, -cb * st, sb], axis=-1)
    e3 = np.stack([sb * ct, sb * st, cb], axis=-1)
    return Frame(e1, e2, e3)


def connection_matrix(theta, beta, dtheta, dbeta):
    """Frame connection one-form evaluated on ``(dtheta, dbeta)``.

    The entries are ``w12 = -cos(b) dtheta``, ``w13 = sin(b) dtheta`` and
    ``w23 = -dbeta``; the lower triangle is filled by negation so the result
    is antisymmetric bit for bit.  With this sign convention the frame moves
    as ``d e_i = sum_j w[j, i] e_j``.
    """
    theta, beta, dtheta, dbeta = np.broadcast_arrays(
        *(np.asarray(x, dtype=float) for x in (theta, beta, dtheta, dbeta)))
    w = np.zeros(beta.shape + (3, 3))
    w12 = -np.cos(beta) * dtheta
    w13 = np.sin(beta) * dtheta
    w23 = -dbeta
    w[..., 0, 1], w[..., 1, 0] = w12, -w12
    w[..., 0, 2], w[..., 2, 0] = w13, -w13
    w[..., 1, 2], w[..., 2, 1] = w23, -w23
    return w


def s3_from_angles(phi, theta, beta):
    """Point of S^3 with fiber coordinate ``phi`` over ``gauss_vector(theta, beta)``.

    ``z1 = exp(i(phi+theta)/2) cos(beta/2)``, ``z2 = exp(i(phi-theta)/2) sin(beta/2)``.
    """
    beta = check_beta(beta)
    phi, theta, beta = np.broadcast_arrays(np.asarray(phi, float), np.asarray(theta, float), beta)
    z1 = np.exp(0.5j * (phi + theta)) * np.cos(0.5 * beta)
    z2 = np.exp(0.5j * (phi - theta)) * np.sin(0.5 * beta)
    return np.stack([z1, z2], axis=-1)


def finite_rotation_check(theta, beta):
    """Largest one-step mismatch between frame increments and the connection matrix.

    For consecutive samples ``k, k+1`` the frame increment ``e_i(k+1) - e_i(k)``
    is compared with ``sum_j w[j, i] e_j(k)`` where ``w`` is evaluated at
    sample ``k`` on the angle increments.  The residual is first order per
    step, so it decays like ``h**2`` in the step size.
    """
    theta = np.asarray(theta, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if theta.size < 2:
        return 0.0
    f = local_frame(theta, beta)
    E = np.stack([f.e1, f.e2, f.e3], axis=-2)          # (..., i, xyz)
    w = connection_matrix(theta[:-1], beta[:-1], np.diff(theta), np.diff(beta))
    predicted = np.einsum("kji,kjx->kix", w, E[:-1])
    actual = E[1:] - E[:-1]
    return float(np.max(np.linalg.norm(actual - predicted, axis=-1)))

"""The complex projective line and its identification with S^2.

Points of CP^1 are stored as complex arrays of shape ``(..., 2)`` holding a
unit-norm representative whose larger coordinate is real and positive, so
equal classes compare equal.  The atlas is ``U_1 = {z1 != 0}`` with
coordinate ``z2 / z1`` and ``U_2 = {z2 != 0}`` with coordinate ``z1 / z2``.
"""
import numpy as np

from .errors import ChartDomain
from .tolerances import CHART_ZERO


def normalize_cp1(p):
    """Canonical representative of the class of ``p`` (shape ``(..., 2)``).

    Raises
    ------
    ChartDomain
        If both homogeneous coordinates vanish.
    """
    p = np.asarray(p, dtype=complex)
    norm = np.linalg.norm(p, axis=-1, keepdims=True)
    if np.any(norm == 0):
        raise ChartDomain("(0, 0) is not a point of CP^1")
    p = p / norm
    big = np.where(np.abs(p[..., :1]) >= np.abs(p[..., 1:]), p[..., :1], p[..., 1:])
    return p * (np.abs(big) / big)


def cp1(z1, z2):
    """The class ``[z1, z2]``."""
    z1, z2 = np.broadcast_arrays(np.asarray(z1, complex), np.asarray(z2, complex))
    return normalize_cp1(np.stack([z1, z2], axis=-1))


def chart(chart_id: int, p):
    """Affine coordinate of ``p`` in chart 1 (``z2/z1``) or chart 2 (``z1/z2``).

    Examples
    --------
    >>> complex(chart(1, [1, 2])), complex(chart(2, [1, 2]))
    ((2+0j), (0.5+0j))
    """
    p = np.asarray(p, dtype=complex)
    if chart_id == 1:
        num, den = p[..., 1], p[..., 0]
    elif chart_id == 2:
        num, den = p[..., 0], p[..., 1]
    else:
        raise ValueError(f"chart must be 1 or 2, got {chart_id!r}")
    scale = np.linalg.norm(p, axis=-1)
    if np.any(np.abs(den) < CHART_ZERO * scale):
        raise ChartDomain(f"point outside the domain of chart {chart_id}")
    return num / den


def transition(z):
    """Chart change ``z -> 1/z`` on the overlap (either direction)."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) < CHART_ZERO):
        raise ChartDomain("transition undefined at z = 0")
    return 1.0 / z


def sphere_to_cp1(x):
    """The map h: S^2 -> CP^1.

    ``(a, b, c) -> [1, (a - ib)/(1 + c)]`` on the northern hemisphere
    (``c >= 0``) and ``[(a + ib)/(1 - c), 1]`` on the southern one.
    """
    x = np.asarray(x, dtype=float)
    a, b, c = x[..., 0], x[..., 1], x[..., 2]
    north = c >= 0
    with np.errstate(divide="ignore", invalid="ignore"):
        w1 = (a - 1j * b) / (1 + c)
        w2 = (a + 1j * b) / (1 - c)
    one = np.ones_like(a, dtype=complex)
    z1 = np.where(north, one, w2)
    z2 = np.where(north, w1, one)
    return normalize_cp1(np.stack([z1, z2], axis=-1))


def cp1_to_sphere(p):
    """Inverse of :func:`sphere_to_cp1`.

    Uses ``[1, z] -> (2 Re z, -2 Im z, 1 - |z|^2) / (1 + |z|^2)`` where
    ``|z1| >= |z2|`` and ``[z, 1] -> (2 Re z, 2 Im z, |z|^2 - 1) / (1 + |z|^2)``
    otherwise.
    """
    p = np.asarray(p, dtype=complex)
    z1, z2 = p[..., 0], p[..., 1]
    first = np.abs(z1) >= np.abs(z2)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(first, z2 / z1, z1 / z2)
    r2 = np.abs(z) ** 2
    d = 1 + r2
    x = 2 * z.real / d
    y = np.where(first, -2 * z.imag, 2 * z.imag) / d
    c = np.where(first, 1 - r2, r2 - 1) / d
    return np.stack([x, y, c], axis=-1)

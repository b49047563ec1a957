"""Closed-form reference values, fixed before any numerical comparison.

Nothing here imports the package under test; every number is either an
explicit formula in the disc angles or a frozen literal.
"""
import math

import numpy as np
from scipy.special import j0

TWO_PI = 2 * math.pi

LATITUDES = (math.pi / 6, math.pi / 4, math.pi / 3, math.pi / 2, 2 * math.pi / 3)

# (beta0, amplitude, m): wobbles whose Gauss curves stay simple
WOBBLES = ((math.pi / 3, 0.3, 2), (math.pi / 4, 0.5, 3), (2 * math.pi / 3, 0.4, 1))


def latitude_phase(beta0, n=1):
    """Geometric phase of the constant-tilt loop: ``-2 pi n cos(beta0)``."""
    return -TWO_PI * n * math.cos(beta0)


def latitude_area(beta0):
    """Area left of the latitude circle run eastward: the northern cap."""
    return TWO_PI * (1 - math.cos(beta0))


def wobble_phase(beta0, amplitude, m=1, n=1):
    """``-int_0^1 cos(beta0 + A sin(2 pi m t)) 2 pi n dt = -2 pi n cos(beta0) J0(A)``."""
    return -TWO_PI * n * math.cos(beta0) * float(j0(amplitude))


def cap_area(rho):
    """Area of a spherical cap of angular radius ``rho``."""
    return TWO_PI * (1 - math.cos(rho))


def small_circle_table(rho, rows=4096, reverse=False):
    """Rows ``(t, theta, beta)`` of a circle of radius ``rho`` about (1, 0, 0).

    The circle never surrounds either pole, so ``n = 0`` and the phase is
    plus or minus the cap area depending on the direction.
    """
    t = np.linspace(0.0, 1.0, rows + 1)
    s = -TWO_PI * t if reverse else TWO_PI * t
    x = np.full_like(t, math.cos(rho))
    y = math.sin(rho) * np.cos(s)
    z = math.sin(rho) * np.sin(s)
    theta = np.arctan2(y, x)
    beta = np.arccos(z)
    theta[-1], beta[-1] = theta[0], beta[0]
    return t, theta, beta


def exp_reparam(k=3.0):
    """Smooth non-periodic time change ``r(t) = expm1(k t)/expm1(k)`` with derivatives."""
    E = math.expm1(k)
    return (lambda t: np.expm1(k * t) / E,
            lambda t: k * np.exp(k * t) / E,
            lambda t: k * k * np.exp(k * t) / E)


# frozen snapshot of the default report for beta0 = pi/3, N = 8192
REPORT_PI_3 = {"delta_d": TWO_PI, "delta_g": -math.pi, "I_plus": 1, "I_minus": 1,
               "A_plus": math.pi, "A_minus": 3 * math.pi}


def fd5(f, t, d=1e-4):
    """Five-point centred derivative of ``f`` at ``t`` (error O(d**4))."""
    return (f(t - 2 * d) - 8 * f(t - d) + 8 * f(t + d) - f(t + 2 * d)) / (12 * d)

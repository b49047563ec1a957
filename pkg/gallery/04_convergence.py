"""Convergence of the quadrature and of the lift
===============================================

A constant-tilt loop is periodic and smooth, so Simpson's rule and the
RK4 lift are exact on it to round-off.  Running the same loop with a
non-uniform clock, ``t -> expm1(k t)/expm1(k)``, keeps the exact answer
``-2 pi cos(beta0)`` but removes the periodicity, which exposes the
fourth-order error of both schemes: each grid doubling divides the error
by about 16.
"""
import math

import numpy as np

from rollphase import constant_tilt, horizontal_lift, sample
from rollphase.motion import ReparameterizedMotion
from rollphase.phase import geometric_phase

k = 3.0
E = math.expm1(k)
motion = ReparameterizedMotion(constant_tilt(math.pi / 3),
                               lambda t: np.expm1(k * t) / E,
                               lambda t: k * np.exp(k * t) / E,
                               lambda t: k * k * np.exp(k * t) / E)
exact = -math.pi

prev = None
print(f"{'N':>6} {'quadrature':>11} {'ratio':>6} {'lift':>11} {'ratio':>6}")
for N in (256, 512, 1024, 2048):
    p = sample(motion, N)
    q = abs(geometric_phase(p) - exact)
    lift = horizontal_lift(p)
    lf = abs(lift.phi[-1] - lift.phi[0] - exact)
    rq, rl = (prev[0] / q, prev[1] / lf) if prev else (float("nan"), float("nan"))
    print(f"{N:>6} {q:11.3e} {rq:6.1f} {lf:11.3e} {rl:6.1f}")
    prev = (q, lf)

"""Where are the poles?
=====================

The index ``I+`` counts the poles on the left of the Gauss curve.  A loop
winding once around the vertical separates the poles (``I+ = 1``); a small
loop that stays near the horizon leaves both poles on one side, and which
side depends on the direction of travel.  The phase is always the left
area minus ``2 pi I+``.

The script writes SVG drawings of each curve to ``gallery/output``.
"""
import math
import os

from rollphase import main_theorem_check, sample, table_motion, tilt_sweep, wobble
from rollphase.report import emit_svg
from rollphase.topology import ChartedCurve

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "output")
os.makedirs(OUT, exist_ok=True)


def small_circle(rho, reverse=False, rows=4096):
    import numpy as np

    t = np.linspace(0, 1, rows + 1)
    s = (-1 if reverse else 1) * 2 * math.pi * t
    x, y, z = math.cos(rho) + 0 * t, math.sin(rho) * np.cos(s), math.sin(rho) * np.sin(s)
    theta, beta = np.arctan2(y, x), np.arccos(z)
    theta[-1], beta[-1] = theta[0], beta[0]
    return table_motion(t, theta, beta)


cases = {
    "wobble": wobble(1.0, 0.3, 3),
    "sweep_near_pole": tilt_sweep(0.9, 0.05),
    "small_loop_ccw": small_circle(0.4),
    "small_loop_cw": small_circle(0.4, reverse=True),
}
print(f"{'case':>16} {'I+':>3} {'I-':>3} {'A+':>10} {'delta_g':>10} {'residual':>9}")
for name, motion in cases.items():
    path = sample(motion)
    r = main_theorem_check(path)
    t = r.topology
    print(f"{name:>16} {t.I_plus:>3} {t.I_minus:>3} {t.A_plus:10.6f} {r.delta_g:10.6f} {r.max_residual:9.1e}")
    emit_svg(path.gauss(), os.path.join(OUT, f"{name}.svg"), ChartedCurve(path.gauss()).is_simple())

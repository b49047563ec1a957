"""Rolling one coin around another
================================

A coin of radius ``b`` rolls without slipping once around the rim of a
fixed coin of radius ``a``.  Lying flat, equal coins make the familiar
two turns; standing upright, one.  The total rotation splits into a
dynamical part ``2 pi n a / b`` fixed by the radii and a geometric part
``-oint cos(beta) dtheta`` fixed by the tilt history alone.
"""
import math

from rollphase import constant_tilt, phase, run, RunConfig, sample
from rollphase.report import format_report

# %% Tilt sweep for equal coins -------------------------------------------
print(f"{'tilt (deg)':>10} {'delta_d':>9} {'delta_g':>9} {'turns':>7}")
for deg in (0, 30, 60, 90, 120, 180):
    r = phase(sample(constant_tilt(math.radians(deg)), 1024))
    print(f"{deg:>10} {r.delta_d:9.4f} {r.delta_g:9.4f} {r.delta_total / (2 * math.pi):7.3f}")

# The two flat positions bracket the table: at 180 degrees the coin makes
# the classic two turns, at 0 degrees it makes none.  Upright (90 degrees)
# the geometric part vanishes and only the rolling contributes.  At 60
# degrees the coin turns exactly half a revolution.

# %% The full report for the 60 degree case --------------------------------
print(format_report(run(RunConfig(beta0=math.pi / 3))))

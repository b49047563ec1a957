"""Numerical tolerances shared by all modules.

They are plain module constants so runs are reproducible; the report
module echoes them into every report.
"""
import math

NORM_TOL = 1e-12
FRAME_TOL = 1e-10
DOMAIN_SLACK = 1e-9
POLE_SIN_MIN = 1e-9
CLOSURE_TOL = 1e-9
STATIONARY_SPEED = 1e-9
DEGENERATE_LENGTH = 1e-9
TANGENCY_TOL = 1e-10
CHART_ZERO = 1e-12
POLE_HIT = 1e-9
ON_CURVE = 1e-9
SEGMENT_CROSS_TOL = 1e-12

LIPSCHITZ_BOUND = 1.0e3
COMPASS_JUMP = math.pi / 2
FD_STEP = 1e-6

DEFAULT_GRID = 8192
MIN_GRID = 256
DEFAULT_EPS_LADDER = (0.08, 0.04, 0.02, 0.01)
EPS_MAX = math.pi / 8

AREA_ROWS = 1024
AREA_STABILITY = 1e-3

# acceptance-level cross-check tolerances
MAIN_THEOREM_TOL = 2e-3
HOLONOMY_TOL = 1e-8
FIBER_TOL = 1e-8
COROLLARY_TOL = 1e-4
TRANSPORT_TOL = 1e-5
REGULARIZED_TOL = 1e-6


def as_dict():
    """Return every public constant as a ``{name: value}`` mapping."""
    return {k: v for k, v in globals().items() if k.isupper()}

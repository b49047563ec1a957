"""Geometric phase of a disc rolling on the rim of a fixed disc.

The rotation angle after a closed motion is ``delta_d + delta_g``; the
geometric part ``delta_g = -int cos(beta) dtheta`` is computed by direct
quadrature and cross-checked against the Hopf-bundle holonomy, the
enclosed-area formula, the fiber coordinate of the horizontal lift and a
geodesic-curvature index formula.
"""
from .errors import *  # noqa: F401,F403
from .geometry import gauss_vector, local_frame, s3_from_angles
from .motion import (MotionSpec, SampledPath, constant_tilt, make_motion, sample, table_motion,
                     tilt_sweep, wobble)
from .phase import PhaseResult, dynamical_phase, geometric_phase, phase, running_geometric_phase
from .regularize import clamp, regularized_phase
from .lift import holonomy, horizontal_lift, transport_oracle
from .topology import curve_topology, main_theorem_check
from .curvature import corollary_check
from .report import RunConfig, format_report, load_config, run

__version__ = "0.1.0"

__all__ = [
    "MotionSpec", "SampledPath", "constant_tilt", "make_motion", "sample", "table_motion", "tilt_sweep",
    "wobble", "gauss_vector", "local_frame", "s3_from_angles", "PhaseResult", "dynamical_phase",
    "geometric_phase", "phase", "running_geometric_phase", "clamp", "regularized_phase", "holonomy",
    "horizontal_lift", "transport_oracle", "curve_topology", "main_theorem_check", "corollary_check",
    "RunConfig", "format_report", "load_config", "run",
]

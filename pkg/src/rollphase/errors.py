"""Exception and warning classes raised across the package."""


class RollPhaseError(Exception):
    """Base class for all package errors."""


class DomainViolation(RollPhaseError, ValueError):
    """An angle left its admissible range (e.g. tilt outside [0, pi])."""


class ClosureViolation(RollPhaseError, ValueError):
    """A motion does not return to its initial configuration."""


class NonPositiveRadius(RollPhaseError, ValueError):
    pass


class DegenerateFrame(RollPhaseError, ValueError):
    """The moving frame is undefined at the poles."""


class EpsilonOutOfRange(RollPhaseError, ValueError):
    pass


class PoleHit(RollPhaseError, ValueError):
    """A curve point coincides with the projection pole of a chart."""


class PointOnCurve(RollPhaseError, ValueError):
    pass


class NotSimple(RollPhaseError, ValueError):
    """The closed curve intersects itself."""


class ChartDomain(RollPhaseError, ValueError):
    """The point lies outside the domain of the requested chart."""


class TangencyViolation(RollPhaseError, ValueError):
    """A vector is not tangent to S^3 at the given base point."""


class NotClosed(RollPhaseError, ValueError):
    pass


class BasePointMismatch(RollPhaseError, ValueError):
    pass


class DegenerateCurve(RollPhaseError, ValueError):
    """The Gauss curve has (numerically) zero length."""


class NonSmoothCurve(RollPhaseError, ValueError):
    """The curve has corners where a smooth curve is required."""


class ConfigError(RollPhaseError, ValueError):
    """A run configuration could not be parsed or validated."""


class LipschitzWarning(UserWarning):
    """A sampled motion changes faster than the configured Lipschitz bound."""


class CompassJumpWarning(UserWarning):
    """The compass angle turned by more than the unwrap threshold in one step."""

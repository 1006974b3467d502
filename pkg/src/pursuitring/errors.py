"""Exception types shared across the package."""


class PursuitError(Exception):
    """Base class for all package-specific errors."""


class DegeneratePositionError(PursuitError):
    """A position coincides with the evader (zero polar radius)."""


class InvalidSpeedRatioError(PursuitError):
    """Speed ratio outside the open interval (0, 1)."""


class InvalidGainError(PursuitError):
    """A gain that must be strictly positive is not."""


class RingUndefinedError(PursuitError):
    """Ring quantities need at least two pursuers."""


class PotentialOverflowError(PursuitError):
    """A potential-field evaluation blew up (contact with a blow-up radius)."""


class NotApplicableError(PursuitError):
    """Predicate preconditions not met (e.g. evader outside the polygon)."""


class AlreadyCapturedError(PursuitError):
    """A pursuer-evader distance is already at or below the capture radius."""


class VacuousConditionError(PursuitError):
    """Pursuer-count bound is vacuous: d_c * lambda_min >= circumradius, any n >= 3 works."""


class ScenarioValidationError(PursuitError):
    """Scenario document failed validation.

    Attributes:
        violations: list of (field_path, reason) pairs.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(f"{path}: {reason}" for path, reason in self.violations)
        super().__init__(f"invalid scenario ({lines})")


class TraceFormatError(PursuitError):
    """Trace file is malformed or empty."""

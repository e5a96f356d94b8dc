"""Exception and warning types raised across the package."""


class LogSphereError(ValueError):
    """Base class for all errors raised by logsphere."""


class InvalidConfiguration(LogSphereError):
    pass


class CoincidentPoints(LogSphereError):
    """Two vertices coincide so a log (or positive-s Riesz) term diverges."""

    def __init__(self, pair, message=None):
        self.pair = tuple(int(p) for p in pair)
        super().__init__(message or f"points {self.pair[0]} and {self.pair[1]} coincide")


class DimensionMismatch(LogSphereError):
    pass


class PoleCollision(LogSphereError):
    pass


class WrongCardinality(LogSphereError):
    pass


class TransitivityViolation(LogSphereError):
    pass


class DoesNotFit(LogSphereError):
    pass


class InfeasibleSizes(LogSphereError):
    pass


class UnknownName(LogSphereError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class DomainError(LogSphereError):
    pass


class AllSeedsFailed(LogSphereError):
    pass


class IndexOutOfRange(LogSphereError, IndexError):
    pass


class WrongCardinalityWarning(UserWarning):
    pass


class AdvisoryWarning(UserWarning):
    """A diagnostic was computed outside the inputs its theory assumes."""

"""Exception hierarchy shared by all modules.

The CLI maps ``ResourceLimit`` subclasses to exit code 3 and every other
``PolarGraphError`` raised during argument handling to exit code 2.
"""


class PolarGraphError(Exception):
    """Base class for every error raised by this package."""


class ResourceLimit(PolarGraphError):
    """A size guard tripped before any expensive work started."""


# field
class NotPrime(PolarGraphError, ValueError):
    pass


class UnsupportedDegree(PolarGraphError, ValueError):
    pass


class OrderTooLarge(ResourceLimit, ValueError):
    pass


class ZeroInverse(PolarGraphError, ZeroDivisionError):
    pass


class NotSquareOrderField(PolarGraphError, ValueError):
    pass


# geometry
class DimensionTooLarge(ResourceLimit):
    pass


class EqualPoints(PolarGraphError, ValueError):
    pass


class DimensionMismatch(PolarGraphError, ValueError):
    pass


class HermitianNotPolarizable(PolarGraphError, TypeError):
    pass


class NotParabolicBinary(PolarGraphError, ValueError):
    pass


class RadicalNotOneDimensional(PolarGraphError, RuntimeError):
    pass


class InvalidForm(PolarGraphError, ValueError):
    pass


# graphs
class InvalidRank(PolarGraphError, ValueError):
    pass


class UnsupportedQ(PolarGraphError, ValueError):
    pass


class PaleyConditionViolated(PolarGraphError, ValueError):
    pass


class TooLarge(ResourceLimit):
    pass


# spectral
class NotRegular(PolarGraphError, ValueError):
    pass


class NotStronglyRegular(PolarGraphError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DegenerateGraph(PolarGraphError, ValueError):
    pass


class InfeasibleParams(PolarGraphError, ValueError):
    pass


class TooLargeForNumeric(ResourceLimit):
    pass


class NoConvergence(PolarGraphError, RuntimeError):
    pass


class DisconnectedSpectrum(PolarGraphError, ValueError):
    pass


# families
class InvalidFamilyArgs(PolarGraphError, ValueError):
    pass


class OutOfLemmaRange(PolarGraphError, ValueError):
    pass


class InvalidArgs(PolarGraphError, ValueError):
    pass

"""Exception types shared across floerlab."""


class FloerLabError(Exception):
    """Base class for all library errors."""


# coefficients
class NonHomogeneous(FloerLabError, ValueError):
    pass


class ZeroElement(FloerLabError, ZeroDivisionError):
    pass


# trees
class DomainTooSmall(FloerLabError, ValueError):
    pass


class ExternalEdge(FloerLabError, ValueError):
    pass


# A-infinity data
class DegreeError(FloerLabError, ValueError):
    pass


class NonFieldCoefficients(FloerLabError, ValueError):
    pass


class NotUnital(FloerLabError, ValueError):
    pass


class BadUnit(FloerLabError, ValueError):
    pass


class NonHomogeneousEntries(FloerLabError, ValueError):
    pass


# deformations
class WeightInconsistency(FloerLabError, ValueError):
    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details


class NotExactDiscrepancy(FloerLabError, ValueError):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class DegreeLedgerViolation(FloerLabError, ValueError):
    pass


class StructureEquationFailure(FloerLabError, ValueError):
    pass


class TruncationTooSmall(UserWarning):
    pass


# model fibration
class EpsOutOfRange(FloerLabError, ValueError):
    pass


class NewtonDivergence(FloerLabError, RuntimeError):
    def __init__(self, message, seed=None):
        super().__init__(message)
        self.seed = seed


class SingularSolution(FloerLabError, ValueError):
    pass


class OddDimension(FloerLabError, ValueError):
    pass


# lattices
class BadSphereClass(FloerLabError, ValueError):
    pass


# pipeline
class GradingMismatch(FloerLabError, ValueError):
    pass

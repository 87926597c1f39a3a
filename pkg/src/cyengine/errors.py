"""Exception hierarchy.

Every failure that signals a violated mathematical precondition derives from
``AssumptionViolation``; the CLI maps those to exit code 1.
"""


class EngineError(Exception):
    """Base class for all engine errors."""


class SchemaError(EngineError):
    """Malformed input document."""


class AssumptionViolation(EngineError):
    """A mathematical precondition of an operation does not hold."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class SingularTrace(AssumptionViolation):
    pass


class IncompatibleComponents(AssumptionViolation):
    pass


class DegreeWindowViolation(AssumptionViolation):
    pass


class MismatchedSession(AssumptionViolation):
    pass


class NotClosed(AssumptionViolation):
    pass


class EtaNotSymplecticBasis(AssumptionViolation):
    pass


class NotChainMap(AssumptionViolation):
    pass


class WindowTooNarrow(AssumptionViolation):
    pass


class NoAugmentation(AssumptionViolation):
    pass


class NotThroughB(AssumptionViolation):
    pass


class TruncationTooSmall(AssumptionViolation):
    pass


class NoSolution(AssumptionViolation):
    pass


class InvalidTriangleData(AssumptionViolation):
    pass


class LengthCapExceeded(AssumptionViolation):
    pass

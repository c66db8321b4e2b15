"""Exception hierarchy shared by all modules."""


class AtoroidalError(Exception):
    """Base class for every error raised by this package."""


class PlaneMapError(AtoroidalError, ValueError):
    pass


class NotInvolution(PlaneMapError):
    pass


class BadRotationOrbit(PlaneMapError):
    pass


class NotSpherical(PlaneMapError):
    pass


class Disconnected(PlaneMapError):
    pass


class ParseError(AtoroidalError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnrealizableCode(AtoroidalError, ValueError):
    pass


class IllegalMove(AtoroidalError, ValueError):
    pass


class NotSimpleVertex(AtoroidalError, ValueError):
    pass


class TrivialCurve(AtoroidalError, ValueError):
    pass


class BadDegree(AtoroidalError, ValueError):
    pass


class InconsistentGluing(AtoroidalError, ValueError):
    pass


class ForbiddenPiece(AtoroidalError, ValueError):
    pass


class LimitExceeded(AtoroidalError, ValueError):
    pass


class InvariantViolation(AtoroidalError, AssertionError):
    """A structural property that should always hold was found to fail."""

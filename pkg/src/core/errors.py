class VerificationError(Exception):
    """Base class for every error raised by the verification toolkit."""


class DimensionMismatchError(VerificationError, ValueError):
    pass


class InfeasiblePointError(VerificationError, ValueError):
    def __init__(self, message: str, violation: float | None = None) -> None:
        super().__init__(message)
        self.violation = violation


class EmptyPolyhedronError(VerificationError, ValueError):
    pass


class RepresentationError(VerificationError, ValueError):
    pass


class TagMismatchError(VerificationError, ValueError):
    pass


class UnknownCqError(VerificationError, ValueError):
    pass


class MissingObjectiveError(VerificationError, ValueError):
    pass

"""Exception hierarchy shared across the voting pipeline."""


class EvotingError(Exception):
    """Base class for all errors raised by this package."""


# field
class MismatchedField(EvotingError):
    pass


class ZeroInverse(EvotingError):
    pass


class EmptyPolynomial(EvotingError):
    pass


class BoundTooLarge(EvotingError):
    pass


class NotPrime(EvotingError):
    pass


# encoding
class LayoutTooWide(EvotingError):
    pass


class CandidateOutOfRange(EvotingError):
    pass


class SumOutOfRange(EvotingError):
    pass


class BlockOverflow(EvotingError):
    pass


# shamir
class InvalidParams(EvotingError):
    pass


class DuplicateX(EvotingError):
    pass


class InsufficientShares(EvotingError):
    pass


class ShapeMismatch(EvotingError):
    pass


class MismatchedX(EvotingError):
    pass


# collection center
class WrongCenter(EvotingError):
    pass


class DuplicateBallot(EvotingError):
    pass


class CorruptLog(EvotingError):
    def __init__(self, message: str, record_index: int | None = None):
        super().__init__(message)
        self.record_index = record_index


# commissioner
class NotEnoughCenters(EvotingError):
    pass


class CountMismatch(EvotingError):
    pass


class PrimeTooSmall(EvotingError):
    pass

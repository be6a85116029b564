"""Exception hierarchy shared by every module."""


class MpalError(ValueError):
    """Base class for domain errors (CLI exit code 3)."""


class ZeroDenominator(MpalError, ZeroDivisionError):
    pass


class UndefinedValue(MpalError):
    pass


class NonStandardWord(MpalError):
    pass


class HypothesisViolated(MpalError):
    pass


class NotMPalindrome(MpalError):
    pass


class UndefinedExtendedValue(MpalError):
    pass


class InsufficientData(MpalError):
    pass


class InvalidParameters(MpalError):
    pass


class ScheduleNotIncreasing(InvalidParameters):
    pass


class EmptyWord(MpalError):
    pass


class InvalidW(InvalidParameters):
    pass


class DegeneratePeriod(MpalError):
    pass


class ParseError(MpalError):
    """Malformed textual input (CLI exit code 2)."""

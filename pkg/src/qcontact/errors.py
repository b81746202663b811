"""Exception types raised across the package."""


class QContactError(Exception):
    """Base class for all errors raised by qcontact."""


class AllZeroError(QContactError, ValueError):
    pass


class InvalidMotionError(QContactError, ValueError):
    pass


class NotAnEllipsoidError(QContactError, ValueError):
    pass


class DegenerateError(QContactError, ValueError):
    pass


class UnsupportedClassError(QContactError, ValueError):
    pass


class BadOrderingError(QContactError, ValueError):
    pass


class NotAPlaneError(QContactError, ValueError):
    pass


class LeadingZeroError(QContactError, ValueError):
    pass


class NoMatchingZoneError(QContactError, ValueError):
    pass


class NumericalError(QContactError, ArithmeticError):
    """An internal consistency check failed beyond its tolerance."""


class SmallnessViolatedError(QContactError):
    """The ellipsoid is not small with respect to a quadric piece."""

    def __init__(self, message, verdict=None, piece=None):
        super().__init__(message)
        self.verdict = verdict
        self.piece = piece


class PatternMismatchError(QContactError):
    """No row of the sign-pattern table matches the coefficients.

    ``expected`` maps each candidate region to the root-sign pattern it
    requires, so callers can report what was looked for.
    """

    def __init__(self, message, observed=None, expected=None):
        super().__init__(message)
        self.observed = observed
        self.expected = expected or {}

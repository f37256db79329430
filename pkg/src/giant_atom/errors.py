"""Exception types raised by the scattering and analysis routines."""


class GiantAtomError(Exception):
    """Base class for all package errors."""


class InvalidInputError(GiantAtomError, ValueError):
    """A parameter is non-finite, negative where it must not be, or malformed."""


class NumericalError(GiantAtomError, ArithmeticError):
    """Base class for failures that are numerical rather than user input."""


class NumericalSingularityError(NumericalError):
    """The cleared denominator vanished while the numerator did not.

    Attributes:
        index: Grid index at which the failure occurred, if raised from a sweep.
    """

    def __init__(self, message, index=None):
        if index is not None:
            message = f"{message} (grid index {index})"
        super().__init__(message)
        self.index = index


class ResonanceRequiredError(InvalidInputError):
    """A resonant-only formula was called with omega_s != omega_e."""


class RegimeMismatchError(InvalidInputError):
    """The coupling does not belong to the regime a formula assumes."""


class InvalidGridError(InvalidInputError):
    """A sweep grid violates its invariants."""


class CountMismatchError(GiantAtomError):
    """An analysis expected a fixed number of features and found another.

    Attributes:
        found: Number of features actually located.
        expected: Number that was required.
    """

    def __init__(self, found, expected=2):
        super().__init__(f"expected {expected} transmission dips, found {found}")
        self.found = found
        self.expected = expected

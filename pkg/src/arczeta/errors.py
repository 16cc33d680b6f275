"""Exception types shared across the package."""


class ArczetaError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ArczetaError, ValueError):
    """Malformed textual input: polynomial strings, germs, JSON files."""


class UnsupportedComputationError(ArczetaError):
    """The request is well-formed but outside the supported regime.

    Raised instead of guessing: an unsupported request never produces a
    wrong answer.
    """


class ClassifyError(ArczetaError):
    """Exponent recovery failed (typically: truncation order too small)."""

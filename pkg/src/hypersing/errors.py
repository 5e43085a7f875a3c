"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class HypersingError(Exception):
    """Base class for every error raised by the package."""


class ParseError(HypersingError, ValueError):
    """Malformed polynomial text. ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ArityError(HypersingError, ValueError):
    """Operands live in rings with different numbers of variables."""


class PreconditionError(HypersingError):
    """An operation was called outside the domain where it is valid."""


class NonIsolatedError(PreconditionError):
    """The Jacobian quotient is not finite dimensional."""


class SmoothGermError(PreconditionError):
    """The germ is smooth at the origin, so there is no Milnor algebra."""


class NotConvenientError(PreconditionError):
    pass


class DegenerateError(PreconditionError):
    pass

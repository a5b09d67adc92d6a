"""Exception hierarchy shared across the package.

Domain errors (unknown ids, bad feature requests) derive from DomainError;
input problems (broken files) derive from InputError so the CLI can map the
two groups onto distinct exit codes.
"""

from __future__ import annotations


class OcelfError(Exception):
    """Base class for all errors raised by this package."""


class InputError(OcelfError):
    """A file could not be read or understood."""


class ParseError(InputError):
    """Malformed JSON; carries line/column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class SchemaError(InputError):
    """Well-formed JSON that violates the expected OCEL document shape."""


class IoError(InputError):
    """Underlying OS-level read/write failure."""


class DomainError(OcelfError):
    """A request that is invalid against a (valid) log."""


class UnknownEvent(DomainError):
    pass


class UnknownObject(DomainError):
    pass


class UnknownType(DomainError):
    pass


class NotInExecution(DomainError):
    """Feature requested for an event outside the given execution."""


class TypeMismatch(DomainError):
    """A non-numeric attribute value was used where a number is required."""


class UnsupportedSpec(DomainError):
    """Feature spec not usable in the requested context (e.g. time series)."""


class SpecGrammarError(DomainError):
    """A feature spec string that does not parse."""

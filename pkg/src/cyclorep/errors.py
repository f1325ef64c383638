"""Exceptions shared by every module in the package.

Each error carries a stable ``kind`` string used by the HTTP service and the
CLI to map failures onto responses and exit codes without string matching.
"""

from __future__ import annotations


class CycloRepError(Exception):
    """Base class for all errors raised by this package."""

    kind = "error"


class DomainError(CycloRepError):
    """An argument lies outside an operation's documented domain."""

    kind = "domain"


class PolyParseError(CycloRepError):
    """Text does not conform to the polynomial or factorization grammar."""

    kind = "parse"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class InexactDivisionError(CycloRepError):
    """A division that had to be exact left a nonzero remainder."""

    kind = "inexact-division"

    def __init__(self, message: str, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class InconsistencyError(CycloRepError):
    """Inputs contradict the relationship the caller asserted between them."""

    kind = "inconsistency"


class NotPureCyclotomicError(CycloRepError):
    """A decomposition finished with a residual other than +-1."""

    kind = "not-pure-cyclotomic"

    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


class NotAPolynomialError(CycloRepError):
    """A C-aware value implies a negative net multiplicity for some Phi_d."""

    kind = "not-a-polynomial"

    def __init__(self, message: str, divisor: int | None = None):
        super().__init__(message)
        self.divisor = divisor


class CapacityError(CycloRepError):
    """A value does not fit the bit width assigned to its field."""

    kind = "capacity"

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class MalformedBlobError(CycloRepError):
    """An encoded blob violates the container format."""

    kind = "malformed-blob"


class InvariantViolationError(CycloRepError):
    """An internal invariant failed.  Indicates a bug, never bad input."""

    kind = "invariant"

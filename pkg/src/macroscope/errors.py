"""Exception hierarchy shared by all macroscope modules."""

from __future__ import annotations


class MacroscopeError(ValueError):
    """Base class for every error raised by this package."""


class DimensionMismatch(MacroscopeError):
    pass


class NonPositiveInput(MacroscopeError):
    pass


class NegativeError(MacroscopeError):
    pass


class DegenerateGeometry(MacroscopeError):
    pass


class UnphysicalInput(MacroscopeError):
    pass


class InvalidQuantumNumber(MacroscopeError):
    pass


class NearResonance(MacroscopeError):
    pass


class EmptyLevelSet(MacroscopeError):
    pass


class ZeroDistinction(MacroscopeError):
    pass


class MissingParameter(MacroscopeError):
    pass


class EmptyDataset(MacroscopeError):
    pass


class _LocatedError(MacroscopeError):
    """Error tied to a position in a record file."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        prefix = []
        if line is not None:
            prefix.append(f"line {line}")
        if field is not None:
            prefix.append(f"field '{field}'")
        self.detail = message
        super().__init__(": ".join(prefix + [message]))


class ParseError(_LocatedError):
    pass


class UnitError(_LocatedError):
    pass


class ValidationError(_LocatedError):
    pass

"""Exception family raised by k3fib."""

from __future__ import annotations

from typing import Optional


class K3FibException(Exception):
    """Root of every error raised by the package."""


class FieldError(K3FibException, ZeroDivisionError):
    """Invalid field operation (division by zero, non-F3 element in F3 mode)."""


class ParseError(K3FibException, ValueError):
    """Malformed text input. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: Optional[int] = None, source: Optional[str] = None):
        self.message = message
        self.line = line
        self.source = source
        prefix = ""
        if source is not None:
            prefix += f"{source}:"
        if line is not None:
            prefix += f"{line}:"
        super().__init__(f"{prefix} {message}" if prefix else message)


class ModelError(K3FibException):
    """Weierstrass model or section outside the supported shape."""


class UnsupportedPlaceError(K3FibException):
    """Place of residue degree > 1 over F9."""


class ClassificationError(K3FibException):
    """Tate or quasi-elliptic classification could not complete."""


class LatticeError(K3FibException, ValueError):
    """Invalid root label, component pair or rank accounting."""


class NeighborError(K3FibException):
    """Neighbor step could not be carried out for the given divisor."""

    def __init__(self, message: str, rank: Optional[int] = None, unknowns: Optional[int] = None):
        self.rank = rank
        self.unknowns = unknowns
        if rank is not None and unknowns is not None:
            message = f"{message} (constraint rank {rank} over {unknowns} unknowns)"
        super().__init__(message)


class CorpusError(K3FibException):
    """Malformed corpus file or record."""

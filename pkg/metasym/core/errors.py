"""Exception hierarchy shared by every Metasym module.

Checkers report failed mathematical checks in their return value; the
exceptions below signal violated preconditions and malformed input.
"""

from __future__ import annotations

from pathlib import Path


class MetasymError(Exception):
    """Base class for all domain errors."""


class InvalidMatrixError(MetasymError):
    """A Coxeter matrix violates symmetry, diagonal or order constraints."""


class CapExceededError(MetasymError):
    """Group enumeration passed its cap without closing."""


class BraidLimitError(MetasymError):
    """A braid-move class grew beyond the configured limit."""


class LetterOutOfRangeError(MetasymError):
    """A word uses a generator index outside ``[1, rank]``."""


class NotUniqueError(MetasymError):
    """An element that must be unique is not (corrupted tables)."""


class NotAGalleryError(MetasymError):
    """Consecutive chambers of a sequence are not adjacent."""


class DisconnectedError(MetasymError):
    """Two chambers lie in different connected components."""


class NonBuildingError(MetasymError):
    """Two minimal galleries with equal endpoints reduce to different elements."""


class InvalidFlagError(MetasymError):
    """A set of elements is not a flag."""


class WrongRankError(MetasymError):
    """A geometry has the wrong number of types for the requested check."""


class WrongMatrixError(MetasymError):
    """A group was built from a different Coxeter matrix than required."""


class TypeMismatchError(MetasymError):
    """An element has a different type than the operation expects."""


class NotACliqueError(MetasymError):
    """A point set is not pairwise collinear."""


class UnsupportedFieldError(MetasymError):
    """No arithmetic tables exist for the requested field order."""


class InvariantViolationError(MetasymError):
    """An internal invariant failed while building a structure."""


class InputFormatError(MetasymError):
    """A file could not be parsed; carries the offending location."""

    def __init__(self, message: str, path: str | Path | None = None, line: int | None = None) -> None:
        self.path = str(path) if path is not None else None
        self.line = line
        location = ""
        if self.path is not None:
            location = self.path
            if line is not None:
                location += f":{line}"
            location += ": "
        elif line is not None:
            location = f"line {line}: "
        super().__init__(f"{location}{message}")


class UsageError(MetasymError):
    """Malformed command-line arguments."""

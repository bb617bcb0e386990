"""Exception hierarchy for hyperwalk.

Verdict-style operations (productivity, distance-regularity, well-definedness)
report negative answers through verdict objects; the exceptions below are for
inputs that cannot be processed at all.
"""
from __future__ import annotations

from typing import Any, Sequence


class HyperwalkError(Exception):
    """Base class for all hyperwalk errors."""


class GraphError(HyperwalkError, ValueError):
    """A finite graph violates a structural requirement (loops, duplicates, asymmetry, disconnection)."""


class MalformedOracleError(HyperwalkError):
    """A lazy neighbor oracle returned an inconsistent relation."""


class LevelOutOfRangeError(HyperwalkError, IndexError):
    """A requested level is beyond the eccentricity of the base point."""


class ScopeError(HyperwalkError):
    """A check needs a deeper table than the one supplied."""

    def __init__(self, message: str, required_depth: int):
        super().__init__(message)
        self.required_depth = required_depth


class NotASchemeError(HyperwalkError):
    """Intersection counts depend on the chosen pair, not only on its distance."""

    def __init__(self, message: str, witness: Sequence[Any]):
        super().__init__(message)
        self.witness = tuple(witness)


class SearchBoundError(HyperwalkError):
    """An exhaustive search was requested beyond its documented bound."""


class NotSelfCenteredError(HyperwalkError):
    """The convolution is undefined on a finite graph that is not self-centered."""

    def __init__(self, message: str, witness: Any):
        super().__init__(message)
        self.witness = witness


class InvalidUsageError(HyperwalkError):
    """An operation was called with arguments it does not accept."""


class UnknownFamilyError(InvalidUsageError):
    """A graph spec names a family hyperwalk does not know."""

    def __init__(self, message: str, valid: Sequence[str]):
        super().__init__(f"{message}; valid specs: {', '.join(valid)}")
        self.valid = tuple(valid)


class ParameterRangeError(InvalidUsageError):
    """A family parameter is outside its documented range."""

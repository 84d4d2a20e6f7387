"""Exception hierarchy shared by every qdeform module."""

from __future__ import annotations


class QDeformError(Exception):
    """Base class for all library errors."""


class DomainError(QDeformError, ValueError):
    """An operand or parameter lies outside the real domain of an operation."""


class UnsupportedError(DomainError):
    """The parameter regime is deliberately not handled (e.g. complex branches)."""


class ResourceError(QDeformError):
    """An exact computation would exceed the configured size budget."""

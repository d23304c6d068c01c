from __future__ import annotations


class CellAlgError(Exception):
    """Base class for all package errors."""


class InputError(CellAlgError, ValueError):
    """Malformed or inconsistent input (dimension mismatch, bad spec)."""


class DomainError(CellAlgError, ValueError):
    """Operation undefined for this argument (e.g. a label outside Lambda^0)."""


class UnsupportedOperation(CellAlgError):
    """Operation not available over the active field (e.g. positive characteristic)."""


class AssumptionViolation(CellAlgError):
    """An idempotent family violates the admissibility conditions."""


class ResourceLimitError(CellAlgError):
    """A size cap would be exceeded."""

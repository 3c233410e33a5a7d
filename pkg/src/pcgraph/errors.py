"""Exception types shared across the package."""
from __future__ import annotations


class PcgError(Exception):
    """Base class for all package-specific errors."""


class PcgValidationError(PcgError, ValueError):
    """A projected-coloring graph violates a structural rule.

    Carries the full validation report so callers can render every
    violation, not just the first.
    """

    def __init__(self, report):
        self.report = report
        lines = "; ".join(v.message for v in report.violations)
        super().__init__(f"invalid projected-coloring graph: {lines}")


class StateConditionError(PcgError, ValueError):
    """State-construction inputs violate an admissibility condition."""


class ResourceLimitError(PcgError, RuntimeError):
    """An exhaustive operation was asked to exceed its configured cap."""


class CrossCheckError(PcgError, RuntimeError):
    """Two independent verification routes disagreed.

    This should never happen; it indicates a bug in one of the routes
    and is surfaced loudly instead of producing a certificate.
    """


class CatalogKeyError(PcgError, KeyError):
    """Unknown catalog entry id or out-of-range entry parameter."""


class PcgFileError(PcgError, ValueError):
    """An instance file failed to parse or carried unknown/invalid fields."""

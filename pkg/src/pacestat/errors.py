"""Exception hierarchy.

Every error raised by the package derives from :class:`StatsError`, which is
a ``ValueError`` so callers that only care about bad input can catch that.
"""


class StatsError(ValueError):
    """Base class. ``stage`` names the pipeline step that failed, if known."""

    stage: str | None = None


class DomainError(StatsError):
    """Argument outside the mathematical domain of the function."""


class ConvergenceError(StatsError):
    """An iterative method failed to reach its tolerance."""


class InsufficientDataError(StatsError):
    """A group has too few observations."""


class DegenerateError(StatsError):
    """A statistic is undefined because some spread is exactly zero."""


class ZeroVarianceError(DegenerateError):
    """A group variance is zero where weights 1/s^2 are needed."""


class SchemaError(StatsError):
    """Input table is missing a required column."""


class NotPaceError(DomainError):
    """Release speed below the slowest pace band."""


class UndefinedIndicatorError(StatsError):
    """Indicator has a zero denominator (no wickets, no balls)."""


class EmptyGroupError(StatsError):
    """A speed category received no bowlers."""

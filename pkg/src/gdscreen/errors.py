"""Exception hierarchy shared across the toolkit.

Validation problems (bad files, bad parameters, impossible requests) and
numerical failures (LP breakdowns, rank deficiency) are kept apart so the
command line can map them to distinct exit codes.
"""


class ScreeningError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(ScreeningError):
    """Invalid input: malformed file, out-of-range parameter, bad request."""


class NumericalError(ScreeningError):
    """A numerical procedure failed (LP infeasible/stalled, degenerate data)."""


class RankDeficiencyError(NumericalError):
    """A least-squares subset is not of full column rank."""

    def __init__(self, message: str, column: int | None = None):
        super().__init__(message)
        self.column = column

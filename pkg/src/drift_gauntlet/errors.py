"""Exception hierarchy for drift_gauntlet.

Argument-shaped failures also derive from ``ValueError`` so callers that
only guard against bad input keep working.
"""


class DriftGauntletError(Exception):
    """Base class for all errors raised by the toolkit."""


class EmptyScheme(DriftGauntletError, ValueError):
    """No window pair fits into the stream."""


class NoAdversarialExists(DriftGauntletError):
    """The difference rows only admit constant solutions."""


class BinarizationInfeasible(DriftGauntletError):
    """No non-constant binary vector satisfies the constraints."""


class OddHead(DriftGauntletError, ValueError):
    """A balanced head was requested with an odd length."""


class NoFeasibleDuty(DriftGauntletError, ValueError):
    """No head ones-count yields an integral number of ones per period."""


class QuadratureUnstable(DriftGauntletError, ValueError):
    """Too few quadrature panels for a discontinuous function."""


class RangeViolation(DriftGauntletError, ValueError):
    """A profile value left the unit interval."""


class DimensionMismatch(DriftGauntletError, ValueError):
    """Points do not share a common dimension."""


class ParseError(DriftGauntletError, ValueError):
    """A stream or profile file could not be parsed."""

    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ExperimentCellError(DriftGauntletError):
    """A run inside an experiment grid failed."""

    def __init__(self, dataset: str, scheme: str, run: int, cause: Exception):
        self.dataset = dataset
        self.scheme = scheme
        self.run = run
        super().__init__(f"[{dataset} x {scheme}, run {run}] {cause}")

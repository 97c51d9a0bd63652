"""Exception types raised across the package."""


class ArchefitError(Exception):
    """Base class for all package errors."""


class ArgumentError(ArchefitError, ValueError):
    """An argument is out of range or shapes do not agree."""


class DataError(ArchefitError, ValueError):
    """Input data is malformed (non-finite values, bad file rows, ...)."""


class IterationLimitError(ArchefitError, RuntimeError):
    """An iterative solver hit its iteration cap.

    The best iterate found so far is attached as ``best``.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class NotPositiveDefiniteError(ArchefitError, ValueError):
    """A matrix expected to be SPD had a non-positive pivot.

    ``index`` is the pivot (row/column) at which the factorisation failed.
    """

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class DomainError(ArchefitError, ValueError):
    """An argument value lies outside the basis domain."""


class UnderdeterminedFitError(ArchefitError, ValueError):
    """A curve has too few or too degenerate sample points for the basis.

    ``curve_id`` names the offending curve.
    """

    def __init__(self, message, curve_id):
        super().__init__(message)
        self.curve_id = curve_id


class DegenerateVarianceError(ArchefitError, ValueError):
    """Pointwise standard deviation vanished during standardisation.

    ``argument`` is a grid point at which the deviation is ~0.
    """

    def __init__(self, message, argument):
        super().__init__(message)
        self.argument = argument


class AlignmentError(ArchefitError, ValueError):
    """Components of a multivariate dataset do not share ids.

    ``ids`` lists the offending identifiers.
    """

    def __init__(self, message, ids):
        super().__init__(message)
        self.ids = ids

"""Exception types raised by fsrpath."""


class FsrPathError(Exception):
    """Base class for all fsrpath errors."""


class NonFiniteInput(FsrPathError):
    """An input array contains NaN or infinite entries."""


class DimensionError(FsrPathError):
    """Array dimensions are incompatible with the requested operation."""


class EmptyComplement(FsrPathError):
    """The source index set covers every column, leaving nothing to mimic."""


class ZeroVarianceResponse(FsrPathError):
    """The null-model gradient is identically zero; no penalty grid exists."""


class NoConvergence(FsrPathError):
    """Coordinate descent exhausted its sweep budget.

    Attributes
    ----------
    lambda_index : int
        Position in the penalty grid at which the failure occurred.
    """

    def __init__(self, message, lambda_index=None):
        super().__init__(message)
        self.lambda_index = lambda_index


class SeparationDetected(FsrPathError):
    """The logistic fit diverged (quasi-separation) at the first grid point.

    Attributes
    ----------
    lambda_index : int
        Position in the penalty grid at which divergence was detected.
    """

    def __init__(self, message, lambda_index=None):
        super().__init__(message)
        self.lambda_index = lambda_index


class AllCensored(FsrPathError):
    """Survival data contain no observed failures."""

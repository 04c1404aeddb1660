"""Exception hierarchy shared across the package."""


class PtScarfError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PtScarfError):
    """A parameter lies outside its admissible domain (e.g. alpha <= 0)."""


class RegimeError(PtScarfError):
    """An operation was applied to parameters in the wrong symmetry regime."""


class RepresentationError(PtScarfError):
    """An exchanged complex parameter pair cannot be written back in the
    real (A, B, alpha, c_pt) parameterization."""


class NonNormalizableError(PtScarfError):
    """The requested state is not normalizable (decay exponent Re(a) <= 0)."""


class GridError(PtScarfError):
    """The grid is malformed (even point count, too few points, ...)."""


class ConvergenceError(PtScarfError):
    """The eigensolver failed; any eigenvalues recovered so far are attached.

    Attributes:
      partial: tuple of eigenvalues computed before the failure (may be empty).
    """

    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = tuple(partial)


class MatchError(PtScarfError):
    """An analytic level found no numerical partner within tolerance.

    Attributes:
      report: the partially assembled SpectrumReport, for inspection.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ValidationError(PtScarfError):
    """Invalid run configuration (CLI flags or config file)."""

"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`FfentError`
so the command line layer can map failure classes onto exit codes.
"""


class FfentError(Exception):
    """Base class for all package errors."""


class ConfigError(FfentError, ValueError):
    """Malformed or out-of-range experiment configuration."""


class GeometryError(FfentError, ValueError):
    """Invalid lattice geometry (box sizes, regions, axes)."""


class ModelError(FfentError, ValueError):
    """Potential model not applicable to the requested lattice."""


class ParameterError(FfentError, ValueError):
    """Scalar parameter outside its admissible range."""


class DomainError(FfentError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class SizeError(FfentError, ValueError):
    """Problem too large for a brute-force routine."""


class NumericError(FfentError, ArithmeticError):
    """Non-finite input or failed numerical health check."""


class NumericHealthError(NumericError):
    """Eigenvalues drifted outside the clipping band or a hard bound failed."""


class DegenerateFermiLevel(NumericError):
    """The chemical potential coincides with an eigenvalue."""


class GaplessFilling(NumericError):
    """No spectral gap at the requested filling."""


class FitUnderdetermined(FfentError):
    """Too few usable points for a decay fit."""


class StatisticalPowerError(FfentError, ValueError):
    """Too few realizations for the requested statistic."""


class TruncationError(NumericError):
    """A truncated sum could not be certified within tolerance."""


class ExperimentAborted(NumericError):
    """Too many realizations failed the per-realization numeric checks."""

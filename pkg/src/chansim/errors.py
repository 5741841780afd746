"""Exception and warning types shared across the package."""


class ChansimError(Exception):
    """Base class for all chansim errors."""


class InvalidMatrix(ChansimError):
    """Matrix input violates a structural precondition (non-finite, all-zero, ...)."""


class NotPSD(ChansimError):
    """Matrix has an eigenvalue below the numerical PSD tolerance."""


class InvalidParam(ChansimError):
    """Scalar or structural parameter outside its valid range."""


class RankDeficient(ChansimError):
    """Gram matrix is singular or too ill-conditioned for zero-forcing."""


class ZeroColumn(ChansimError):
    """Precoding column has zero norm and cannot be normalized."""


class ZeroVector(ChansimError):
    """Vector argument is identically zero."""


class ConfigError(ChansimError):
    """Experiment configuration is malformed or inconsistent."""


class IoError(ChansimError):
    """Output path cannot be written."""


class QuadratureWarning(UserWarning):
    """Quadrature rule may be too coarse for the requested integrand."""


class ValidityWarning(UserWarning):
    """Parameters are outside the stated validity range of an approximation."""

"""Exception types raised by bqline operations."""


class BqlineError(Exception):
    """Base class for all package-specific errors."""


class NonFiniteMultiplier(BqlineError):
    """A Fourier multiplier evaluated to NaN/inf on a grid node.

    Singular multipliers must be fused with compensating factors before
    they reach the spectral pipeline (see duhamel.m_fused_multiplier).
    """


class TailViolation(BqlineError):
    """Data does not decay at the edge of the truncated spatial box."""


class CompatibilityViolation(BqlineError):
    """Corner compatibility between initial and boundary data fails."""


class DegenerateData(BqlineError):
    """A ratio diagnostic was requested for (near-)zero input."""


class QuadratureNotConverged(BqlineError):
    """Doubling the quadrature node count moved the result too much."""


class ContourQuadratureNotConverged(QuadratureNotConverged):
    """Same doubling test, for the inverse-Laplace contour oracle."""


class NoContraction(BqlineError):
    """The fixed-point iteration failed to contract for any usable window."""


class StabilityViolation(BqlineError):
    """The explicit finite-difference march blew up."""


class RangeViolation(BqlineError):
    """A regularity/smoothing exponent is outside its admissible range."""


class ConfigError(BqlineError):
    """Invalid experiment configuration."""

"""Exception types shared across the package.

Two families, matching the CLI exit-code contract: bad input or
configuration (exit 1) versus a numerical procedure failing to
converge or produce usable output (exit 2).
"""


class PcaClusterError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(PcaClusterError):
    """Invalid input data, labels, shapes, or configuration."""


class NumericalError(PcaClusterError):
    """A numerical routine failed (non-convergence, malformed matrix)."""

"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes (config = 2, numerical = 3,
I/O = 4), so new exceptions should subclass one of the three roots.
"""


class SubRayleighError(Exception):
    """Base class for all package errors."""


class ConfigError(SubRayleighError):
    """Invalid configuration document or violated invariant."""


class NumericalError(SubRayleighError):
    """A numerical procedure could not produce a trustworthy result."""


class NonConvergenceError(NumericalError):
    """Quadrature self-check failed; carries the subdivision trace."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = list(trace) if trace is not None else []


class InsufficientDataError(NumericalError):
    """Signal does not contain enough structure for the requested estimate."""


class SingularPointError(NumericalError):
    """Evaluation requested exactly at a removable 0*inf point."""

"""Exception types shared across the package."""


class SglError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SglError):
    """Malformed numerical input: non-finite values or inconsistent shapes."""


class ConfigError(SglError):
    """A parameter lies outside its documented range."""


class DegenerateDataError(SglError):
    """The data admits no meaningful kernel (e.g. all samples identical)."""


class NumericalError(SglError):
    """A numerical routine failed (non-PD matrix, invalid residuals, ...)."""


class FormatError(SglError):
    """A dataset file could not be parsed."""


class SingularSystemError(NumericalError):
    """The harmonic system is unsolvable, usually because some connected
    component of the graph contains no labeled sample."""

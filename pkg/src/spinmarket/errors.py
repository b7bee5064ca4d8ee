"""Exception types shared across the package.

ConfigurationError maps to CLI exit code 1, DataError to exit code 2.
"""


class SpinMarketError(Exception):
    """Base class for package errors."""


class ConfigurationError(SpinMarketError):
    """Invalid parameters, flags, or configuration-file contents."""


class DataError(SpinMarketError):
    """Invalid or unusable data at run time (bad files, degenerate series)."""

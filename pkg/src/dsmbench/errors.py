"""Exception types shared across the toolkit.

Parameter/precondition violations raise plain ValueError. The classes here
cover the other failure families the CLI maps to exit codes: configuration
problems (exit 1), broken or inconsistent input data (exit 2), and numeric
failures during computation (exit 3).
"""


class ConfigError(Exception):
    """A configuration file, flag, or model name is invalid or missing."""


class DataError(Exception):
    """Input data is undecodable, malformed, or internally inconsistent."""


class NumericError(Exception):
    """A computation degenerated: non-finite values, divergence, empty mass."""

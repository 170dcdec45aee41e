"""Exception types shared across the package."""


class CrashsimError(Exception):
    """Base class for all crashsim errors."""


class InvalidParameterError(CrashsimError, ValueError):
    """A parameter violates its documented domain."""


class InputFormatError(CrashsimError):
    """A data file could not be parsed.

    line is 1-based; 0 means the problem is not tied to one line.
    """

    def __init__(self, message, path=None, line=0):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = f"{path}:{line}: " if line else f"{path}: "
        super().__init__(prefix + message)


class ConfigError(CrashsimError):
    """A run configuration is unusable."""

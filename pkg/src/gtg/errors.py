"""Exception hierarchy shared by every module."""


class GTGError(Exception):
    """Base class for all errors raised by this package."""


class InputError(GTGError, ValueError):
    """Invalid numeric input (shape, finiteness, sign)."""


class FormatError(InputError):
    """A file could not be parsed into the expected structure."""


class ConfigError(GTGError, ValueError):
    """Inconsistent parameters or label assignments."""


class ProtocolError(GTGError, ValueError):
    """Dataset does not fit the requested evaluation protocol."""

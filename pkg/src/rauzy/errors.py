class RauzyError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(RauzyError):
    """Invalid run configuration (bad level, field, padding...)."""


class PatchError(RauzyError):
    """A patch failed to stabilise or validate."""


class AlgebraError(RauzyError):
    """Relations collapsed or a sign assignment failed validation."""

"""Exception types shared across the package."""


class CapacityError(RuntimeError):
    """An exact-computation or table-size cap was exceeded."""


class SourceExhaustedError(RuntimeError):
    """A finite randomness source ran out of bits."""


class ConfigurationError(ValueError):
    """A stream-combination config is malformed or insufficient."""

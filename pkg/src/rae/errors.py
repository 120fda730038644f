"""Exception types shared across the package."""


class RaeError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(RaeError):
    """The input document is not well-formed (e.g. broken JSON)."""


class SchemaError(RaeError):
    """The document parses but misses required fields or has wrong types."""


class ConfigError(RaeError):
    """A caller-supplied configuration value is invalid."""


class CapacityError(RaeError):
    """A resource budget (argument count) was exceeded."""

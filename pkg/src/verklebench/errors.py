"""Shared exception types.

Everything inherits from ValueError so callers that do not care about the
distinction can catch one base class, while the CLI can map each type to its
own exit code.
"""


class DecodeError(ValueError):
    """Serialized bytes failed structural or curve validation."""


class MalformedProofError(ValueError):
    """A proof container is structurally inconsistent with its tree config."""


class CapacityError(ValueError):
    """An operation exceeded a configured capacity bound."""


class ConfigError(ValueError):
    """A configuration value is unsupported or inconsistent."""

"""Shared exception types."""


class InputError(ValueError):
    """Malformed or contract-violating input."""


class PrecisionError(RuntimeError):
    """A local computation could not be decided at the working precision."""


class SelfCheckError(RuntimeError):
    """An internal mathematical invariant failed; never expected on valid input."""

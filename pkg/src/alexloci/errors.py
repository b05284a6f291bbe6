"""Exception types shared by the library and the command line."""

from __future__ import annotations

import os


class AlexlociError(Exception):
    """Base class for all library errors."""


class InputError(AlexlociError, ValueError):
    """Malformed or mathematically invalid input."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class CapExceeded(AlexlociError):
    """A configured enumeration cap would be exceeded."""


DEFAULT_CAPS = {
    "minors": 10**6,
    "characters": 10**6,
    "support": 10,
    "vertices": 16,
}


def cap(name: str) -> int:
    """Current value of a cap, honouring ALEXLOCI_CAP_<NAME> overrides."""
    raw = os.environ.get(f"ALEXLOCI_CAP_{name.upper()}")
    if raw is None:
        return DEFAULT_CAPS[name]
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"cap override for {name!r} is not an integer: {raw!r}") from exc
    if value < 0:
        raise InputError(f"cap override for {name!r} must be non-negative")
    return value

from __future__ import annotations

import os
from dataclasses import dataclass, fields

from . import exceptions, logger

ENV_PREFIX = "UNISERIAL_TOOLS_"

LOG_LEVELS = (
    (10, "Debug"),
    (20, "Info"),
    (30, "Warning"),
    (40, "Error"),
    (50, "Critical"),
)

PREFERENCES: Preferences | None = None


def set_log_level(self: Preferences | None = None):
    """
    Set the logger's log level to the preferences value.

    Args:
        self (Preferences | None)
    """
    if not self:
        self = Preferences.this()
    logger.set_handler_levels("console", self.log_level)


@dataclass
class Preferences:
    """Package preferences, read once from the environment"""

    log_level: int = 20
    seed: int = 17
    random_samples: int = 64
    grid_max_dimension: int = 3

    def __post_init__(self):
        if self.log_level not in [level for level, _ in LOG_LEVELS]:
            raise exceptions.InputException(f"Invalid log level {self.log_level}")
        if self.random_samples < 1:
            raise exceptions.InputException("random_samples must be positive")
        if self.grid_max_dimension < 0:
            raise exceptions.InputException("grid_max_dimension must not be negative")

    @classmethod
    def from_environment(cls, environ: dict[str, str] | None = None) -> Preferences:
        """
        Build preferences from UNISERIAL_TOOLS_* environment variables.

        Args:
            environ (dict[str, str] | None): Environment, os.environ by default

        Returns:
            Preferences
        """
        if environ is None:
            environ = dict(os.environ)

        values = {}
        for field in fields(cls):
            raw = environ.get(f"{ENV_PREFIX}{field.name.upper()}")
            if raw is None:
                continue
            try:
                values[field.name] = int(raw)
            except ValueError:
                raise exceptions.InputException(
                    f"{ENV_PREFIX}{field.name.upper()} must be an integer, got {raw!r}"
                )

        return cls(**values)

    @classmethod
    def this(cls) -> Preferences:
        """
        Return the package-wide instance of the preferences.
        """
        global PREFERENCES
        if PREFERENCES is None:
            PREFERENCES = cls.from_environment()
        return PREFERENCES

    @classmethod
    def reset(cls):
        """
        Drop the cached instance so the environment is read again.
        """
        global PREFERENCES
        PREFERENCES = None

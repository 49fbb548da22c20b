# Copyright the tensaheyt authors, 2026.
# SPDX-License-Identifier: LGPL-3.0-or-later

import logging
import os
from typing import Any

import dotenv

from tensaheyt.types import ConfigurationError

dotenv.load_dotenv(dotenv.find_dotenv(usecwd=True))

LOG_LEVEL: str = os.getenv("TENSAHEYT_LOG_LEVEL", "WARNING").upper()

logging.basicConfig(level=LOG_LEVEL)

LOGGER: Any = logging.getLogger("tensaheyt")

DEFAULT_MAX_ELEMENTS: int = 2**12
DEFAULT_MAX_EVALUATIONS: int = 10**6
DEFAULT_MAX_PARTITION_ELEMENTS: int = 8


def env_int(name: str, default: int) -> int:
    raw = os.getenv(name)

    if raw is None or raw.strip() == "":
        return default

    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from None

    if value < 1:
        raise ConfigurationError(f"{name} must be positive, got {value}")

    return value


def max_elements() -> int:
    """Carrier size cap for every constructed algebra."""
    return env_int("TENSAHEYT_MAX_ELEMENTS", DEFAULT_MAX_ELEMENTS)


def max_evaluations() -> int:
    """Assignment-space cap for a single validity query."""
    return env_int("TENSAHEYT_MAX_EVALUATIONS", DEFAULT_MAX_EVALUATIONS)


def max_partition_elements() -> int:
    return env_int("TENSAHEYT_MAX_PARTITIONS", DEFAULT_MAX_PARTITION_ELEMENTS)

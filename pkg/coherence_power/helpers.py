"""Helper functions for the coherence-power package."""

from __future__ import annotations

import logging
import math
import os

import numpy as np

from .const import OPT_THREADS
from .core.coherence import NAMED_AXES
from .core.linalg import RealVector

_LOGGER = logging.getLogger(__name__)


def parse_floats(text: str) -> list[float]:
    """
    Parse a comma separated list of numbers.

    Args:
        text: String such as ``"0.6,0,0"``

    Returns:
        List of parsed floats

    Raises:
        ValueError: If an item is not a finite number

    """
    items = [item.strip() for item in text.split(",")]
    values = [float(item) for item in items if item]
    if not values or any(not math.isfinite(v) for v in values):
        msg = f"Expected comma separated finite numbers, got '{text}'"
        raise ValueError(msg)
    return values


def parse_direction(text: str) -> RealVector:
    """
    Parse a named axis (``x``, ``y``, ``z``) or a 3-vector and normalize it.

    Vectors given with a few printed digits (``0.7071,0,0.7071``) are scaled
    to unit length.

    Args:
        text: Axis name or comma separated components

    Returns:
        Unit 3-vector

    Raises:
        ValueError: If the text is not an axis name or a nonzero 3-vector

    """
    key = text.strip().lower()
    if key in NAMED_AXES:
        return np.asarray(NAMED_AXES[key], dtype=np.float64)
    values = parse_floats(key)
    if len(values) != 3:  # noqa: PLR2004
        msg = f"Direction must have 3 components, got {len(values)}"
        raise ValueError(msg)
    return normalize_direction(values)


def normalize_direction(vector: list[float] | RealVector) -> RealVector:
    """Scale a nonzero 3-vector to unit length."""
    vec = np.asarray(vector, dtype=np.float64)
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        msg = "Direction must be nonzero"
        raise ValueError(msg)
    return vec / norm


def get_thread_count() -> int:
    """
    Return the worker count for parameter sweeps.

    Reads ``COHERENCE_POWER_THREADS``; unset or invalid values fall back to the
    CPU count.
    """
    default = os.cpu_count() or 1
    raw = os.environ.get(OPT_THREADS)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        _LOGGER.warning("Ignoring invalid %s=%r", OPT_THREADS, raw)
        return default
    if value < 1:
        _LOGGER.warning("Ignoring non-positive %s=%d", OPT_THREADS, value)
        return default
    return value

"""Quantum coherence and the cohering and decohering power of channels."""

from __future__ import annotations

import logging

from .const import Measure, Method, PowerKind
from .core.channels import Channel
from .core.coherence import Observable, coherence
from .core.power import (
    PowerResult,
    closed_form_power,
    cohering_power,
    decohering_power,
)
from .core.states import DensityMatrix, PureState

__version__ = "0.1.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())

__all__ = [
    "Channel",
    "DensityMatrix",
    "Measure",
    "Method",
    "Observable",
    "PowerKind",
    "PowerResult",
    "PureState",
    "closed_form_power",
    "coherence",
    "cohering_power",
    "decohering_power",
]

"""
Parsing and validation of state, observable and channel specs.

Channel specs are JSON objects validated with voluptuous; states and
observables use short strings suitable for the command line. Every failure
is reported as a ``SpecError`` naming the offending field.
"""

from __future__ import annotations

import dataclasses
import json
import logging
import math
from pathlib import Path
from typing import Any

import numpy as np
import voluptuous as vol

from .const import MAX_DIM
from .core import channels
from .core.channels import Channel
from .core.coherence import Observable
from .core.linalg import complex_matrix
from .core.states import DensityMatrix, PureState, density_from_bloch
from .exceptions import CoherencePowerError, SpecError
from .helpers import normalize_direction, parse_direction, parse_floats

_LOGGER = logging.getLogger(__name__)

CONF_TYPE = "type"
CONF_AXIS = "axis"
CONF_THETA = "theta"
CONF_P = "p"
CONF_DIM = "dim"
CONF_FACTORS = "factors"
CONF_KRAUS = "kraus"
CONF_LABEL = "label"

TYPE_UNITARY = "unitary"
TYPE_DEPOLARIZING = "depolarizing"
TYPE_BITFLIP = "bitflip"
TYPE_PHASEFLIP = "phaseflip"
TYPE_CNOT = "cnot"
TYPE_TENSOR = "tensor"
TYPE_COMPOSE = "compose"
TYPE_KRAUS = "kraus"
TYPE_IDENTITY = "identity"
TYPE_HADAMARD = "hadamard"

# Fields each channel type requires and accepts besides type and label
TYPE_FIELDS: dict[str, tuple[set[str], set[str]]] = {
    TYPE_UNITARY: ({CONF_AXIS, CONF_THETA}, set()),
    TYPE_DEPOLARIZING: ({CONF_P}, set()),
    TYPE_BITFLIP: ({CONF_P}, set()),
    TYPE_PHASEFLIP: ({CONF_P}, set()),
    TYPE_CNOT: (set(), set()),
    TYPE_TENSOR: ({CONF_FACTORS}, set()),
    TYPE_COMPOSE: ({CONF_FACTORS}, set()),
    TYPE_KRAUS: ({CONF_KRAUS}, set()),
    TYPE_IDENTITY: (set(), {CONF_DIM}),
    TYPE_HADAMARD: (set(), set()),
}

NAMED_CHANNELS = (TYPE_HADAMARD, TYPE_IDENTITY, TYPE_CNOT)

COMPLEX_ENTRY = vol.All([vol.Coerce(float)], vol.Length(min=2, max=2))

CHANNEL_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_TYPE): vol.In(sorted(TYPE_FIELDS)),
        vol.Optional(CONF_AXIS): vol.All([vol.Coerce(float)], vol.Length(min=3, max=3)),
        vol.Optional(CONF_THETA): vol.Coerce(float),
        vol.Optional(CONF_P): vol.All(vol.Coerce(float), vol.Range(min=0.0, max=1.0)),
        vol.Optional(CONF_DIM): vol.All(int, vol.Range(min=1, max=MAX_DIM)),
        vol.Optional(CONF_FACTORS): vol.All([dict], vol.Length(min=1)),
        vol.Optional(CONF_KRAUS): vol.All([[COMPLEX_ENTRY]], vol.Length(min=1)),
        vol.Optional(CONF_LABEL): str,
    },
    extra=vol.PREVENT_EXTRA,
)

STATE_PLUS = "plus"
STATE_MINUS = "minus"
STATE_ZERO = "zero"
STATE_ONE = "one"
STATE_BLOCH = "bloch"
STATE_MIXED = "mixed"
STATE_KET = "ket"

NAMED_STATES: dict[str, tuple[float, float, float]] = {
    STATE_PLUS: (1.0, 0.0, 0.0),
    STATE_MINUS: (-1.0, 0.0, 0.0),
    STATE_ZERO: (0.0, 0.0, 1.0),
    STATE_ONE: (0.0, 0.0, -1.0),
}


def _field_path(prefix: str, path: list[Any]) -> str:
    out = prefix
    for item in path:
        if isinstance(item, int):
            out = f"{out}[{item}]"
        else:
            out = f"{out}.{item}" if out else str(item)
    return out or "channel"


def validate_channel_spec(spec: Any, prefix: str = "") -> dict[str, Any]:
    """
    Validate a channel spec and its nested factors.

    Args:
        spec: Decoded JSON value
        prefix: Field path of ``spec`` inside an enclosing spec

    Returns:
        The validated spec with coerced values

    Raises:
        SpecError: If a field is missing, unknown, or malformed

    """
    if not isinstance(spec, dict):
        raise SpecError(prefix or "channel", "expected a JSON object")
    try:
        data = CHANNEL_SCHEMA(spec)
    except vol.Invalid as err:
        raise SpecError(_field_path(prefix, list(err.path)), err.msg) from err

    kind = data[CONF_TYPE]
    required, optional = TYPE_FIELDS[kind]
    present = set(data) - {CONF_TYPE, CONF_LABEL}
    missing = sorted(required - present)
    if missing:
        raise SpecError(_field_path(prefix, missing[:1]), f"required for type '{kind}'")
    unused = sorted(present - required - optional)
    if unused:
        raise SpecError(_field_path(prefix, unused[:1]), f"not used by type '{kind}'")

    if CONF_FACTORS in data:
        data[CONF_FACTORS] = [
            validate_channel_spec(factor, _field_path(prefix, [CONF_FACTORS, i]))
            for i, factor in enumerate(data[CONF_FACTORS])
        ]
    return data


def _build_kraus(ops: list[list[list[float]]], prefix: str) -> Channel:
    matrices = []
    for i, op in enumerate(ops):
        try:
            matrices.append(complex_matrix(complex(re, im) for re, im in op))
        except CoherencePowerError as err:
            raise SpecError(_field_path(prefix, [CONF_KRAUS, i]), str(err)) from err
    try:
        return channels.kraus_channel(matrices)
    except CoherencePowerError as err:
        raise SpecError(_field_path(prefix, [CONF_KRAUS]), str(err)) from err


def _build(data: dict[str, Any], prefix: str) -> Channel:
    channel = _build_kind(data, prefix)
    if CONF_LABEL in data:
        return dataclasses.replace(channel, label=data[CONF_LABEL])
    return channel


def _build_kind(data: dict[str, Any], prefix: str) -> Channel:
    kind = data[CONF_TYPE]
    if kind == TYPE_UNITARY:
        try:
            axis = normalize_direction(data[CONF_AXIS])
        except ValueError as err:
            raise SpecError(_field_path(prefix, [CONF_AXIS]), str(err)) from err
        return channels.unitary_rotation(axis, data[CONF_THETA])
    if kind == TYPE_DEPOLARIZING:
        return channels.depolarizing(data[CONF_P])
    if kind == TYPE_BITFLIP:
        return channels.bit_flip(data[CONF_P])
    if kind == TYPE_PHASEFLIP:
        return channels.phase_flip(data[CONF_P])
    if kind == TYPE_CNOT:
        return channels.cnot()
    if kind == TYPE_IDENTITY:
        return channels.identity(data.get(CONF_DIM, 2))
    if kind == TYPE_HADAMARD:
        return channels.hadamard()
    if kind == TYPE_KRAUS:
        return _build_kraus(data[CONF_KRAUS], prefix)

    factors = [
        _build(factor, _field_path(prefix, [CONF_FACTORS, i]))
        for i, factor in enumerate(data[CONF_FACTORS])
    ]
    if kind == TYPE_TENSOR:
        return channels.tensor(factors)
    return channels.compose(factors)


def build_channel(spec: Any) -> Channel:
    """
    Validate a decoded channel spec and construct the channel.

    Raises:
        SpecError: If the spec is malformed or describes an invalid channel

    """
    data = validate_channel_spec(spec)
    try:
        channel = _build(data, "")
    except SpecError:
        raise
    except CoherencePowerError as err:
        raise SpecError("channel", str(err)) from err
    _LOGGER.debug(
        "Built channel '%s' (dim %d, %d Kraus)",
        channel.label,
        channel.dim,
        len(channel.kraus),
    )
    return channel


def load_channel_spec(text: str) -> Any:
    """
    Decode a channel argument: a named shortcut, inline JSON, or a JSON file path.

    Raises:
        SpecError: If the JSON cannot be decoded
        OSError: If the file cannot be read

    """
    key = text.strip()
    if key.lower() in NAMED_CHANNELS:
        return {CONF_TYPE: key.lower()}
    if not key.startswith(("{", "[")):
        key = Path(key).read_text(encoding="utf-8")
    try:
        return json.loads(key)
    except json.JSONDecodeError as err:
        raise SpecError("channel", f"invalid JSON: {err.msg}") from err


def parse_channel(text: str) -> Channel:
    """Decode and build a channel argument."""
    return build_channel(load_channel_spec(text))


def parse_state(text: str, field: str = "state") -> DensityMatrix:
    """
    Parse a state spec.

    Accepted forms are ``plus``, ``minus``, ``zero``, ``one``,
    ``bloch:x,y,z`` or ``mixed:x,y,z`` (a qubit Bloch vector) and
    ``ket:a,b,...`` (amplitudes, complex allowed as ``1+2j``, normalized).

    Raises:
        SpecError: If the spec is malformed or not a valid state

    """
    key = text.strip().lower()
    try:
        if key in NAMED_STATES:
            return density_from_bloch(NAMED_STATES[key])
        kind, _, body = key.partition(":")
        if kind in (STATE_BLOCH, STATE_MIXED):
            values = parse_floats(body)
            if len(values) != 3:  # noqa: PLR2004
                reason = f"Bloch vector needs 3 components, got {len(values)}"
                raise SpecError(field, reason)
            return density_from_bloch(values)
        if kind == STATE_KET:
            amps = [complex(item.strip()) for item in body.split(",") if item.strip()]
            if not amps or any(not math.isfinite(abs(a)) for a in amps):
                raise SpecError(field, "ket needs finite amplitudes")
            return PureState.normalized(np.asarray(amps)).density()
    except SpecError:
        raise
    except (ValueError, CoherencePowerError) as err:
        raise SpecError(field, str(err)) from err
    raise SpecError(field, f"unknown state '{text}'")


def parse_observable(text: str, field: str = "obs") -> Observable:
    """
    Parse an observable spec: a Pauli name (``z``, ``xz``) or a qubit direction.

    Raises:
        SpecError: If the spec is malformed

    """
    key = text.strip().lower()
    try:
        if key.isalpha():
            return Observable.named(key)
        return Observable.pauli_axis(parse_direction(key))
    except (ValueError, CoherencePowerError) as err:
        raise SpecError(field, str(err)) from err

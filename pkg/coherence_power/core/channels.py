"""Quantum channels in Kraus form and their qubit Bloch-affine representation."""

from __future__ import annotations

import dataclasses
import functools
import itertools
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np
import numpy.typing as npt

from coherence_power.const import TP_TOL
from coherence_power.exceptions import DimensionMismatchError, InvalidChannelError

from .linalg import (
    IDENTITY2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    ComplexMatrix,
    RealVector,
    kron,
    pauli_dot,
)
from .states import (
    DensityMatrix,
    as_unit_vector,
    bloch_from_density,
    density_from_bloch,
)

FAMILY_IDENTITY = "identity"
FAMILY_UNITARY = "unitary"
FAMILY_DEPOLARIZING = "depolarizing"
FAMILY_BITFLIP = "bitflip"
FAMILY_PHASEFLIP = "phaseflip"
FAMILY_CNOT = "cnot"
FAMILY_TENSOR = "tensor"
FAMILY_COMPOSE = "compose"
FAMILY_KRAUS = "kraus"


@dataclass(frozen=True, eq=False)
class Channel:
    """
    Completely positive trace-preserving map rho -> sum_n K_n rho K_n^dagger.

    ``family`` names the constructor that produced the channel and ``params``
    its real parameters, so closed forms can be matched to it later.
    """

    kraus: tuple[ComplexMatrix, ...]
    label: str
    family: str = FAMILY_KRAUS
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Validate shapes and trace preservation."""
        ops = tuple(np.asarray(op, dtype=np.complex128) for op in self.kraus)
        if not ops:
            msg = "A channel needs at least one Kraus operator"
            raise InvalidChannelError(msg)
        dim = ops[0].shape[0]
        for op in ops:
            if op.shape != (dim, dim):
                msg = f"Kraus operator shape {op.shape} does not match ({dim}, {dim})"
                raise InvalidChannelError(msg)

        completeness = sum(op.conj().T @ op for op in ops)
        deviation = float(np.linalg.norm(completeness - np.eye(dim)))
        if deviation > TP_TOL:
            msg = (
                f"Channel '{self.label}' is not trace preserving "
                f"(deviation {deviation:.3e})"
            )
            raise InvalidChannelError(msg)

        object.__setattr__(self, "kraus", ops)
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))

    @property
    def dim(self) -> int:
        """Return the input/output dimension."""
        return self.kraus[0].shape[0]

    @property
    def is_unitary(self) -> bool:
        """Return True for single-Kraus channels."""
        return len(self.kraus) == 1


@dataclass(frozen=True, eq=False)
class BlochAffineMap:
    """Qubit channel action on Bloch vectors: m -> linear m + shift."""

    linear: npt.NDArray[np.float64]
    shift: RealVector

    def __call__(self, vector: npt.ArrayLike) -> RealVector:
        """Map a Bloch vector."""
        return self.linear @ np.asarray(vector, dtype=np.float64) + self.shift


def _check_probability(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        msg = f"Probability p must lie in [0, 1], got {p}"
        raise InvalidChannelError(msg)
    return float(p)


def apply(ch: Channel, rho: DensityMatrix) -> DensityMatrix:
    """
    Return sum_n K_n rho K_n^dagger.

    Raises:
        DimensionMismatchError: If the state and channel dimensions differ.

    """
    if rho.dim != ch.dim:
        msg = f"State dimension {rho.dim} does not match channel {ch.dim}"
        raise DimensionMismatchError(msg)
    out = sum(op @ rho.mat @ op.conj().T for op in ch.kraus)
    return DensityMatrix(out)


def kraus_channel(
    ops: Iterable[npt.ArrayLike], label: str = FAMILY_KRAUS
) -> Channel:
    """Wrap an explicit Kraus list, validating trace preservation."""
    return Channel(kraus=tuple(np.asarray(op) for op in ops), label=label)


def identity(dim: int = 2) -> Channel:
    """Return the identity channel."""
    return Channel(
        kraus=(np.eye(dim, dtype=np.complex128),),
        label=FAMILY_IDENTITY,
        family=FAMILY_IDENTITY,
    )


def unitary(u: npt.ArrayLike, label: str = FAMILY_UNITARY) -> Channel:
    """Return the channel rho -> U rho U^dagger."""
    return Channel(kraus=(np.asarray(u, dtype=np.complex128),), label=label)


def unitary_rotation(n_hat: npt.ArrayLike, theta: float) -> Channel:
    """Return U = exp(i theta/2 n.sigma) = cos(theta/2) I + i sin(theta/2) n.sigma."""
    try:
        n = as_unit_vector(n_hat, "axis")
    except ValueError as error:
        raise InvalidChannelError(str(error)) from error
    u = math.cos(theta / 2) * IDENTITY2 + 1j * math.sin(theta / 2) * pauli_dot(n)
    return Channel(
        kraus=(u,),
        label=FAMILY_UNITARY,
        family=FAMILY_UNITARY,
        params={"nx": n[0], "ny": n[1], "nz": n[2], "theta": float(theta)},
    )


def hadamard() -> Channel:
    """Return the Hadamard gate (I + i sigma_y)/sqrt 2, a pi/2 rotation about y."""
    return dataclasses.replace(
        unitary_rotation((0.0, 1.0, 0.0), math.pi / 2), label="hadamard"
    )


def depolarizing(p: float) -> Channel:
    """Return rho -> (1 - p) rho + p I/2 with the four-Pauli Kraus set."""
    p = _check_probability(p)
    return Channel(
        kraus=(
            math.sqrt(1.0 - 3.0 * p / 4.0) * IDENTITY2,
            math.sqrt(p) / 2.0 * SIGMA_X,
            math.sqrt(p) / 2.0 * SIGMA_Y,
            math.sqrt(p) / 2.0 * SIGMA_Z,
        ),
        label=FAMILY_DEPOLARIZING,
        family=FAMILY_DEPOLARIZING,
        params={"p": p},
    )


def bit_flip(p: float) -> Channel:
    """Return rho -> (1 - p) rho + p sigma_x rho sigma_x."""
    p = _check_probability(p)
    return Channel(
        kraus=(math.sqrt(1.0 - p) * IDENTITY2, math.sqrt(p) * SIGMA_X),
        label=FAMILY_BITFLIP,
        family=FAMILY_BITFLIP,
        params={"p": p},
    )


def phase_flip(p: float) -> Channel:
    """Return rho -> (1 - p) rho + p sigma_z rho sigma_z."""
    p = _check_probability(p)
    return Channel(
        kraus=(math.sqrt(1.0 - p) * IDENTITY2, math.sqrt(p) * SIGMA_Z),
        label=FAMILY_PHASEFLIP,
        family=FAMILY_PHASEFLIP,
        params={"p": p},
    )


def cnot() -> Channel:
    """Return CNOT|i, j> = |i, i + j>, control on the first qubit."""
    u = np.zeros((4, 4), dtype=np.complex128)
    for i, j in itertools.product(range(2), repeat=2):
        u[2 * i + (i ^ j), 2 * i + j] = 1.0
    return Channel(kraus=(u,), label=FAMILY_CNOT, family=FAMILY_CNOT)


def tensor(channels: Sequence[Channel]) -> Channel:
    """Return the product channel; Kraus operators are all Kronecker products."""
    if not channels:
        msg = "Tensor product needs at least one channel"
        raise InvalidChannelError(msg)
    ops = tuple(
        functools.reduce(kron, combo)
        for combo in itertools.product(*(ch.kraus for ch in channels))
    )
    label = " x ".join(ch.label for ch in channels)
    return Channel(kraus=ops, label=label, family=FAMILY_TENSOR)


def compose(channels: Sequence[Channel]) -> Channel:
    """Return the sequential composition; ``channels[0]`` acts first."""
    if not channels:
        msg = "Composition needs at least one channel"
        raise InvalidChannelError(msg)
    dims = {ch.dim for ch in channels}
    if len(dims) != 1:
        msg = f"Cannot compose channels of dimensions {sorted(dims)}"
        raise DimensionMismatchError(msg)
    ops: tuple[ComplexMatrix, ...] = channels[0].kraus
    for ch in channels[1:]:
        ops = tuple(later @ earlier for later in ch.kraus for earlier in ops)
    label = " then ".join(ch.label for ch in channels)
    return Channel(kraus=ops, label=label, family=FAMILY_COMPOSE)


def bloch_map(ch: Channel) -> BlochAffineMap:
    """
    Extract the affine Bloch map of a qubit channel.

    The shift is the image of I/2; column i of the linear part is the image of
    the pure state along axis i minus the shift.

    Raises:
        DimensionMismatchError: If the channel is not a qubit channel.

    """
    if ch.dim != 2:  # noqa: PLR2004
        msg = f"Bloch maps exist for qubit channels only, got dimension {ch.dim}"
        raise DimensionMismatchError(msg)
    shift = bloch_from_density(apply(ch, DensityMatrix.maximally_mixed(2))).r
    linear = np.empty((3, 3))
    for i, axis in enumerate(np.eye(3)):
        image = bloch_from_density(apply(ch, density_from_bloch(axis))).r
        linear[:, i] = image - shift
    return BlochAffineMap(linear=linear, shift=shift)

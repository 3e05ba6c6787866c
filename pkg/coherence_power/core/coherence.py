"""
Coherence of states: l1-norm of off-diagonals and skew information.

The l1 measure depends only on the eigenbasis of the observable, the skew
information also on its eigenvalues. Qubit closed forms are given in terms of
the Bloch vector r and the unit axis k of K = alpha I + beta k.sigma.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from coherence_power.const import ROUNDOFF_CLAMP, Measure
from coherence_power.exceptions import DimensionMismatchError, UnsupportedError

from .linalg import (
    IDENTITY2,
    ComplexMatrix,
    EigenDecomposition,
    RealVector,
    commutator,
    herm_eig,
    kron,
    pauli_dot,
    sqrt_psd,
)
from .states import (
    BlochVector,
    DensityMatrix,
    PureState,
    as_unit_vector,
    bloch_from_density,
    max_coherent_state,
    radial_deficit,
)

_LOGGER = logging.getLogger(__name__)

NAMED_AXES: dict[str, tuple[float, float, float]] = {
    "x": (1.0, 0.0, 0.0),
    "y": (0.0, 1.0, 0.0),
    "z": (0.0, 0.0, 1.0),
}

DEGENERACY_TOL = 1e-10


def _format_axis(vector: RealVector) -> str:
    return "(" + ",".join(f"{c:.6g}" for c in vector) + ")"


@dataclass(frozen=True, eq=False)
class Observable:
    """Hermitian observable K with its cached eigendecomposition."""

    k_mat: ComplexMatrix
    eig: EigenDecomposition
    label: str

    @classmethod
    def from_matrix(cls, mat: npt.ArrayLike, label: str = "K") -> Observable:
        """Diagonalize a Hermitian matrix and wrap it."""
        k_mat = np.asarray(mat, dtype=np.complex128)
        return cls(k_mat=k_mat, eig=herm_eig(k_mat), label=label)

    @classmethod
    def pauli_axis(
        cls,
        k_hat: npt.ArrayLike,
        *,
        alpha: float = 0.0,
        beta: float = 1.0,
        label: str | None = None,
    ) -> Observable:
        """Return the qubit observable alpha I + beta k.sigma."""
        k = as_unit_vector(k_hat, "k_hat")
        mat = alpha * IDENTITY2 + beta * pauli_dot(k)
        return cls.from_matrix(mat, label or f"k={_format_axis(k)}")

    @classmethod
    def named(cls, name: str) -> Observable:
        """
        Return a Pauli observable by name: ``x``, ``y``, ``z`` or products like ``xz``.

        Multi-letter names build a tensor product whose eigenbasis is the
        product of the single-qubit eigenbases.
        """
        key = name.strip().lower()
        if not key or any(c not in NAMED_AXES for c in key):
            msg = f"Unknown observable name '{name}'"
            raise ValueError(msg)
        factors = [cls.pauli_axis(NAMED_AXES[c], label=c) for c in key]
        if len(factors) == 1:
            return factors[0]
        return cls.tensor(*factors)

    @classmethod
    def tensor(cls, *factors: Observable) -> Observable:
        """
        Return the tensor product observable with a product eigenbasis.

        Eigenvalues are the products of factor eigenvalues, sorted ascending
        (stable), with the matching product eigenvectors as columns.
        """
        if not factors:
            msg = "Tensor product needs at least one factor"
            raise ValueError(msg)
        k_mat = factors[0].k_mat
        values = factors[0].eigenvalues
        vecs = factors[0].basis
        for factor in factors[1:]:
            k_mat = kron(k_mat, factor.k_mat)
            values = np.kron(values, factor.eigenvalues)
            vecs = np.kron(vecs, factor.basis)
        order = np.argsort(values, kind="stable")
        eig = EigenDecomposition(eigenvalues=values[order], eigenvectors=vecs[:, order])
        label = "*".join(f.label for f in factors)
        return cls(k_mat=k_mat, eig=eig, label=label)

    @property
    def dim(self) -> int:
        """Return the dimension."""
        return self.k_mat.shape[0]

    @property
    def basis(self) -> ComplexMatrix:
        """Return the eigenbasis {|k_i>} as matrix columns."""
        return self.eig.eigenvectors

    @property
    def eigenvalues(self) -> RealVector:
        """Return the eigenvalues in ascending order."""
        return self.eig.eigenvalues

    @property
    def is_degenerate(self) -> bool:
        """Return True when two eigenvalues coincide."""
        return bool(np.any(np.diff(self.eigenvalues) < DEGENERACY_TOL))

    def qubit_axis(self) -> tuple[float, RealVector]:
        """
        Return (beta, k_hat) such that K = alpha I + beta k_hat.sigma.

        Raises:
            DimensionMismatchError: If K is not a qubit observable.

        """
        if self.dim != 2:  # noqa: PLR2004
            msg = f"Qubit axis needs a 2-dim observable, got {self.dim}"
            raise DimensionMismatchError(msg)
        beta = float(self.eigenvalues[1] - self.eigenvalues[0]) / 2.0
        plus = self.basis[:, 1]
        state = DensityMatrix(np.outer(plus, plus.conj()))
        return beta, bloch_from_density(state).r


@dataclass(frozen=True)
class CoherenceValue:
    """A coherence value tagged with its measure and basis."""

    value: float
    measure: Measure
    basis_label: str

    def __float__(self) -> float:
        """Return the raw value."""
        return self.value


def _clamp(value: float) -> float:
    if value < 0.0:
        if value < -ROUNDOFF_CLAMP:
            _LOGGER.warning("Coherence value %.3e below round-off band", value)
        return 0.0
    return value


def _check_dims(rho: DensityMatrix, k: Observable) -> None:
    if rho.dim != k.dim:
        msg = f"State dimension {rho.dim} does not match observable {k.dim}"
        raise DimensionMismatchError(msg)


def c_l1(rho: DensityMatrix, k: Observable) -> CoherenceValue:
    """Return sum_{i != j} |<k_i|rho|k_j>|, the l1 coherence in K's eigenbasis."""
    _check_dims(rho, k)
    vecs = k.basis
    in_basis = vecs.conj().T @ rho.mat @ vecs
    magnitudes = np.abs(in_basis)
    value = float(magnitudes.sum() - np.trace(magnitudes))
    return CoherenceValue(_clamp(value), Measure.L1, k.label)


def c_l1_qubit(r: BlochVector | npt.ArrayLike, k_hat: npt.ArrayLike) -> CoherenceValue:
    """Return r sqrt(1 - (r_hat.k)^2) = |r x k|, the l1 coherence of a qubit."""
    bloch = r if isinstance(r, BlochVector) else BlochVector(np.asarray(r))
    k = as_unit_vector(k_hat, "k_hat")
    value = float(np.linalg.norm(np.cross(bloch.r, k)))
    return CoherenceValue(value, Measure.L1, f"k={_format_axis(k)}")


def c_skew(rho: DensityMatrix, k: Observable) -> CoherenceValue:
    """Return the skew information -1/2 tr([sqrt(rho), K]^2)."""
    _check_dims(rho, k)
    comm = commutator(sqrt_psd(rho.mat), k.k_mat)
    value = -0.5 * float(np.real(np.trace(comm @ comm)))
    return CoherenceValue(_clamp(value), Measure.SKEW, k.label)


def c_skew_pure(psi: PureState, k: Observable) -> CoherenceValue:
    """Return the variance <K^2> - <K>^2, the skew information of a pure state."""
    if psi.dim != k.dim:
        msg = f"State dimension {psi.dim} does not match observable {k.dim}"
        raise DimensionMismatchError(msg)
    amps = psi.amplitudes
    k_psi = k.k_mat @ amps
    mean = float(np.real(np.vdot(amps, k_psi)))
    second = float(np.real(np.vdot(k_psi, k_psi)))
    return CoherenceValue(_clamp(second - mean * mean), Measure.SKEW, k.label)


def c_skew_qubit(
    r: BlochVector | npt.ArrayLike, k_hat: npt.ArrayLike
) -> CoherenceValue:
    """Return (1 - sqrt(1 - r^2))(1 - (r_hat.k)^2), the skew coherence of a qubit."""
    bloch = r if isinstance(r, BlochVector) else BlochVector(np.asarray(r))
    k = as_unit_vector(k_hat, "k_hat")
    label = f"k={_format_axis(k)}"
    direction = bloch.unit_direction()
    if direction is None:
        return CoherenceValue(0.0, Measure.SKEW, label)
    radial = 1.0 - math.sqrt(radial_deficit(bloch.norm))
    value = radial * (1.0 - float(direction @ k) ** 2)
    return CoherenceValue(_clamp(value), Measure.SKEW, label)


def coherence(rho: DensityMatrix, k: Observable, measure: Measure) -> CoherenceValue:
    """Dispatch to the requested coherence measure."""
    if measure is Measure.L1:
        return c_l1(rho, k)
    return c_skew(rho, k)


def max_coherence(k: Observable, measure: Measure) -> float:
    """
    Return the coherence of the maximally coherent states of K.

    Raises:
        UnsupportedError: For skew information in dimension > 2, where the
            maximally coherent set is not characterized.

    """
    if measure is Measure.L1:
        return float(k.dim - 1)
    if k.dim != 2:  # noqa: PLR2004
        msg = "Maximal skew coherence is only characterized for qubits"
        raise UnsupportedError(msg)
    psi = max_coherent_state(k, np.zeros(k.dim - 1))
    return c_skew_pure(psi, k).value

"""Density matrices, pure states and qubit Bloch vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
import numpy.typing as npt

from coherence_power.const import (
    BLOCH_NORM_TOL,
    EPS_DIR,
    HERMITIAN_TOL,
    NORM_TOL,
    PSD_TOL,
    TRACE_TOL,
    UNIT_TOL,
)
from coherence_power.exceptions import DimensionMismatchError, InvalidStateError

from .linalg import (
    IDENTITY2,
    PAULIS,
    ComplexMatrix,
    RealVector,
    clear_roundoff,
    herm_eig,
    hermitian_asymmetry,
    pauli_dot,
)

if TYPE_CHECKING:
    from .coherence import Observable


def as_unit_vector(vector: npt.ArrayLike, name: str = "vector") -> RealVector:
    """
    Return a real 3-vector after checking it has unit norm.

    Raises:
        InvalidStateError: If the vector is not 3-dimensional or not unit.

    """
    vec = np.asarray(vector, dtype=np.float64)
    if vec.shape != (3,):
        msg = f"{name} must be a real 3-vector, got shape {vec.shape}"
        raise InvalidStateError(msg)
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > UNIT_TOL:
        msg = f"{name} must be a unit vector, got norm {norm:.12g}"
        raise InvalidStateError(msg)
    return vec


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    Trace-one Hermitian state.

    The constructor checks Hermiticity and trace, which is cheap. Use
    ``from_matrix`` for untrusted input: it also checks positivity.
    """

    mat: ComplexMatrix

    def __post_init__(self) -> None:
        """Validate Hermiticity and unit trace."""
        mat = np.asarray(self.mat, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:  # noqa: PLR2004
            msg = f"Density matrix must be square, got shape {mat.shape}"
            raise InvalidStateError(msg)
        asymmetry = hermitian_asymmetry(mat)
        if asymmetry > HERMITIAN_TOL:
            msg = f"Density matrix is not Hermitian (asymmetry {asymmetry:.3e})"
            raise InvalidStateError(msg)
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > TRACE_TOL:
            msg = f"Density matrix trace must be 1, got {tr:.12g}"
            raise InvalidStateError(msg)
        object.__setattr__(self, "mat", mat)

    @classmethod
    def from_matrix(cls, mat: npt.ArrayLike) -> DensityMatrix:
        """Build a density matrix, additionally checking positivity."""
        state = cls(np.asarray(mat, dtype=np.complex128))
        smallest = float(herm_eig(state.mat).eigenvalues[0])
        if smallest < -PSD_TOL:
            msg = f"Density matrix has negative eigenvalue {smallest:.3e}"
            raise InvalidStateError(msg)
        return state

    @classmethod
    def maximally_mixed(cls, dim: int) -> DensityMatrix:
        """Return I/d."""
        return cls(np.eye(dim, dtype=np.complex128) / dim)

    @property
    def dim(self) -> int:
        """Return the Hilbert space dimension."""
        return self.mat.shape[0]

    @property
    def purity(self) -> float:
        """Return tr(rho^2)."""
        return float(np.real(np.trace(self.mat @ self.mat)))

    def mix(self, other: DensityMatrix, weight: float) -> DensityMatrix:
        """Return weight*self + (1 - weight)*other."""
        if other.dim != self.dim:
            msg = f"Cannot mix states of dimension {self.dim} and {other.dim}"
            raise DimensionMismatchError(msg)
        return DensityMatrix(weight * self.mat + (1.0 - weight) * other.mat)


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized state vector."""

    amplitudes: npt.NDArray[np.complex128]

    def __post_init__(self) -> None:
        """Validate shape and unit norm."""
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.size == 0:
            msg = f"Amplitudes must be a non-empty vector, got shape {amps.shape}"
            raise InvalidStateError(msg)
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            msg = f"Pure state must have unit norm, got {norm:.15g}"
            raise InvalidStateError(msg)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, amplitudes: npt.ArrayLike) -> PureState:
        """Build a pure state from unnormalized amplitudes."""
        amps = np.asarray(amplitudes, dtype=np.complex128)
        norm = float(np.linalg.norm(amps))
        if norm == 0.0:
            msg = "Cannot normalize the zero vector"
            raise InvalidStateError(msg)
        return cls(amps / norm)

    @property
    def dim(self) -> int:
        """Return the Hilbert space dimension."""
        return self.amplitudes.size

    def density(self) -> DensityMatrix:
        """Return |psi><psi|."""
        amps = self.amplitudes
        return DensityMatrix(np.outer(amps, amps.conj()))


@dataclass(frozen=True, eq=False)
class BlochVector:
    """Real 3-vector r of a qubit state rho = (I + r.sigma)/2."""

    r: RealVector

    def __post_init__(self) -> None:
        """Validate shape and |r| <= 1."""
        vec = np.asarray(self.r, dtype=np.float64)
        if vec.shape != (3,):
            msg = f"Bloch vector must have 3 components, got shape {vec.shape}"
            raise InvalidStateError(msg)
        norm = float(np.linalg.norm(vec))
        if norm > 1.0 + BLOCH_NORM_TOL:
            msg = f"Bloch vector norm {norm:.12g} exceeds 1"
            raise InvalidStateError(msg)
        object.__setattr__(self, "r", vec)

    @property
    def norm(self) -> float:
        """Return |r|."""
        return float(np.linalg.norm(self.r))

    def unit_direction(self) -> RealVector | None:
        """Return r/|r|, or None when |r| <= EPS_DIR."""
        norm = self.norm
        if norm <= EPS_DIR:
            return None
        return self.r / norm


def density_from_bloch(r: BlochVector | npt.ArrayLike) -> DensityMatrix:
    """Return (I + r.sigma)/2."""
    bloch = r if isinstance(r, BlochVector) else BlochVector(np.asarray(r))
    return DensityMatrix((IDENTITY2 + pauli_dot(bloch.r)) / 2.0)


def radial_deficit(norm: float) -> float:
    """
    Return 1 - norm^2 for a Bloch vector of length ``norm``.

    The smaller eigenvalue (1 - norm)/2 of the state is cleared at the same
    round-off floor ``sqrt_psd`` uses, so unit vectors give exactly 0.
    """
    low = clear_roundoff((1.0 - min(norm, 1.0)) / 2.0)
    return 2.0 * low * (1.0 + min(norm, 1.0))


def bloch_from_density(rho: DensityMatrix) -> BlochVector:
    """
    Return the Bloch vector r_i = tr(rho sigma_i) of a qubit state.

    Raises:
        DimensionMismatchError: If the state is not a qubit.

    """
    if rho.dim != 2:  # noqa: PLR2004
        msg = f"Bloch vectors exist for qubits only, got dimension {rho.dim}"
        raise DimensionMismatchError(msg)
    return BlochVector(
        np.array([np.real(np.trace(rho.mat @ pauli)) for pauli in PAULIS])
    )


def max_coherent_state(basis: Observable, phases: npt.ArrayLike) -> PureState:
    """
    Return the uniform superposition (1/sqrt d) sum_j exp(i phi_j)|k_j>.

    The phase of the first basis vector is pinned to zero, so ``phases`` holds
    the remaining d - 1 relative phases.

    Raises:
        DimensionMismatchError: If ``len(phases) != d - 1``.

    """
    vecs = basis.basis
    dim = vecs.shape[0]
    rel = np.atleast_1d(np.asarray(phases, dtype=np.float64))
    if rel.size != dim - 1:
        msg = f"Expected {dim - 1} phases for dimension {dim}, got {rel.size}"
        raise DimensionMismatchError(msg)
    weights = np.exp(1j * np.concatenate(([0.0], rel))) / math.sqrt(dim)
    return PureState.normalized(vecs @ weights)


def equatorial_state(k_hat: npt.ArrayLike, omega: float) -> PureState:
    """Return (|k+> + exp(i omega)|k->)/sqrt 2, a maximally k-coherent state."""
    k = as_unit_vector(k_hat, "k_hat")
    eig = herm_eig(pauli_dot(k))
    minus, plus = eig.eigenvectors[:, 0], eig.eigenvectors[:, 1]
    return PureState.normalized(plus + np.exp(1j * omega) * minus)


def rotate_bloch(
    n_hat: npt.ArrayLike, theta: float, vector: npt.ArrayLike
) -> RealVector:
    """
    Rotate a Bloch vector as the unitary exp(i theta/2 n.sigma) does.

    m' = cos(theta) m + sin(theta) (m x n) + (1 - cos(theta)) (m.n) n
    """
    n = as_unit_vector(n_hat, "n_hat")
    m = np.asarray(vector, dtype=np.float64)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    return cos_t * m + sin_t * np.cross(m, n) + (1.0 - cos_t) * float(m @ n) * n

"""
Dense complex matrix primitives for small dimensions.

Matrices are plain ``numpy`` arrays of shape ``(d, d)`` and dtype complex128.
The Hermitian eigensolver is a cyclic complex Jacobi method, which is exact
enough and deterministic for the d <= 16 problems this package deals with.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from coherence_power.const import (
    HERMITIAN_TOL,
    JACOBI_MAX_SWEEPS,
    JACOBI_THRESHOLD,
    NORM_TOL,
    PSD_TOL,
    ROUNDOFF_ULPS,
)
from coherence_power.exceptions import (
    ConvergenceError,
    DimensionMismatchError,
    NotHermitianError,
    NotPSDError,
)

_LOGGER = logging.getLogger(__name__)

type ComplexMatrix = npt.NDArray[np.complex128]
type RealVector = npt.NDArray[np.float64]

IDENTITY2: ComplexMatrix = np.eye(2, dtype=np.complex128)
SIGMA_X: ComplexMatrix = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y: ComplexMatrix = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z: ComplexMatrix = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS: tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix] = (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
)


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in ascending order and orthonormal eigenvectors as columns."""

    eigenvalues: RealVector
    eigenvectors: ComplexMatrix

    @property
    def dim(self) -> int:
        """Return the dimension of the decomposed matrix."""
        return len(self.eigenvalues)

    def reconstruct(self) -> ComplexMatrix:
        """Return V diag(lambda) V^dagger."""
        vecs = self.eigenvectors
        return (vecs * self.eigenvalues) @ vecs.conj().T


def complex_matrix(entries: Iterable[complex], dim: int | None = None) -> ComplexMatrix:
    """
    Build a square matrix from row-major entries.

    Args:
        entries: Row-major matrix entries.
        dim: Expected dimension; inferred from the entry count when omitted.

    Returns:
        The ``(dim, dim)`` complex matrix.

    Raises:
        DimensionMismatchError: If the entry count is not ``dim**2``.

    """
    flat = np.asarray(list(entries), dtype=np.complex128)
    if dim is None:
        dim = math.isqrt(flat.size)
    if dim <= 0 or flat.size != dim * dim:
        msg = f"Expected {dim}x{dim} = {dim * dim} entries, got {flat.size}"
        raise DimensionMismatchError(msg)
    return flat.reshape(dim, dim)


def _as_square(a: npt.ArrayLike) -> ComplexMatrix:
    mat = np.asarray(a, dtype=np.complex128)
    square = mat.ndim == 2 and mat.shape[0] == mat.shape[1]  # noqa: PLR2004
    if not square or mat.shape[0] == 0:
        msg = f"Expected a non-empty square matrix, got shape {mat.shape}"
        raise DimensionMismatchError(msg)
    return mat


def _check_same_dim(a: ComplexMatrix, b: ComplexMatrix) -> None:
    if a.shape != b.shape:
        msg = f"Dimension mismatch: {a.shape[0]} vs {b.shape[0]}"
        raise DimensionMismatchError(msg)


def mul(a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexMatrix:
    """Return the matrix product ``a @ b`` of two equally sized matrices."""
    left, right = _as_square(a), _as_square(b)
    _check_same_dim(left, right)
    return left @ right


def kron(a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexMatrix:
    """Return the Kronecker product; entry (i*db+k, j*db+l) is a[i,j]*b[k,l]."""
    return np.kron(_as_square(a), _as_square(b))


def dagger(a: npt.ArrayLike) -> ComplexMatrix:
    """Return the conjugate transpose."""
    return _as_square(a).conj().T


def trace(a: npt.ArrayLike) -> complex:
    """Return the sum of the diagonal."""
    return complex(np.trace(_as_square(a)))


def commutator(a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexMatrix:
    """Return ``ab - ba``."""
    left, right = _as_square(a), _as_square(b)
    _check_same_dim(left, right)
    return left @ right - right @ left


def hermitian_asymmetry(a: npt.ArrayLike) -> float:
    """Return max |a - a^dagger| over all entries."""
    mat = _as_square(a)
    return float(np.max(np.abs(mat - mat.conj().T)))


def pauli_dot(vector: npt.ArrayLike) -> ComplexMatrix:
    """Return ``v . sigma`` for a real 3-vector ``v``."""
    vx, vy, vz = np.asarray(vector, dtype=np.float64)
    return vx * SIGMA_X + vy * SIGMA_Y + vz * SIGMA_Z


def _off_norm(a: ComplexMatrix) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _rotate(work: ComplexMatrix, vecs: ComplexMatrix, p: int, q: int) -> None:
    """Zero work[p, q] with a complex Jacobi rotation, in place."""
    apq = work[p, q]
    mag = abs(apq)
    if mag == 0.0:
        return

    # Remove the phase of a_pq, then apply the real symmetric rotation
    phase = np.conj(apq / mag)
    tau = (work[q, q].real - work[p, p].real) / (2.0 * mag)
    t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
    c = 1.0 / math.hypot(1.0, t)
    s = t * c
    rot = np.array([[c, s], [-s * phase, c * phase]], dtype=np.complex128)

    idx = [p, q]
    work[:, idx] = work[:, idx] @ rot
    work[idx, :] = rot.conj().T @ work[idx, :]
    work[p, q] = 0.0
    work[q, p] = 0.0
    vecs[:, idx] = vecs[:, idx] @ rot


def _fix_phases(vecs: ComplexMatrix) -> None:
    """Make the first nonzero component of every column real positive."""
    for j in range(vecs.shape[1]):
        col = vecs[:, j]
        nonzero = np.flatnonzero(np.abs(col) > NORM_TOL)
        if nonzero.size:
            lead = col[nonzero[0]]
            vecs[:, j] = col * (abs(lead) / lead)


def herm_eig(a: npt.ArrayLike) -> EigenDecomposition:
    """
    Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.

    Sweeps over all (p, q) pairs until the off-diagonal Frobenius norm drops
    below ``JACOBI_THRESHOLD`` (relative to max(1, ||A||)). Eigenvalues are
    returned ascending (stable for ties) and each eigenvector has its first
    nonzero component real positive, so identical input gives identical output.

    Args:
        a: Hermitian matrix, within ``HERMITIAN_TOL`` per entry.

    Returns:
        The eigendecomposition.

    Raises:
        NotHermitianError: If the input is not Hermitian.
        ConvergenceError: If the threshold is not met within the sweep limit.

    """
    mat = _as_square(a)
    asymmetry = hermitian_asymmetry(mat)
    if asymmetry > HERMITIAN_TOL:
        raise NotHermitianError(asymmetry)

    work = (mat + mat.conj().T) / 2.0
    dim = work.shape[0]
    vecs = np.eye(dim, dtype=np.complex128)
    threshold = JACOBI_THRESHOLD * max(1.0, float(np.linalg.norm(work)))

    sweeps = 0
    while _off_norm(work) >= threshold:
        if sweeps == JACOBI_MAX_SWEEPS:
            msg = f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps"
            raise ConvergenceError(msg)
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                _rotate(work, vecs, p, q)
        sweeps += 1

    _LOGGER.debug("Jacobi converged after %d sweeps (dim %d)", sweeps, dim)

    eigenvalues = np.real(np.diag(work)).copy()
    order = np.argsort(eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    vecs = vecs[:, order]
    _fix_phases(vecs)

    return EigenDecomposition(eigenvalues=eigenvalues, eigenvectors=vecs)


def roundoff_floor(scale: float = 1.0) -> float:
    """Return the level below which a value of magnitude ``scale`` is round-off."""
    return ROUNDOFF_ULPS * float(np.finfo(np.float64).eps) * max(1.0, abs(scale))


def clear_roundoff(x: float, scale: float = 1.0) -> float:
    """Return ``x``, or 0 when it is at or below the round-off floor."""
    return 0.0 if x <= roundoff_floor(scale) else x


def sqrt_psd(a: npt.ArrayLike) -> ComplexMatrix:
    """
    Return the positive semidefinite square root of a PSD matrix.

    Eigenvalues in [-PSD_TOL, 0) and those at or below the round-off floor
    of the spectrum are set to zero before rooting, so a rank-deficient
    matrix keeps an exact kernel.

    Raises:
        NotPSDError: If an eigenvalue is below ``-PSD_TOL``.

    """
    eig = herm_eig(a)
    smallest = float(eig.eigenvalues[0])
    if smallest < -PSD_TOL:
        raise NotPSDError(smallest)

    floor = roundoff_floor(float(np.max(np.abs(eig.eigenvalues))))
    values = np.where(eig.eigenvalues <= floor, 0.0, eig.eigenvalues)
    roots = np.sqrt(values)
    vecs = eig.eigenvectors
    root = (vecs * roots) @ vecs.conj().T
    return (root + root.conj().T) / 2.0

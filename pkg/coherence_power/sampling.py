"""Random and structured samples used by the verification suites and tests."""

from __future__ import annotations

import itertools

import numpy as np

from .core.channels import Channel, unitary
from .core.coherence import Observable
from .core.linalg import ComplexMatrix, RealVector
from .core.states import DensityMatrix


def haar_unitary(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    """
    Return a Haar-random unitary.

    QR of a complex Ginibre matrix, with the phases of R's diagonal moved into
    Q so the distribution is exactly Haar.
    """
    ginibre = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(ginibre)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_unitary_channel(dim: int, rng: np.random.Generator) -> Channel:
    """Return the channel of a Haar-random unitary."""
    return unitary(haar_unitary(dim, rng), label="haar")


def random_density_matrix(
    dim: int, rng: np.random.Generator, rank: int | None = None
) -> DensityMatrix:
    """Return G G^dagger / tr(G G^dagger) for a dim x rank Ginibre matrix G."""
    cols = rank or dim
    g = rng.normal(size=(dim, cols)) + 1j * rng.normal(size=(dim, cols))
    mat = g @ g.conj().T
    mat = (mat + mat.conj().T) / 2.0
    return DensityMatrix(mat / np.trace(mat).real)


def random_incoherent_state(k: Observable, rng: np.random.Generator) -> DensityMatrix:
    """Return a random mixture of K's eigenstates."""
    weights = rng.dirichlet(np.ones(k.dim))
    vecs = k.basis
    return DensityMatrix((vecs * weights) @ vecs.conj().T)


def random_unit_vector(rng: np.random.Generator) -> RealVector:
    """Return a uniformly distributed point on the unit sphere."""
    while True:
        vec = rng.normal(size=3)
        norm = float(np.linalg.norm(vec))
        if norm > 1e-6:  # noqa: PLR2004
            return vec / norm


def random_bloch_vector(rng: np.random.Generator) -> RealVector:
    """Return a uniformly distributed point in the unit ball."""
    return random_unit_vector(rng) * float(rng.random()) ** (1.0 / 3.0)


def sphere_net() -> list[RealVector]:
    """Return the 26 normalized nonzero vectors with components in {-1, 0, 1}."""
    return [
        np.asarray(v, dtype=np.float64) / np.linalg.norm(v)
        for v in itertools.product((-1, 0, 1), repeat=3)
        if any(v)
    ]

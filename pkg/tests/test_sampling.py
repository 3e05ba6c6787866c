"""Tests for random and structured samples."""

import numpy as np
import pytest

from coherence_power.core.coherence import Observable
from coherence_power.core.linalg import hermitian_asymmetry
from coherence_power.sampling import (
    haar_unitary,
    random_bloch_vector,
    random_density_matrix,
    random_incoherent_state,
    random_unit_vector,
    random_unitary_channel,
    sphere_net,
)
from tests.conftest import assert_allclose


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_haar_unitary_is_unitary(rng, dim):
    u = haar_unitary(dim, rng)
    assert_allclose(u.conj().T @ u, np.eye(dim))


def test_random_unitary_channel(rng):
    ch = random_unitary_channel(2, rng)
    assert ch.is_unitary
    assert ch.label == "haar"


@pytest.mark.parametrize(("dim", "rank"), [(2, None), (4, None), (3, 1)])
def test_random_density_matrix(rng, dim, rank):
    """Ginibre states are Hermitian, unit trace and positive."""
    rho = random_density_matrix(dim, rng, rank)
    assert hermitian_asymmetry(rho.mat) < 1e-12
    assert np.trace(rho.mat).real == pytest.approx(1.0)
    assert np.linalg.eigvalsh(rho.mat).min() >= -1e-12
    if rank == 1:
        assert rho.purity == pytest.approx(1.0)


def test_random_incoherent_state_is_diagonal(rng):
    """Mixtures of eigenstates have no off-diagonal part in the K basis."""
    k = Observable.pauli_axis((0.6, 0.0, 0.8))
    rho = random_incoherent_state(k, rng)
    in_basis = k.basis.conj().T @ rho.mat @ k.basis
    assert_allclose(in_basis - np.diag(np.diag(in_basis)), np.zeros((2, 2)))


def test_random_vectors(rng):
    for _ in range(50):
        assert np.linalg.norm(random_unit_vector(rng)) == pytest.approx(1.0)
        assert np.linalg.norm(random_bloch_vector(rng)) <= 1.0


def test_sphere_net():
    """26 distinct unit vectors including the coordinate axes."""
    net = sphere_net()
    assert len(net) == 26
    assert len({tuple(np.round(v, 12)) for v in net}) == 26
    for v in net:
        assert np.linalg.norm(v) == pytest.approx(1.0)
    assert any(np.allclose(v, [1.0, 0.0, 0.0]) for v in net)

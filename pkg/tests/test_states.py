"""Tests for density matrices, pure states and Bloch vectors."""

import math

import numpy as np
import pytest

from coherence_power.core.coherence import Observable
from coherence_power.core.linalg import SIGMA_X, SIGMA_Z
from coherence_power.core.states import (
    BlochVector,
    DensityMatrix,
    PureState,
    as_unit_vector,
    bloch_from_density,
    density_from_bloch,
    equatorial_state,
    max_coherent_state,
    radial_deficit,
    rotate_bloch,
)
from coherence_power.exceptions import DimensionMismatchError, InvalidStateError
from tests.conftest import assert_allclose, bloch_state

# ==================== Data Tables ====================

# Bloch vectors that round-trip through the density matrix
BLOCH_VECTORS = [
    (0.0, 0.0, 0.0),
    (1.0, 0.0, 0.0),
    (0.0, -1.0, 0.0),
    (0.0, 0.0, 1.0),
    (0.6, 0.0, 0.8),
    (0.1, -0.2, 0.3),
]

EQUATOR_AXES = [(0.0, 0.0, 1.0), (1.0, 0.0, 0.0), (0.6, 0.0, 0.8)]

# (k_hat, omega, expected Bloch vector)
EQUATORIAL_CASES = [
    ((0.0, 0.0, 1.0), 0.0, (1.0, 0.0, 0.0)),
    ((0.0, 0.0, 1.0), math.pi / 2, (0.0, 1.0, 0.0)),
    ((1.0, 0.0, 0.0), 0.0, (0.0, 0.0, 1.0)),
]

INVALID_DENSITY = [
    np.array([[1.0, 1.0], [0.0, 0.0]]),  # not Hermitian
    np.array([[1.0, 0.0], [0.0, 1.0]]),  # trace 2
    np.zeros((2, 3)),  # not square
]

# (n_hat, theta, m, expected m')
ROTATIONS = [
    ((0.0, 0.0, 1.0), 0.0, (1.0, 0.0, 0.0), (1.0, 0.0, 0.0)),
    ((0.0, 0.0, 1.0), math.pi / 2, (1.0, 0.0, 0.0), (0.0, -1.0, 0.0)),
    ((0.0, 1.0, 0.0), math.pi / 2, (0.0, 0.0, 1.0), (-1.0, 0.0, 0.0)),
    ((1.0, 0.0, 0.0), math.pi, (0.0, 0.0, 1.0), (0.0, 0.0, -1.0)),
    ((1.0, 0.0, 0.0), 1.3, (1.0, 0.0, 0.0), (1.0, 0.0, 0.0)),
]


# ==================== Unit Vectors ====================


def test_as_unit_vector_accepts_unit():
    assert_allclose(as_unit_vector([0.6, 0.0, 0.8]), [0.6, 0.0, 0.8])


@pytest.mark.parametrize("vector", [[1.0, 1.0, 0.0], [1.0, 0.0], [0.0, 0.0, 0.0]])
def test_as_unit_vector_rejects(vector):
    with pytest.raises(InvalidStateError, match="k_hat"):
        as_unit_vector(vector, "k_hat")


# ==================== Density Matrices ====================


class TestDensityMatrix:
    """Tests for DensityMatrix validation and helpers."""

    @pytest.mark.parametrize("mat", INVALID_DENSITY)
    def test_rejects_invalid(self, mat):
        """Constructor checks shape, Hermiticity and trace."""
        with pytest.raises(InvalidStateError):
            DensityMatrix(mat)

    def test_from_matrix_rejects_negative_eigenvalue(self):
        """Positivity is checked by from_matrix only."""
        mat = np.array([[1.5, 0.0], [0.0, -0.5]])
        DensityMatrix(mat)
        with pytest.raises(InvalidStateError, match="negative eigenvalue"):
            DensityMatrix.from_matrix(mat)

    def test_maximally_mixed(self):
        """I/d has purity 1/d."""
        state = DensityMatrix.maximally_mixed(4)
        assert state.dim == 4
        assert state.purity == pytest.approx(0.25)

    def test_mix(self):
        """Convex combination of |0><0| and |1><1|."""
        zero = bloch_state(0.0, 0.0, 1.0)
        one = bloch_state(0.0, 0.0, -1.0)
        assert_allclose(zero.mix(one, 0.25).mat, np.diag([0.25, 0.75]))

    def test_mix_rejects_dimension_mismatch(self):
        """States of different dimension cannot be mixed."""
        with pytest.raises(DimensionMismatchError):
            DensityMatrix.maximally_mixed(2).mix(DensityMatrix.maximally_mixed(3), 0.5)


# ==================== Pure States ====================


class TestPureState:
    """Tests for PureState."""

    def test_normalized(self):
        """Unnormalized amplitudes are scaled to unit norm."""
        state = PureState.normalized([1.0, 1.0j])
        assert_allclose(state.amplitudes, np.array([1.0, 1.0j]) / math.sqrt(2.0))
        assert state.dim == 2

    def test_density_is_pure(self):
        """|psi><psi| has purity one."""
        state = PureState.normalized([3.0, 4.0, 0.0])
        assert state.density().purity == pytest.approx(1.0)

    def test_rejects_unnormalized(self):
        """The constructor requires unit norm."""
        with pytest.raises(InvalidStateError, match="unit norm"):
            PureState(np.array([1.0, 1.0]))

    def test_rejects_zero_vector(self):
        """The zero vector cannot be normalized."""
        with pytest.raises(InvalidStateError):
            PureState.normalized([0.0, 0.0])

    def test_rejects_empty(self):
        """Amplitudes must be a non-empty vector."""
        with pytest.raises(InvalidStateError):
            PureState(np.array([]))


# ==================== Bloch Vectors ====================


class TestBloch:
    """Tests for the qubit Bloch representation."""

    @pytest.mark.parametrize("r", BLOCH_VECTORS)
    def test_round_trip(self, r):
        """bloch_from_density inverts density_from_bloch."""
        assert_allclose(bloch_from_density(density_from_bloch(r)).r, r)

    def test_plus_state(self):
        """r = x gives |+><+|."""
        plus = density_from_bloch((1.0, 0.0, 0.0))
        assert_allclose(plus.mat, (np.eye(2) + SIGMA_X) / 2)

    def test_rejects_long_vector(self):
        """|r| > 1 is not a state."""
        with pytest.raises(InvalidStateError, match="exceeds 1"):
            BlochVector(np.array([0.8, 0.8, 0.0]))

    def test_rejects_wrong_shape(self):
        """Bloch vectors have three components."""
        with pytest.raises(InvalidStateError):
            BlochVector(np.array([0.5, 0.5]))

    def test_unit_direction(self):
        """Direction is r/|r|, or None at the origin."""
        up = BlochVector(np.array([0.0, 0.0, 0.5]))
        assert_allclose(up.unit_direction(), [0.0, 0.0, 1.0])
        assert BlochVector(np.zeros(3)).unit_direction() is None
        assert BlochVector(np.array([0.3, 0.0, 0.4])).norm == pytest.approx(0.5)

    def test_non_qubit_has_no_bloch_vector(self):
        """Only qubits have Bloch vectors."""
        with pytest.raises(DimensionMismatchError):
            bloch_from_density(DensityMatrix.maximally_mixed(3))

    @pytest.mark.parametrize(
        ("norm", "expected"),
        [(0.0, 1.0), (0.6, 0.64), (1.0, 0.0), (1.0 - 1e-16, 0.0), (1.0 + 1e-12, 0.0)],
    )
    def test_radial_deficit(self, norm, expected):
        """1 - |r|^2, exactly 0 for unit vectors up to round-off."""
        assert radial_deficit(norm) == pytest.approx(expected, abs=1e-15)
        if expected == 0.0:
            assert radial_deficit(norm) == 0.0

    @pytest.mark.parametrize(("n_hat", "theta", "m", "expected"), ROTATIONS)
    def test_rotate_bloch(self, n_hat, theta, m, expected):
        """Rotation follows exp(i theta/2 n.sigma)."""
        assert_allclose(rotate_bloch(n_hat, theta, m), expected, atol=1e-12)

    def test_rotate_bloch_matches_unitary(self, rng):
        """The Bloch rotation agrees with conjugating by the unitary."""
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        m = np.array([0.3, -0.4, 0.5])
        theta = 0.7
        n_sigma = n[0] * SIGMA_X + n[1] * np.array([[0, -1j], [1j, 0]]) + n[2] * SIGMA_Z
        u = math.cos(theta / 2) * np.eye(2) + 1j * math.sin(theta / 2) * n_sigma
        rho = density_from_bloch(m)
        out = bloch_from_density(DensityMatrix(u @ rho.mat @ u.conj().T))
        assert_allclose(out.r, rotate_bloch(n, theta, m), atol=1e-12)


# ==================== Maximally Coherent States ====================


class TestMaxCoherent:
    """Tests for uniform superpositions over an eigenbasis."""

    def test_qubit_plus_state(self, obs_z):
        """Zero relative phase in the z basis is |+>, up to a global phase."""
        state = max_coherent_state(obs_z, [0.0])
        overlap = abs(np.vdot(np.array([1.0, 1.0]) / math.sqrt(2.0), state.amplitudes))
        assert overlap == pytest.approx(1.0)

    def test_uniform_weights(self, obs_zz):
        """Every basis vector carries weight 1/d."""
        state = max_coherent_state(obs_zz, [0.1, 0.2, 0.3])
        coeffs = obs_zz.basis.conj().T @ state.amplitudes
        assert_allclose(np.abs(coeffs) ** 2, np.full(4, 0.25))

    def test_wrong_phase_count(self, obs_z):
        """A qubit takes exactly one relative phase."""
        with pytest.raises(DimensionMismatchError):
            max_coherent_state(obs_z, [0.0, 1.0])

    @pytest.mark.parametrize("k_hat", EQUATOR_AXES)
    @pytest.mark.parametrize("omega", [0.0, 1.0, math.pi])
    def test_equatorial_state_is_unbiased(self, k_hat, omega):
        """The equatorial state has zero mean along k."""
        rho = equatorial_state(k_hat, omega).density()
        r = bloch_from_density(rho).r
        assert float(r @ np.asarray(k_hat)) == pytest.approx(0.0, abs=1e-12)
        assert np.linalg.norm(r) == pytest.approx(1.0)

    def test_equatorial_matches_observable_basis(self):
        """The equatorial state is maximally coherent in the k eigenbasis."""
        k = Observable.pauli_axis((0.6, 0.0, 0.8))
        state = equatorial_state((0.6, 0.0, 0.8), 0.4)
        coeffs = k.basis.conj().T @ state.amplitudes
        assert_allclose(np.abs(coeffs) ** 2, [0.5, 0.5])

    @pytest.mark.parametrize(("k_hat", "omega", "expected"), EQUATORIAL_CASES)
    def test_equatorial_bloch_vectors(self, k_hat, omega, expected):
        """Known equatorial states for the z and x axes."""
        rho = equatorial_state(k_hat, omega).density()
        assert_allclose(bloch_from_density(rho).r, expected, atol=1e-12)

    def test_phase_pi_is_minus(self, obs_z):
        """Relative phase pi in the z basis is |->."""
        rho = max_coherent_state(obs_z, [math.pi]).density()
        assert_allclose(bloch_from_density(rho).r, [-1.0, 0.0, 0.0], atol=1e-12)

"""Tests for the l1 and skew coherence measures and for observables."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coherence_power.const import Measure
from coherence_power.core.coherence import (
    CoherenceValue,
    Observable,
    c_l1,
    c_l1_qubit,
    c_skew,
    c_skew_pure,
    c_skew_qubit,
    coherence,
    max_coherence,
)
from coherence_power.core.states import (
    DensityMatrix,
    PureState,
    density_from_bloch,
    equatorial_state,
)
from coherence_power.exceptions import (
    DimensionMismatchError,
    NotHermitianError,
    UnsupportedError,
)
from tests.conftest import assert_allclose, bloch_state, unit

# ==================== Data Tables ====================

# (bloch vector, k_hat, expected l1, expected skew)
QUBIT_CASES = [
    ((0.0, 0.0, 0.0), (0.0, 0.0, 1.0), 0.0, 0.0),
    ((1.0, 0.0, 0.0), (0.0, 0.0, 1.0), 1.0, 1.0),
    ((0.0, 0.0, 1.0), (0.0, 0.0, 1.0), 0.0, 0.0),
    ((0.0, 0.0, -1.0), (0.0, 0.0, 1.0), 0.0, 0.0),
    ((0.6, 0.0, 0.0), (0.0, 0.0, 1.0), 0.6, 0.2),
    ((0.0, 0.6, 0.0), (0.0, 0.0, 1.0), 0.6, 0.2),
    ((0.6, 0.0, 0.8), (0.6, 0.0, 0.8), 0.0, 0.0),
    ((0.0, 1.0, 0.0), (1.0, 0.0, 0.0), 1.0, 1.0),
    # |r| = 0.5 at 60 degrees from z
    (
        (0.25 * math.sqrt(3.0), 0.0, 0.25),
        (0.0, 0.0, 1.0),
        0.25 * math.sqrt(3.0),
        (1.0 - math.sqrt(0.75)) * 0.75,
    ),
]

NAMED_OBSERVABLES = [
    ("x", 2, [-1.0, 1.0]),
    ("Z", 2, [-1.0, 1.0]),
    ("zz", 4, [-1.0, -1.0, 1.0, 1.0]),
    ("xzy", 8, [-1.0] * 4 + [1.0] * 4),
]

bloch_components = st.floats(min_value=-0.57, max_value=0.57, allow_nan=False)


# ==================== Observables ====================


class TestObservable:
    """Tests for Observable construction."""

    @pytest.mark.parametrize(("name", "dim", "eigenvalues"), NAMED_OBSERVABLES)
    def test_named(self, name, dim, eigenvalues):
        """Names map to Pauli axes and their tensor products."""
        k = Observable.named(name)
        assert k.dim == dim
        assert_allclose(k.eigenvalues, eigenvalues)

    @pytest.mark.parametrize("name", ["", "w", "xq"])
    def test_named_rejects_unknown(self, name):
        """Only x, y and z letters are accepted."""
        with pytest.raises(ValueError, match="Unknown observable"):
            Observable.named(name)

    def test_pauli_axis_with_offset_and_scale(self):
        """alpha shifts and beta scales the spectrum."""
        k = Observable.pauli_axis((0.0, 0.0, 1.0), alpha=1.0, beta=2.0)
        assert_allclose(k.eigenvalues, [-1.0, 3.0])
        assert k.label == "k=(0,0,1)"

    def test_qubit_axis(self):
        """qubit_axis recovers beta and the unit axis."""
        k = Observable.pauli_axis((0.6, 0.0, 0.8), alpha=0.3, beta=1.5)
        beta, k_hat = k.qubit_axis()
        assert beta == pytest.approx(1.5)
        assert_allclose(k_hat, [0.6, 0.0, 0.8])

    def test_qubit_axis_rejects_two_qubits(self, obs_zz):
        """A 4-dim observable has no Bloch axis."""
        with pytest.raises(DimensionMismatchError):
            obs_zz.qubit_axis()

    def test_tensor_product_basis(self, obs_zz):
        """The degenerate zz observable keeps the computational product basis."""
        assert obs_zz.is_degenerate
        assert obs_zz.label == "z*z"
        assert_allclose(np.abs(obs_zz.basis), np.abs(obs_zz.basis) ** 2)
        k_diag = obs_zz.basis.conj().T @ obs_zz.k_mat @ obs_zz.basis
        assert_allclose(k_diag, np.diag(obs_zz.eigenvalues))

    def test_from_matrix_rejects_non_hermitian(self):
        """Observables must be Hermitian."""
        with pytest.raises(NotHermitianError):
            Observable.from_matrix([[0.0, 1.0], [0.0, 0.0]])

    def test_tensor_needs_factors(self):
        """An empty tensor product is an error."""
        with pytest.raises(ValueError, match="at least one"):
            Observable.tensor()


# ==================== l1 Coherence ====================


class TestL1:
    """Tests for the l1 coherence."""

    def test_incoherent_state(self, obs_z):
        """Diagonal states have zero coherence."""
        rho = DensityMatrix(np.diag([0.3, 0.7]))
        assert c_l1(rho, obs_z).value == 0.0

    def test_plus_state(self, obs_z):
        """|+> has l1 coherence one."""
        value = c_l1(bloch_state(1.0, 0.0, 0.0), obs_z)
        assert value.value == pytest.approx(1.0)
        assert value.measure is Measure.L1
        assert value.basis_label == "z"

    def test_uniform_superposition_d4(self, obs_zz):
        """The uniform two-qubit superposition reaches d - 1 = 3."""
        rho = PureState.normalized(np.ones(4)).density()
        assert c_l1(rho, obs_zz).value == pytest.approx(3.0)
        assert max_coherence(obs_zz, Measure.L1) == 3.0

    def test_dimension_mismatch(self, obs_zz):
        """State and observable dimensions must agree."""
        with pytest.raises(DimensionMismatchError):
            c_l1(bloch_state(0.0, 0.0, 1.0), obs_zz)


# ==================== Skew Coherence ====================


class TestSkew:
    """Tests for the skew-information coherence."""

    def test_maximally_mixed(self, obs_x):
        """sqrt(I/2) commutes with everything."""
        assert c_skew(DensityMatrix.maximally_mixed(2), obs_x).value == 0.0

    def test_partially_mixed(self, obs_z):
        """(1 - sqrt(1 - 0.36)) * 1 = 0.2."""
        rho = bloch_state(0.6, 0.0, 0.0)
        assert c_skew(rho, obs_z).value == pytest.approx(0.2, abs=1e-12)

    def test_pure_variance(self, obs_z):
        """Pure-state skew information equals the variance."""
        plus = PureState.normalized([1.0, 1.0])
        assert c_skew_pure(plus, obs_z).value == pytest.approx(1.0)
        assert c_skew_pure(PureState.normalized([1.0, 0.0]), obs_z).value == 0.0

    def test_bell_state_in_xz(self):
        """(|00> + |11>)/sqrt 2 has unit variance of sigma_x x sigma_z."""
        bell = PureState.normalized([1.0, 0.0, 0.0, 1.0])
        k = Observable.named("xz")
        assert c_skew_pure(bell, k).value == pytest.approx(1.0)
        assert c_skew(bell.density(), k).value == pytest.approx(1.0, abs=1e-9)

    def test_scales_with_spacing(self):
        """Skew information scales with beta squared."""
        k = Observable.pauli_axis((0.0, 0.0, 1.0), alpha=5.0, beta=2.0)
        value = c_skew(bloch_state(1.0, 0.0, 0.0), k).value
        assert value == pytest.approx(4.0, abs=1e-9)

    @pytest.mark.parametrize("omega", np.linspace(0.0, 2 * math.pi, 25))
    def test_equatorial_states_are_maximal(self, omega, obs_z):
        """Every equatorial pure state has skew coherence exactly 1."""
        rho = equatorial_state((0.0, 0.0, 1.0), omega).density()
        assert c_skew(rho, obs_z).value == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("theta", [0.2, 0.9, 1.4, 2.6])
    def test_pure_states_match_variance(self, theta, obs_x):
        """The matrix route agrees with the variance on tilted pure states."""
        psi = PureState.normalized([math.cos(theta / 2), math.sin(theta / 2)])
        expected = c_skew_pure(psi, obs_x).value
        assert c_skew(psi.density(), obs_x).value == pytest.approx(expected, abs=1e-10)

    def test_pure_dimension_mismatch(self, obs_zz):
        """Pure-state variance checks dimensions."""
        with pytest.raises(DimensionMismatchError):
            c_skew_pure(PureState.normalized([1.0, 1.0]), obs_zz)

    def test_max_coherence(self, obs_z, obs_zz):
        """Maximal skew coherence is known for qubits only."""
        assert max_coherence(obs_z, Measure.SKEW) == pytest.approx(1.0)
        with pytest.raises(UnsupportedError):
            max_coherence(obs_zz, Measure.SKEW)


# ==================== Qubit Closed Forms ====================


class TestQubitClosedForms:
    """Bloch-vector closed forms against the matrix definitions."""

    @pytest.mark.parametrize(("r", "k_hat", "l1", "skew"), QUBIT_CASES)
    def test_closed_forms(self, r, k_hat, l1, skew):
        """Closed forms reproduce the tabulated values."""
        assert c_l1_qubit(r, k_hat).value == pytest.approx(l1, abs=1e-12)
        assert c_skew_qubit(r, k_hat).value == pytest.approx(skew, abs=1e-12)

    @pytest.mark.parametrize(("r", "k_hat", "l1", "skew"), QUBIT_CASES)
    def test_matrix_definitions(self, r, k_hat, l1, skew):
        """Matrix definitions agree with the closed forms."""
        rho = density_from_bloch(r)
        k = Observable.pauli_axis(k_hat)
        assert coherence(rho, k, Measure.L1).value == pytest.approx(l1, abs=1e-10)
        assert coherence(rho, k, Measure.SKEW).value == pytest.approx(skew, abs=1e-10)

    @settings(max_examples=200, deadline=None)
    @given(
        x=bloch_components,
        y=bloch_components,
        z=bloch_components,
        theta=st.floats(min_value=0.0, max_value=math.pi),
        phi=st.floats(min_value=0.0, max_value=2 * math.pi),
    )
    def test_closed_forms_match_matrices(self, x, y, z, theta, phi):
        """For any qubit state and axis both paths agree within 1e-10."""
        r = (x, y, z)
        k_hat = unit(theta, phi)
        rho = density_from_bloch(r)
        k = Observable.pauli_axis(k_hat)
        assert c_l1(rho, k).value == pytest.approx(
            c_l1_qubit(r, k_hat).value, abs=1e-10
        )
        assert c_skew(rho, k).value == pytest.approx(
            c_skew_qubit(r, k_hat).value, abs=1e-10
        )

    @settings(max_examples=100, deadline=None)
    @given(
        theta=st.floats(min_value=0.0, max_value=math.pi),
        phi=st.floats(min_value=0.0, max_value=2 * math.pi),
        k_theta=st.floats(min_value=0.0, max_value=math.pi),
    )
    def test_pure_qubit_skew_is_l1_squared(self, theta, phi, k_theta):
        """For pure qubit states C_skew = C_l1^2."""
        r = unit(theta, phi)
        k_hat = unit(k_theta, 0.0)
        l1 = c_l1_qubit(r, k_hat).value
        assert c_skew_qubit(r, k_hat).value == pytest.approx(l1**2, abs=1e-10)


# ==================== Values ====================


def test_coherence_value_float():
    value = CoherenceValue(0.25, Measure.L1, "z")
    assert float(value) == 0.25


def test_coherence_is_convex(obs_x):
    """Mixing never increases coherence."""
    a = bloch_state(0.0, 0.0, 1.0)
    b = bloch_state(0.0, 0.8, 0.0)
    for measure in Measure:
        mixed = coherence(a.mix(b, 0.4), obs_x, measure).value
        value_a = coherence(a, obs_x, measure).value
        value_b = coherence(b, obs_x, measure).value
        assert mixed <= 0.4 * value_a + 0.6 * value_b + 1e-12

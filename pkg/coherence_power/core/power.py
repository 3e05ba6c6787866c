"""
Cohering and decohering power of quantum channels.

The cohering power is the largest output coherence over incoherent inputs and
reduces to a maximum over the eigenbasis of K. The decohering power is the
largest coherence loss over maximally coherent inputs and reduces to a
minimization over the relative phases of a uniform superposition.

Closed forms for the analyzed channel families live next to the generic
numeric paths so every one of them can be checked against the oracle.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple, cast

import numpy as np
import numpy.typing as npt

from coherence_power.const import (
    DENOMINATOR_GUARD,
    EPS_DIR,
    THRESHOLD_DEAD_BAND,
    Measure,
    Method,
    PowerKind,
)
from coherence_power.exceptions import DimensionMismatchError, UnsupportedError

from .channels import (
    FAMILY_BITFLIP,
    FAMILY_DEPOLARIZING,
    FAMILY_IDENTITY,
    FAMILY_PHASEFLIP,
    FAMILY_UNITARY,
    BlochAffineMap,
    Channel,
    apply,
    bloch_map,
    cnot,
    tensor,
    unitary_rotation,
)
from .coherence import Observable, coherence, max_coherence
from .linalg import clear_roundoff
from .oracle import (
    Minimum,
    SearchConfig,
    minimize_circle,
    minimize_interval,
    minimize_torus,
)
from .states import (
    DensityMatrix,
    PureState,
    as_unit_vector,
    bloch_from_density,
    equatorial_state,
    max_coherent_state,
    radial_deficit,
    rotate_bloch,
)

_LOGGER = logging.getLogger(__name__)

type Witness = int | float | tuple[float, ...]


@dataclass(frozen=True)
class PowerResult:
    """
    Value of a cohering or decohering power with its optimizing input.

    ``witness`` is the argmax basis index for cohering power, the argmin phase
    (qubit) or phase tuple (d > 2) for decohering power, and None for values
    obtained from a closed form.
    """

    value: float
    witness: Witness | None
    measure: Measure
    method: Method
    kind: PowerKind


class UnitaryPowers(NamedTuple):
    """Closed-form cohering power, numeric decohering power and their gap."""

    cohering: float
    decohering: float
    gap: float


class XiCritical(NamedTuple):
    """Stationary points, interval end and threshold of the bit-flip minimization."""

    xi1: float | None
    xi2: float | None
    xi3: float | None
    xi_max: float
    threshold: float | None


def _check_dims(ch: Channel, k: Observable) -> None:
    if ch.dim != k.dim:
        msg = f"Channel dimension {ch.dim} does not match observable {k.dim}"
        raise DimensionMismatchError(msg)


def _check_unit_interval(name: str, value: float) -> float:
    if not 0.0 <= value <= 1.0:
        msg = f"{name} must lie in [0, 1], got {value}"
        raise ValueError(msg)
    return float(value)


def _basis_state(k: Observable, index: int) -> DensityMatrix:
    vec = k.basis[:, index]
    return DensityMatrix(np.outer(vec, vec.conj()))


# ==================== Generic definitions ====================


def cohering_power(ch: Channel, k: Observable, measure: Measure) -> PowerResult:
    """
    Return max_i C_K(E(|k_i><k_i|)), the cohering power by discrete maximization.

    Ties go to the lowest basis index.

    Raises:
        DimensionMismatchError: If channel and observable dimensions differ.

    """
    _check_dims(ch, k)
    best_index, best_value = 0, -math.inf
    for index in range(k.dim):
        value = coherence(apply(ch, _basis_state(k, index)), k, measure).value
        if value > best_value:
            best_index, best_value = index, value
    return PowerResult(
        value=best_value,
        witness=best_index,
        measure=measure,
        method=Method.DISCRETE_MAX,
        kind=PowerKind.COHERING,
    )


def decohering_power(
    ch: Channel,
    k: Observable,
    measure: Measure,
    search: SearchConfig | None = None,
    seeds: Sequence[Sequence[float]] = (),
) -> PowerResult:
    """
    Return C_max - min over maximally coherent inputs of the output coherence.

    Maximally coherent inputs are parametrized by the d - 1 relative phases of
    a uniform superposition of K's eigenbasis. Qubits are searched on the
    circle, larger systems on the torus with optional starting ``seeds``.

    Raises:
        DimensionMismatchError: If channel and observable dimensions differ.
        UnsupportedError: For skew information with d > 2 or a degenerate K,
            where the maximally coherent set is not characterized.

    """
    _check_dims(ch, k)
    if measure is Measure.SKEW and (k.dim != 2 or k.is_degenerate):  # noqa: PLR2004
        msg = (
            f"Skew decohering power needs a nondegenerate qubit observable, "
            f"got dimension {k.dim}"
        )
        raise UnsupportedError(msg)

    c_max = max_coherence(k, measure)

    def output_coherence(phases: npt.ArrayLike) -> float:
        psi = max_coherent_state(k, phases)
        return coherence(apply(ch, psi.density()), k, measure).value

    witness: Witness
    if k.dim == 2:  # noqa: PLR2004
        found = minimize_circle(lambda omega: output_coherence([omega]), search)
        witness, minimum = found.point, found.value
    else:
        found_torus = minimize_torus(output_coherence, k.dim - 1, search, seeds)
        witness, minimum = found_torus.point, found_torus.value

    return PowerResult(
        value=max(0.0, c_max - minimum),
        witness=witness,
        measure=measure,
        method=Method.NUMERIC_MIN,
        kind=PowerKind.DECOHERING,
    )


# ==================== Qubit F-function ====================


def f_function(
    ch: Channel | BlochAffineMap, m_hat: npt.ArrayLike, k_hat: npt.ArrayLike
) -> float:
    """
    Return the output skew coherence of a qubit channel for pure input m_hat.

    F = (1 - sqrt(1 - |m'|^2)) (1 - (m'_hat . k)^2) with m' the output Bloch
    vector. An output with |m'| below EPS_DIR is maximally mixed and gives 0.
    """
    affine = ch if isinstance(ch, BlochAffineMap) else bloch_map(ch)
    m = as_unit_vector(m_hat, "m_hat")
    k = as_unit_vector(k_hat, "k_hat")
    out = affine(m)
    norm = float(np.linalg.norm(out))
    if norm < EPS_DIR:
        return 0.0
    radial = 1.0 - math.sqrt(radial_deficit(norm))
    cos = float(out @ k) / norm
    return radial * max(0.0, 1.0 - cos * cos)


def cohering_power_qubit(ch: Channel, k_hat: npt.ArrayLike) -> PowerResult:
    """Return max{F(-k, k), F(k, k)}; witness 0 is -k and 1 is +k."""
    affine = bloch_map(ch)
    k = as_unit_vector(k_hat, "k_hat")
    values = [f_function(affine, -k, k), f_function(affine, k, k)]
    index = int(np.argmax(values))
    return PowerResult(
        value=values[index],
        witness=index,
        measure=Measure.SKEW,
        method=Method.DISCRETE_MAX,
        kind=PowerKind.COHERING,
    )


def _equatorial_frame(k: npt.NDArray[np.float64]) -> tuple[np.ndarray, np.ndarray]:
    """Return the Bloch vectors of the equatorial states at phases 0 and pi/2."""
    e1 = bloch_from_density(equatorial_state(k, 0.0).density()).r
    e2 = bloch_from_density(equatorial_state(k, math.pi / 2).density()).r
    return e1, e2


def decohering_power_qubit(
    ch: Channel, k_hat: npt.ArrayLike, search: SearchConfig | None = None
) -> PowerResult:
    """Return 1 - min over the equatorial circle of F; witness is the phase."""
    affine = bloch_map(ch)
    k = as_unit_vector(k_hat, "k_hat")
    e1, e2 = _equatorial_frame(k)

    def objective(omega: float) -> float:
        m = math.cos(omega) * e1 + math.sin(omega) * e2
        return f_function(affine, m / np.linalg.norm(m), k)

    found = minimize_circle(objective, search)
    return PowerResult(
        value=max(0.0, 1.0 - found.value),
        witness=found.point,
        measure=Measure.SKEW,
        method=Method.NUMERIC_MIN,
        kind=PowerKind.DECOHERING,
    )


# ==================== Unitary channels ====================


def unitary_cohering_closed(
    n_hat: npt.ArrayLike, theta: float, k_hat: npt.ArrayLike
) -> float:
    """Return 1 - [cos(theta) + (1 - cos(theta)) (k.n)^2]^2."""
    n = as_unit_vector(n_hat, "n_hat")
    k = as_unit_vector(k_hat, "k_hat")
    cos_t = math.cos(theta)
    overlap = cos_t + (1.0 - cos_t) * float(k @ n) ** 2
    return min(1.0, max(0.0, 1.0 - overlap * overlap))


def unitary_cohering_rotated(
    n_hat: npt.ArrayLike, theta: float, k_hat: npt.ArrayLike
) -> float:
    """Return sin^2 of the angle between k and its image under the rotation."""
    k = as_unit_vector(k_hat, "k_hat")
    rotated = rotate_bloch(n_hat, theta, k)
    return max(0.0, 1.0 - float(rotated @ k) ** 2)


def unitary_power_equality(
    n_hat: npt.ArrayLike,
    theta: float,
    k_hat: npt.ArrayLike,
    search: SearchConfig | None = None,
) -> UnitaryPowers:
    """Return the closed cohering power, the numeric decohering power and their gap."""
    closed = unitary_cohering_closed(n_hat, theta, k_hat)
    numeric = decohering_power(
        unitary_rotation(n_hat, theta),
        Observable.pauli_axis(k_hat),
        Measure.SKEW,
        search,
    ).value
    return UnitaryPowers(closed, numeric, abs(closed - numeric))


# ==================== Depolarizing channel ====================


def depolarizing_decohering_closed(p: float) -> float:
    """Return sqrt(1 - (1 - p)^2), the same for every direction k."""
    p = _check_unit_interval("p", p)
    return math.sqrt(max(0.0, 1.0 - (1.0 - p) ** 2))


# ==================== Bit-flip and phase-flip channels ====================


def bitflip_cohering_closed(p: float, eta: float) -> float:
    """
    Return the cohering power of the bit-flip channel, with eta = (k.x)^2.

    (1 - sqrt(q)) 4 p^2 eta (1 - eta) / (1 - q), q = 4 p (1 - p) (1 - eta).
    The denominator only vanishes at p = 1/2, eta = 0, where the limit is 0.
    """
    p = _check_unit_interval("p", p)
    eta = _check_unit_interval("eta", eta)
    q = clear_roundoff(4.0 * p * (1.0 - p) * (1.0 - eta))
    denominator = 1.0 - q
    if denominator < DENOMINATOR_GUARD:
        return 0.0
    numerator = 4.0 * p * p * eta * (1.0 - eta)
    return (1.0 - math.sqrt(q)) * numerator / denominator


def phaseflip_cohering_closed(p: float, eta: float) -> float:
    """Return the phase-flip cohering power; as bit-flip with eta = (k.z)^2."""
    return bitflip_cohering_closed(p, eta)


@dataclass(frozen=True)
class BitFlipParams:
    """Parameters of the bit-flip decohering minimization for p and kx2 = (k.x)^2."""

    p: float
    kx2: float

    def __post_init__(self) -> None:
        """Validate ranges."""
        _check_unit_interval("p", self.p)
        _check_unit_interval("kx2", self.kx2)

    @classmethod
    def from_direction(cls, p: float, k_hat: npt.ArrayLike) -> BitFlipParams:
        """Build from a unit direction k."""
        k = as_unit_vector(k_hat, "k_hat")
        return cls(p, min(1.0, float(k[0]) ** 2))

    @property
    def alpha(self) -> float:
        """Return 4 p (1 - p)."""
        return 4.0 * self.p * (1.0 - self.p)

    @property
    def beta(self) -> float:
        """Return 4 p^2 (k.x)^2."""
        return 4.0 * self.p * self.p * self.kx2

    @property
    def eta(self) -> float:
        """Return (k.x)^2."""
        return self.kx2

    @property
    def xi_max(self) -> float:
        """Return the largest reachable xi = (m.x)^2 for m perpendicular to k."""
        return 1.0 - self.kx2

    @property
    def threshold(self) -> float | None:
        """Return the branch threshold A, undefined at p = 0."""
        p = self.p
        if p == 0.0:
            return None
        return 0.5 * ((1.0 - p) / p + math.sqrt(4.0 * p * (1.0 - p)) / (4.0 * p * p))


def bitflip_F_xi(alpha: float, beta: float, xi: float) -> float:  # noqa: N802
    """
    Return (1 - sqrt(alpha (1 - xi))) (1 - beta xi / (1 - alpha + alpha xi)).

    When the first factor vanishes (alpha = 1, xi = 0) so does the product.
    """
    radial = 1.0 - math.sqrt(max(0.0, clear_roundoff(alpha * (1.0 - xi))))
    if radial <= 0.0:
        return 0.0
    return radial * (1.0 - beta * xi / (1.0 - alpha + alpha * xi))


def bitflip_xi_critical(params: BitFlipParams) -> XiCritical:
    """
    Return the stationary points xi1, xi2, xi3 as printed, xi_max and A.

    xi2 and xi3 take the + and - roots of the quadratic. Values that are
    undefined for the given parameters are None.
    """
    alpha, beta = params.alpha, params.beta
    xi1 = -(1.0 - alpha) / alpha if alpha > 0.0 else None

    xi2 = xi3 = None
    spread = alpha - beta
    radicand = -(1.0 - alpha) * spread**3 * beta
    if alpha > 0.0 and spread != 0.0 and radicand >= 0.0:
        center = -(1.0 - alpha) * spread * (alpha - 2.0 * beta)
        denominator = alpha * spread * spread
        root = math.sqrt(radicand)
        xi2 = (center + root) / denominator
        xi3 = (center - root) / denominator

    return XiCritical(xi1, xi2, xi3, params.xi_max, params.threshold)


def bitflip_interior_xi(params: BitFlipParams) -> float | None:
    """
    Return the interior minimizer of F on [0, xi_max], if any.

    With t = sqrt(alpha (1 - xi)), F = (1 - beta - (1 - beta/alpha) t^2)/(1 + t),
    stationary at t* = sqrt(beta (1 - alpha)/(beta - alpha)) - 1, which is a
    minimum when beta > alpha.
    """
    alpha, beta = params.alpha, params.beta
    if alpha <= 0.0 or beta <= alpha:
        return None
    t_star = math.sqrt(beta * (1.0 - alpha) / (beta - alpha)) - 1.0
    t_low = math.sqrt(alpha * params.kx2)
    if not t_low <= t_star <= math.sqrt(alpha):
        return None
    return min(params.xi_max, max(0.0, 1.0 - t_star * t_star / alpha))


def bitflip_decohering_minimum(params: BitFlipParams) -> Minimum:
    """Return the exact minimum of F over [0, xi_max] and where it is attained."""
    candidates = [0.0, params.xi_max]
    interior = bitflip_interior_xi(params)
    if interior is not None:
        candidates.append(interior)
    values = [bitflip_F_xi(params.alpha, params.beta, xi) for xi in candidates]
    index = int(np.argmin(values))
    _LOGGER.debug(
        "Bit-flip minimum for p=%g kx2=%g at xi=%.12g (candidate %d of %d)",
        params.p,
        params.kx2,
        candidates[index],
        index,
        len(candidates),
    )
    return Minimum(candidates[index], values[index])


def bitflip_decohering_closed(p: float, kx2: float) -> float:
    """
    Return the decohering power of the bit-flip channel for kx2 = (k.x)^2.

    The value is 1 - min F over the endpoints of [0, xi_max] and the interior
    stationary point. It equals 2 sqrt(p (1 - p)) for p <= 1/2, for k = x and
    for k perpendicular to x.
    """
    params = BitFlipParams(p, kx2)
    if params.p == 0.0:
        return 0.0
    return min(1.0, max(0.0, 1.0 - bitflip_decohering_minimum(params).value))


def bitflip_decohering_piecewise(p: float, kx2: float) -> float:
    """
    Return the two-branch expression split at the threshold A.

    Below A the value is 2 sqrt(p (1 - p)); at or above it is the value of F
    at xi_max. Within THRESHOLD_DEAD_BAND of A the larger branch is taken.
    This ignores the interior minimum, so ``bitflip_decohering_closed`` is
    the exact value.
    """
    params = BitFlipParams(p, kx2)
    threshold = params.threshold
    if threshold is None:
        return 0.0
    lower = 2.0 * math.sqrt(p * (1.0 - p))
    s = math.sqrt(4.0 * p * (1.0 - p) * kx2)
    upper = (4.0 * p * kx2 * (1.0 - p * kx2) + s) / (1.0 + s)
    if abs(kx2 - threshold) <= THRESHOLD_DEAD_BAND:
        return max(lower, upper)
    return lower if kx2 < threshold else upper


def phaseflip_decohering_closed(p: float, kz2: float) -> float:
    """Return the phase-flip decohering power; as bit-flip with kz2 = (k.z)^2."""
    return bitflip_decohering_closed(p, kz2)


def bitflip_oracle_minimum(
    params: BitFlipParams, search: SearchConfig | None = None
) -> Minimum:
    """Minimize F over [0, xi_max] by grid and golden-section search."""
    return minimize_interval(
        lambda xi: bitflip_F_xi(params.alpha, params.beta, xi),
        0.0,
        params.xi_max,
        search,
    )


# ==================== Tensor products ====================


def _check_order(n: int) -> None:
    if n < 1:
        msg = f"Number of factors must be at least 1, got {n}"
        raise ValueError(msg)


def tensor_cohering_theorem(c_single: float, n: int) -> float:
    """Return (C + 1)^n - 1, the l1 cohering power of u^(x n) in the product basis."""
    _check_order(n)
    if c_single < 0.0:
        msg = f"Cohering power must be nonnegative, got {c_single}"
        raise ValueError(msg)
    return (c_single + 1.0) ** n - 1.0


def tensor_cohering_product(c_singles: Sequence[float]) -> float:
    """Return prod(C_i + 1) - 1 for a product of different gates."""
    _check_order(len(c_singles))
    if any(c < 0.0 for c in c_singles):
        msg = f"Cohering powers must be nonnegative, got {list(c_singles)}"
        raise ValueError(msg)
    return math.prod(c + 1.0 for c in c_singles) - 1.0


def tensor_decohering_bound(d_single: float, n: int) -> float:
    """Return 2^n - (2 - D)^n, a lower bound on the l1 decohering power of u^(x n)."""
    _check_order(n)
    d_single = _check_unit_interval("d_single", d_single)
    return 2.0**n - (2.0 - d_single) ** n


def tensor_decohering_product_bound(d_singles: Sequence[float]) -> float:
    """Return 2^n - prod(2 - D_i) for a product of different gates."""
    _check_order(len(d_singles))
    ds = [_check_unit_interval("d_single", d) for d in d_singles]
    return 2.0 ** len(ds) - math.prod(2.0 - d for d in ds)


def asymptotic_ratio(d_singles: Sequence[float]) -> list[float]:
    """
    Return the lower-bound ratios D(u_1 x ... x u_n)/(2^n - 1) for n = 1..len.

    Every nonzero factor pushes the ratio towards 1; zero factors keep it
    below 1 and are reported.
    """
    _check_order(len(d_singles))
    ds = [_check_unit_interval("d_single", d) for d in d_singles]
    zeros = [i for i, d in enumerate(ds) if d == 0.0]
    if zeros:
        _LOGGER.warning(
            "Factors %s have zero decohering power; the ratio stays below 1", zeros
        )
    ratios = []
    product = 1.0
    for n, d in enumerate(ds, start=1):
        product *= 2.0 - d
        ratios.append((2.0**n - product) / (2.0**n - 1.0))
    return ratios


def _relative_phases(k: Observable, psi: PureState) -> list[float]:
    """Return the phases of psi relative to its first component in K's basis."""
    amps = k.basis.conj().T @ psi.amplitudes
    return [float(np.angle(a / amps[0])) for a in amps[1:]]


def tensor_cohering_numeric(u: Channel, k: Observable, n: int) -> PowerResult:
    """Return the l1 cohering power of u^(x n) in the product basis of k."""
    _check_order(n)
    return cohering_power(tensor([u] * n), Observable.tensor(*([k] * n)), Measure.L1)


def tensor_decohering_numeric(
    u: Channel, k: Observable, n: int = 2, search: SearchConfig | None = None
) -> PowerResult:
    """
    Return the l1 decohering power of u^(x n) in the product basis of k.

    The torus search is seeded with the product of the single-gate minimizer,
    whose coherence already meets the product lower bound.
    """
    _check_order(n)
    single = decohering_power(u, k, Measure.L1, search)
    product_k = Observable.tensor(*([k] * n))
    psi = max_coherent_state(k, [cast("float", single.witness)])
    amps = psi.amplitudes
    for _ in range(n - 1):
        amps = np.kron(amps, psi.amplitudes)
    seed = _relative_phases(product_k, PureState.normalized(amps))
    return decohering_power(
        tensor([u] * n), product_k, Measure.L1, search, seeds=[seed]
    )


# ==================== CNOT ====================


def cnot_power_report(k: Observable) -> PowerResult:
    """
    Return the skew cohering power of CNOT for a two-qubit observable.

    Raises:
        DimensionMismatchError: If K is not 4-dimensional.

    """
    if k.dim != 4:  # noqa: PLR2004
        msg = f"CNOT acts on two qubits; observable has dimension {k.dim}"
        raise DimensionMismatchError(msg)
    return cohering_power(cnot(), k, Measure.SKEW)


# ==================== Closed-form dispatch ====================


def closed_form_power(
    ch: Channel, k: Observable, measure: Measure, kind: PowerKind
) -> PowerResult | None:
    """
    Return the closed-form power when the channel belongs to an analyzed family.

    Closed forms exist for the skew measure with a nondegenerate qubit
    observable K = alpha I + beta k.sigma, where powers scale with beta^2.
    The identity channel has zero power for every measure and dimension.
    Returns None when no closed form applies.
    """
    _check_dims(ch, k)
    value: float | None = None
    if ch.family == FAMILY_IDENTITY:
        value = 0.0
    elif measure is Measure.SKEW and _is_qubit_axis(k):
        beta, k_hat = k.qubit_axis()
        value = _qubit_closed_form(ch, k_hat, kind)
        if value is not None:
            value *= beta * beta
    if value is None:
        return None
    _LOGGER.debug("Closed form for %s %s power of '%s'", measure, kind, ch.label)
    return PowerResult(
        value=value,
        witness=None,
        measure=measure,
        method=Method.CLOSED_FORM,
        kind=kind,
    )


def _is_qubit_axis(k: Observable) -> bool:
    return k.dim == 2 and not k.is_degenerate  # noqa: PLR2004


def _qubit_closed_form(
    ch: Channel, k_hat: npt.NDArray[np.float64], kind: PowerKind
) -> float | None:
    params = ch.params
    cohering = kind is PowerKind.COHERING
    if ch.family == FAMILY_UNITARY:
        axis = (params["nx"], params["ny"], params["nz"])
        return unitary_cohering_closed(axis, params["theta"], k_hat)
    if ch.family == FAMILY_DEPOLARIZING:
        return 0.0 if cohering else depolarizing_decohering_closed(params["p"])
    if ch.family in (FAMILY_BITFLIP, FAMILY_PHASEFLIP):
        axis_index = 0 if ch.family == FAMILY_BITFLIP else 2
        overlap2 = min(1.0, float(k_hat[axis_index]) ** 2)
        if cohering:
            return bitflip_cohering_closed(params["p"], overlap2)
        return bitflip_decohering_closed(params["p"], overlap2)
    return None

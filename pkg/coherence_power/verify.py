"""
Verification suites: every closed form against the brute-force oracle.

Each suite returns CheckResults carrying the largest deviation seen. Suites
draw from their own generator seeded with the same seed, so a suite produces
the same lines whether it runs alone or as part of ``all``.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .const import Measure, PowerKind
from .core.channels import (
    Channel,
    apply,
    bit_flip,
    bloch_map,
    cnot,
    compose,
    depolarizing,
    hadamard,
    phase_flip,
    tensor,
    unitary_rotation,
)
from .core.coherence import (
    Observable,
    c_l1,
    c_l1_qubit,
    c_skew,
    c_skew_pure,
    c_skew_qubit,
)
from .core.oracle import SearchConfig
from .core.power import (
    BitFlipParams,
    PowerResult,
    asymptotic_ratio,
    bitflip_cohering_closed,
    bitflip_decohering_closed,
    bitflip_decohering_piecewise,
    bitflip_oracle_minimum,
    closed_form_power,
    cnot_power_report,
    cohering_power,
    cohering_power_qubit,
    decohering_power,
    decohering_power_qubit,
    depolarizing_decohering_closed,
    tensor_cohering_numeric,
    tensor_cohering_product,
    tensor_cohering_theorem,
    tensor_decohering_bound,
    tensor_decohering_numeric,
    unitary_cohering_rotated,
    unitary_power_equality,
)
from .core.states import PureState, density_from_bloch, rotate_bloch
from .sampling import (
    random_bloch_vector,
    random_density_matrix,
    random_incoherent_state,
    random_unit_vector,
    random_unitary_channel,
    sphere_net,
)

_LOGGER = logging.getLogger(__name__)

TOL_EXACT = 1e-9
TOL_NUMERIC = 1e-6
TOL_ORACLE = 1e-7
TOL_ZERO = 1e-10

UNITARY_SAMPLES = 100
TENSOR_SAMPLES = 20
TENSOR_PAIRS = 10
AXIOM_SAMPLES = 1000
OPTIMALITY_SAMPLES = 200
DETECTION_FLOOR = 1e-6
P_GRID = tuple(round(0.1 * i, 10) for i in range(11))
FLIP_P = (0.2, 0.4, 0.6, 0.8, 1.0)
FLIP_DECOHERING_P = (0.1, 0.3, 0.5, 0.7, 0.9, 1.0)
MINIMUM_P = tuple(round(0.05 * i, 10) for i in range(1, 20))
MINIMUM_KX2 = tuple(round(0.05 * i, 10) for i in range(21))
THRESHOLD_STRADDLE = 1e-3


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one invariant check."""

    name: str
    deviation: float
    tolerance: float
    informational: bool = False

    @property
    def passed(self) -> bool:
        """Return True if within tolerance; informational checks always pass."""
        return self.informational or self.deviation <= self.tolerance

    def line(self) -> str:
        """Return the report line."""
        if self.informational:
            return f"{self.name}: max deviation {self.deviation:.3g} INFO"
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{self.name}: max deviation {self.deviation:.3g} "
            f"(tol {self.tolerance:.0e}) {status}"
        )


def _worst(values: Iterable[float]) -> float:
    return max((abs(v) for v in values), default=0.0)


def _violation(values: Iterable[float]) -> float:
    """Return the largest positive value, 0 when none is positive."""
    return max([0.0, *values])


def _bound_violation(results: Iterable[PowerResult], dims: Iterable[int]) -> float:
    worst = 0.0
    for result, dim in zip(results, dims, strict=True):
        upper = float(dim - 1) if result.measure is Measure.L1 else 1.0
        worst = max(worst, -result.value, result.value - upper)
    return worst


# ==================== Qubit unitaries ====================


def suite_hadamard(
    rng: np.random.Generator,  # noqa: ARG001
    search: SearchConfig,
) -> list[CheckResult]:
    """Check the Hadamard skew powers (1, 0, 1) in the x, y, z bases."""
    h = hadamard()
    expected = {"x": 1.0, "y": 0.0, "z": 1.0}
    coh, dec, closed = [], [], []
    for axis, value in expected.items():
        k = Observable.named(axis)
        coh.append(cohering_power(h, k, Measure.SKEW).value - value)
        dec.append(decohering_power(h, k, Measure.SKEW, search).value - value)
        for kind in PowerKind:
            result = closed_form_power(h, k, Measure.SKEW, kind)
            closed.append(math.inf if result is None else result.value - value)
    return [
        CheckResult("hadamard cohering (x,y,z) = (1,0,1)", _worst(coh), TOL_EXACT),
        CheckResult("hadamard decohering (x,y,z) = (1,0,1)", _worst(dec), TOL_EXACT),
        CheckResult("hadamard closed forms", _worst(closed), TOL_EXACT),
    ]


def suite_unitary(rng: np.random.Generator, search: SearchConfig) -> list[CheckResult]:
    """Check C = D for random unitaries, and the closed form against sin^2 and F."""
    gaps, sin2, fmax, rotation = [], [], [], []
    for _ in range(UNITARY_SAMPLES):
        n_hat, k_hat = random_unit_vector(rng), random_unit_vector(rng)
        theta = float(rng.uniform(0.0, 2.0 * math.pi))
        powers = unitary_power_equality(n_hat, theta, k_hat, search)
        gaps.append(powers.gap)
        sin2.append(powers.cohering - unitary_cohering_rotated(n_hat, theta, k_hat))
        channel = unitary_rotation(n_hat, theta)
        fmax.append(powers.cohering - cohering_power_qubit(channel, k_hat).value)
        m = random_unit_vector(rng)
        moved = bloch_map(channel)(m) - rotate_bloch(n_hat, theta, m)
        rotation.append(float(np.linalg.norm(moved)))
    return [
        CheckResult("unitary C=D gap", _worst(gaps), TOL_NUMERIC),
        CheckResult("unitary closed vs sin^2 beta", _worst(sin2), TOL_EXACT),
        CheckResult("unitary closed vs F two-fold max", _worst(fmax), TOL_EXACT),
        CheckResult("unitary Bloch rotation", _worst(rotation), TOL_ZERO),
    ]


# ==================== Noisy qubit channels ====================


def suite_depolarizing(
    rng: np.random.Generator, search: SearchConfig
) -> list[CheckResult]:
    """Check zero cohering power and the decohering closed form on a p grid."""
    directions = [np.eye(3)[i] for i in range(3)]
    directions += [random_unit_vector(rng) for _ in range(3)]
    coh, dec = [], []
    for p in P_GRID:
        channel = depolarizing(p)
        closed = depolarizing_decohering_closed(p)
        for k_hat in directions:
            k = Observable.pauli_axis(k_hat)
            coh.append(cohering_power(channel, k, Measure.SKEW).value)
            numeric = decohering_power(channel, k, Measure.SKEW, search).value
            dec.append(numeric - closed)
    return [
        CheckResult("depolarizing cohering power zero", _worst(coh), TOL_ZERO),
        CheckResult(
            "depolarizing decohering closed vs oracle", _worst(dec), TOL_NUMERIC
        ),
    ]


def suite_bitflip(
    rng: np.random.Generator,  # noqa: ARG001
    search: SearchConfig,
) -> list[CheckResult]:
    """Check the bit-flip and phase-flip closed forms against the numeric paths."""
    coh_f, coh_generic, phase = [], [], []
    for p in FLIP_P:
        channel, flipped = bit_flip(p), phase_flip(p)
        for theta in np.linspace(0.0, math.pi / 2, 19):
            k_hat = np.array([math.cos(theta), 0.0, math.sin(theta)])
            closed = bitflip_cohering_closed(p, min(1.0, k_hat[0] ** 2))
            coh_f.append(closed - cohering_power_qubit(channel, k_hat).value)
            k = Observable.pauli_axis(k_hat)
            generic = cohering_power(channel, k, Measure.SKEW).value
            coh_generic.append(closed - generic)
            phase_closed = bitflip_cohering_closed(p, min(1.0, k_hat[2] ** 2))
            phase.append(phase_closed - cohering_power_qubit(flipped, k_hat).value)

    edges = [bitflip_cohering_closed(p, eta) for p in P_GRID for eta in (0.0, 1.0)]
    peak = bitflip_cohering_closed(1.0, 0.5) - 1.0

    dec = []
    for p in FLIP_DECOHERING_P:
        channel = bit_flip(p)
        for k_hat in sphere_net():
            closed = bitflip_decohering_closed(p, min(1.0, k_hat[0] ** 2))
            numeric = decohering_power_qubit(channel, k_hat, search).value
            dec.append(closed - numeric)

    return [
        CheckResult("bitflip cohering closed vs F max", _worst(coh_f), TOL_EXACT),
        CheckResult(
            "bitflip cohering closed vs discrete max", _worst(coh_generic), TOL_EXACT
        ),
        CheckResult("phaseflip cohering closed vs F max", _worst(phase), TOL_EXACT),
        CheckResult("bitflip cohering zero at k=x and k=z", _worst(edges), TOL_EXACT),
        CheckResult("bitflip cohering peak at p=1, theta=pi/4", abs(peak), TOL_EXACT),
        CheckResult(
            "bitflip decohering closed vs circle oracle", _worst(dec), TOL_NUMERIC
        ),
    ]


def _minimum_grid() -> list[tuple[float, float]]:
    points = [(p, kx2) for p in MINIMUM_P for kx2 in MINIMUM_KX2]
    for p in MINIMUM_P:
        threshold = BitFlipParams(p, 0.0).threshold
        if threshold is None:
            continue
        straddle = (threshold - THRESHOLD_STRADDLE, threshold + THRESHOLD_STRADDLE)
        points.extend((p, kx2) for kx2 in straddle if 0.0 <= kx2 <= 1.0)
    return points


def suite_appendix(
    rng: np.random.Generator,  # noqa: ARG001
    search: SearchConfig,
) -> list[CheckResult]:
    """Check the bit-flip decohering minimum against interval minimization."""
    exact, piecewise = [], []
    for p, kx2 in _minimum_grid():
        found = bitflip_oracle_minimum(BitFlipParams(p, kx2), search)
        oracle = 1.0 - found.value
        exact.append(bitflip_decohering_closed(p, kx2) - oracle)
        piecewise.append(bitflip_decohering_piecewise(p, kx2) - oracle)

    special = []
    for p in MINIMUM_P:
        expected = 2.0 * math.sqrt(p * (1.0 - p))
        kx2_values = MINIMUM_KX2 if p <= 0.5 else (0.0, 1.0)  # noqa: PLR2004
        for kx2 in kx2_values:
            special.append(bitflip_decohering_closed(p, kx2) - expected)
            special.append(bitflip_decohering_piecewise(p, kx2) - expected)

    return [
        CheckResult(
            "bitflip exact minimum vs interval oracle", _worst(exact), TOL_ORACLE
        ),
        CheckResult("bitflip special cases 2 sqrt(p(1-p))", _worst(special), TOL_EXACT),
        CheckResult(
            "bitflip two-branch expression vs interval oracle",
            _worst(piecewise),
            TOL_ORACLE,
            informational=True,
        ),
    ]


# ==================== Tensor products ====================


def suite_tensor(rng: np.random.Generator, search: SearchConfig) -> list[CheckResult]:
    """Check exactness of the cohering theorem and the decohering lower bound."""
    k = Observable.named("z")
    singles = [random_unitary_channel(2, rng) for _ in range(TENSOR_SAMPLES)]
    exact = []
    for u in singles:
        c1 = cohering_power(u, k, Measure.L1).value
        exact.extend(
            tensor_cohering_numeric(u, k, n).value - tensor_cohering_theorem(c1, n)
            for n in (2, 3)
        )

    hetero = []
    kk = Observable.tensor(k, k)
    for _ in range(TENSOR_PAIRS):
        u1, u2 = random_unitary_channel(2, rng), random_unitary_channel(2, rng)
        cs = [cohering_power(u, k, Measure.L1).value for u in (u1, u2)]
        direct = cohering_power(tensor([u1, u2]), kk, Measure.L1).value
        hetero.append(direct - tensor_cohering_product(cs))

    below, results = [], []
    for u in singles:
        d1 = min(1.0, decohering_power(u, k, Measure.L1, search).value)
        d2 = tensor_decohering_numeric(u, k, 2, search)
        results.append(d2)
        below.append(tensor_decohering_bound(d1, 2) - d2.value)
    bounds = _bound_violation(results, [4] * len(results))

    saturated = tensor_decohering_numeric(hadamard(), k, 2, search).value - 3.0
    z_rotation = unitary_rotation((0.0, 0.0, 1.0), 0.7)
    still = tensor_decohering_numeric(z_rotation, k, 2, search).value

    ratios = asymptotic_ratio([0.5] * 10)
    expected_ratio = 1.0 - (1.5**10 - 1.0) / (2.0**10 - 1.0)
    slow = asymptotic_ratio([0.1] * 20)
    decreases = [a - b for a, b in zip(slow, slow[1:], strict=False)]

    return [
        CheckResult("tensor cohering theorem (n=2,3)", _worst(exact), TOL_ORACLE),
        CheckResult("tensor cohering heterogeneous", _worst(hetero), TOL_ORACLE),
        CheckResult("tensor decohering lower bound", _violation(below), TOL_NUMERIC),
        CheckResult("tensor decohering hadamard = 3", abs(saturated), TOL_NUMERIC),
        CheckResult("tensor decohering zero stays zero", abs(still), TOL_NUMERIC),
        CheckResult("tensor decohering bounds", bounds, TOL_ZERO),
        CheckResult(
            "asymptotic ratio d=0.5, n=10", abs(ratios[-1] - expected_ratio), TOL_EXACT
        ),
        CheckResult("asymptotic ratio increasing", _violation(decreases), 0.0),
    ]


def suite_cnot(
    rng: np.random.Generator,  # noqa: ARG001
    search: SearchConfig,  # noqa: ARG001
) -> list[CheckResult]:
    """Check the CNOT skew cohering power in the zz, xx and xz bases."""
    zz = cnot_power_report(Observable.named("zz")).value
    xx = cnot_power_report(Observable.named("xx")).value
    xz = cnot_power_report(Observable.named("xz")).value

    plus_zero = PureState(np.array([1.0, 0.0, 1.0, 0.0]) / math.sqrt(2.0))
    bell = PureState(cnot().kraus[0] @ plus_zero.amplitudes)
    variance = c_skew_pure(bell, Observable.named("xz")).value

    return [
        CheckResult("cnot cohering power zz", abs(zz), TOL_ZERO),
        CheckResult("cnot cohering power xx", abs(xx), TOL_ZERO),
        CheckResult("cnot variance of xz on CNOT|+,0>", abs(variance - 1.0), TOL_ZERO),
        CheckResult(
            "cnot cohering power xz minus 1",
            abs(xz - 1.0),
            TOL_ZERO,
            informational=True,
        ),
    ]


# ==================== Axioms ====================


def _random_qubit_channel(rng: np.random.Generator) -> Channel:
    return compose([random_unitary_channel(2, rng), bit_flip(float(rng.random()))])


def _random_qubit_observable(rng: np.random.Generator) -> Observable:
    return Observable.pauli_axis(random_unit_vector(rng))


def suite_axioms(
    rng: np.random.Generator,
    search: SearchConfig,  # noqa: ARG001
) -> list[CheckResult]:
    """Check zero-on-incoherent, convexity, the pure-qubit bridge and closed forms."""
    measures = (c_l1, c_skew)
    zero, detect, convex, bridge, closed, scaling = [], [], [], [], [], []

    for _ in range(AXIOM_SAMPLES):
        k_hat = random_unit_vector(rng)
        k = Observable.pauli_axis(k_hat)
        incoherent = random_incoherent_state(k, rng)
        zero.extend(measure(incoherent, k).value for measure in measures)

        rho1, rho2 = random_density_matrix(2, rng), random_density_matrix(2, rng)
        detect.extend(DETECTION_FLOOR - measure(rho1, k).value for measure in measures)
        weight = float(rng.random())
        mixed = rho1.mix(rho2, weight)
        for measure in measures:
            combined = weight * measure(rho1, k).value
            combined += (1.0 - weight) * measure(rho2, k).value
            convex.append(measure(mixed, k).value - combined)

        psi = random_density_matrix(2, rng, rank=1)
        bridge.append(c_skew(psi, k).value - c_l1(psi, k).value ** 2)

        r = random_bloch_vector(rng)
        rho = density_from_bloch(r)
        closed.append(c_l1_qubit(r, k_hat).value - c_l1(rho, k).value)
        closed.append(c_skew_qubit(r, k_hat).value - c_skew(rho, k).value)

        alpha, beta = float(rng.normal()), float(rng.uniform(0.1, 2.0))
        scaled = Observable.pauli_axis(k_hat, alpha=alpha, beta=beta)
        expected = beta * beta * c_skew(rho, k).value
        scaling.append(c_skew(rho, scaled).value - expected)

    optimality, results, dims = [], [], []
    for index in range(OPTIMALITY_SAMPLES):
        if index % 2:
            channel = tensor([_random_qubit_channel(rng), _random_qubit_channel(rng)])
            k = Observable.tensor(
                _random_qubit_observable(rng), _random_qubit_observable(rng)
            )
        else:
            channel = _random_qubit_channel(rng)
            k = _random_qubit_observable(rng)
        output = apply(channel, random_incoherent_state(k, rng))
        for measure, coherence_of in zip(Measure, measures, strict=True):
            result = cohering_power(channel, k, measure)
            results.append(result)
            dims.append(k.dim)
            optimality.append(coherence_of(output, k).value - result.value)

    return [
        CheckResult("zero on incoherent states", _worst(zero), TOL_ZERO),
        CheckResult("nonzero on random states", _violation(detect), 0.0),
        CheckResult("convexity", _violation(convex), TOL_EXACT),
        CheckResult("pure-qubit bridge skew = l1^2", _worst(bridge), TOL_EXACT),
        CheckResult("qubit closed forms vs general", _worst(closed), TOL_EXACT),
        CheckResult("skew scaling with beta^2", _worst(scaling), TOL_EXACT),
        CheckResult("discrete-max optimality", _violation(optimality), TOL_EXACT),
        CheckResult("cohering power bounds", _bound_violation(results, dims), TOL_ZERO),
    ]


type Suite = Callable[[np.random.Generator, SearchConfig], list[CheckResult]]

SUITES: dict[str, Suite] = {
    "hadamard": suite_hadamard,
    "unitary": suite_unitary,
    "depolarizing": suite_depolarizing,
    "bitflip": suite_bitflip,
    "appendix": suite_appendix,
    "tensor": suite_tensor,
    "cnot": suite_cnot,
    "axioms": suite_axioms,
}

SUITE_ALL = "all"


def run_suites(
    names: Sequence[str], seed: int, search: SearchConfig | None = None
) -> list[CheckResult]:
    """
    Run the named suites, expanding ``all`` to every suite in registry order.

    Raises:
        KeyError: If a suite name is unknown.

    """
    selected = list(SUITES) if SUITE_ALL in names else list(names)
    search = search or SearchConfig()
    results: list[CheckResult] = []
    for name in selected:
        suite = SUITES[name]
        _LOGGER.info("Running suite %s (seed %d)", name, seed)
        results.extend(suite(np.random.default_rng(seed), search))
    return results

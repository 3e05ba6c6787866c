"""Constants for the coherence-power package."""

from __future__ import annotations

from enum import IntEnum, StrEnum
from typing import Final

# Tolerances
HERMITIAN_TOL: Final = 1e-10
TRACE_TOL: Final = 1e-10
PSD_TOL: Final = 1e-10
TP_TOL: Final = 1e-10
NORM_TOL: Final = 1e-12
BLOCH_NORM_TOL: Final = 1e-10
UNIT_TOL: Final = 1e-10
EPS_DIR: Final = 1e-12
ROUNDOFF_CLAMP: Final = 1e-12
ROUNDOFF_ULPS: Final = 64
DENOMINATOR_GUARD: Final = 1e-12
THRESHOLD_DEAD_BAND: Final = 1e-12

# Jacobi eigensolver
JACOBI_THRESHOLD: Final = 1e-12
JACOBI_MAX_SWEEPS: Final = 100
MAX_DIM: Final = 16

# Search defaults
DEFAULT_CIRCLE_POINTS: Final = 360
DEFAULT_TORUS_POINTS: Final = 24
DEFAULT_INTERVAL_POINTS: Final = 10001
DEFAULT_REFINE_TOL: Final = 1e-9
DEFAULT_MAX_REFINE_ITERS: Final = 200
MIN_COARSE_POINTS: Final = 8
MAX_TORUS_DIMS: Final = 3

# Figures
FIGURE_POINTS: Final = 181
FIG1_KDOTN: Final = (0.0, 0.25, 0.5, 0.75, 1.0)
FIG3_P: Final = (0.2, 0.4, 0.6, 0.8, 1.0)
CSV_DIGITS: Final = 9

# Options
OPT_THREADS: Final = "COHERENCE_POWER_THREADS"

# Defaults
DEFAULT_SEED: Final = 0
DEFAULT_SWEEP_STEPS: Final = 11


class Measure(StrEnum):
    """Coherence measures."""

    L1 = "l1"
    SKEW = "skew"


class Method(StrEnum):
    """How a power value was obtained."""

    CLOSED_FORM = "closed_form"
    DISCRETE_MAX = "discrete_max"
    NUMERIC_MIN = "numeric_min"


class PowerKind(StrEnum):
    """Cohering or decohering power."""

    COHERING = "cohering"
    DECOHERING = "decohering"


class ExitCode(IntEnum):
    """CLI exit codes."""

    OK = 0
    VERIFICATION_FAILED = 1
    SPEC_ERROR = 2
    UNSUPPORTED = 3
    IO_ERROR = 4

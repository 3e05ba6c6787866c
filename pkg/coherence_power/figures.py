"""
Figure data and parameter sweeps, written as CSV or JSON.

Figures are closed-form curves; sweeps evaluate the generic numeric powers of
a channel spec template over a parameter range.
"""

from __future__ import annotations

import copy
import csv
import logging
import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, NamedTuple, TextIO

import numpy as np

from .const import (
    CSV_DIGITS,
    DEFAULT_SWEEP_STEPS,
    FIG1_KDOTN,
    FIG3_P,
    FIGURE_POINTS,
    UNIT_TOL,
    Measure,
    PowerKind,
)
from .core.coherence import Observable
from .core.linalg import RealVector
from .core.oracle import SearchConfig
from .core.power import (
    bitflip_cohering_closed,
    cohering_power,
    decohering_power,
    unitary_cohering_closed,
)
from .exceptions import SpecError
from .helpers import get_thread_count
from .specs import CONF_P, CONF_THETA, build_channel, validate_channel_spec

_LOGGER = logging.getLogger(__name__)

FIG1_HEADER = ("theta_rad", "kdotn", "cohering_power")
FIG3_HEADER = ("theta_rad", "p", "cohering_power")

SWEEPABLE = (CONF_P, CONF_THETA)

type Row = tuple[float | str, ...]


class Table(NamedTuple):
    """Header and rows of a CSV table."""

    header: tuple[str, ...]
    rows: list[Row]


def fig1_table() -> Table:
    """
    Return the unitary cohering power against the rotation angle.

    The axis is n = z and k = (sqrt(1 - c^2), 0, c) for each k.n value c.
    """
    n_hat = (0.0, 0.0, 1.0)
    rows: list[Row] = []
    for kdotn in FIG1_KDOTN:
        k_hat = (math.sqrt(1.0 - kdotn * kdotn), 0.0, kdotn)
        for theta in np.linspace(0.0, math.pi, FIGURE_POINTS):
            value = unitary_cohering_closed(n_hat, float(theta), k_hat)
            rows.append((float(theta), kdotn, value))
    return Table(FIG1_HEADER, rows)


def fig3_table() -> Table:
    """Return the bit-flip cohering power against the angle between k and x."""
    rows: list[Row] = []
    for p in FIG3_P:
        for theta in np.linspace(0.0, math.pi / 2, FIGURE_POINTS):
            eta = min(1.0, math.cos(theta) ** 2)
            rows.append((float(theta), p, bitflip_cohering_closed(p, eta)))
    return Table(FIG3_HEADER, rows)


FIGURES: dict[str, Callable[[], Table]] = {
    "fig1": fig1_table,
    "fig3": fig3_table,
}


def format_cell(value: float | str) -> str:
    """Format a number with CSV_DIGITS significant digits, independent of locale."""
    if isinstance(value, str):
        return value
    text = f"{value:.{CSV_DIGITS}g}"
    return "0" if text == "-0" else text


def write_csv(stream: TextIO, table: Table) -> None:
    """Write a header row and the formatted rows with newline line endings."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(table.header)
    writer.writerows([format_cell(v) for v in row] for row in table.rows)


def table_records(table: Table) -> list[dict[str, float | str]]:
    """Return the rows as dictionaries keyed by the header."""
    return [dict(zip(table.header, row, strict=True)) for row in table.rows]


@dataclass(frozen=True)
class SweepSpec:
    """A channel spec template with one parameter swept over a range."""

    channel: dict[str, Any]
    parameter: str
    lo: float
    hi: float
    steps: int = DEFAULT_SWEEP_STEPS
    directions: Sequence[RealVector] = ()
    direction_labels: Sequence[str] = ()
    measure: Measure = Measure.SKEW
    kind: PowerKind = PowerKind.COHERING
    search: SearchConfig = field(default_factory=SearchConfig)

    def __post_init__(self) -> None:
        """Validate the sweep definition."""
        if not isinstance(self.channel, dict):
            raise SpecError("channel", "expected a JSON object")
        if self.parameter not in SWEEPABLE:
            raise SpecError("param", f"must be one of {', '.join(SWEEPABLE)}")
        if self.steps < 2:  # noqa: PLR2004
            raise SpecError("steps", f"must be at least 2, got {self.steps}")
        if not self.directions:
            raise SpecError("k", "at least one direction is required")
        if len(self.direction_labels) not in (0, len(self.directions)):
            raise SpecError("k", "one label per direction is required")
        for vec in self.directions:
            if abs(float(np.linalg.norm(vec)) - 1.0) > UNIT_TOL:
                raise SpecError("k", "directions must be unit vectors")
        self.spec_at(self.lo)

    @property
    def labels(self) -> list[str]:
        """Return the direction labels, defaulting to the formatted components."""
        if self.direction_labels:
            return list(self.direction_labels)
        return [",".join(format_cell(float(c)) for c in v) for v in self.directions]

    def grid(self) -> list[float]:
        """Return the swept parameter values."""
        return [float(v) for v in np.linspace(self.lo, self.hi, self.steps)]

    def spec_at(self, value: float) -> dict[str, Any]:
        """Return the template with the parameter set, validated."""
        spec = copy.deepcopy(self.channel)
        spec[self.parameter] = value
        return validate_channel_spec(spec)


def _evaluate(sweep: SweepSpec, value: float) -> list[float]:
    channel = build_channel(sweep.spec_at(value))
    powers = []
    for direction in sweep.directions:
        k = Observable.pauli_axis(direction)
        if sweep.kind is PowerKind.COHERING:
            result = cohering_power(channel, k, sweep.measure)
        else:
            result = decohering_power(channel, k, sweep.measure, sweep.search)
        powers.append(result.value)
    return powers


def run_sweep(sweep: SweepSpec, threads: int | None = None) -> Table:
    """
    Evaluate the sweep as a parallel map over the parameter grid.

    Rows are ordered by grid index, then direction, whatever the completion
    order of the workers.
    """
    grid = sweep.grid()
    workers = threads or get_thread_count()
    _LOGGER.debug(
        "Sweeping %s over %d points with %d workers",
        sweep.parameter,
        len(grid),
        workers,
    )
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda v: _evaluate(sweep, v), grid))

    header = (sweep.parameter, "direction", f"{sweep.kind}_power")
    rows: list[Row] = [
        (value, label, power)
        for value, powers in zip(grid, results, strict=True)
        for label, power in zip(sweep.labels, powers, strict=True)
    ]
    return Table(header, rows)


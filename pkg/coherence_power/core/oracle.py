"""
Brute-force minimizers: coarse grid scan followed by golden-section refinement.

These are deliberately independent of any closed form so they can certify one.
All objectives must be pure; ties on the grid go to the first index.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from coherence_power.const import (
    DEFAULT_CIRCLE_POINTS,
    DEFAULT_INTERVAL_POINTS,
    DEFAULT_MAX_REFINE_ITERS,
    DEFAULT_REFINE_TOL,
    DEFAULT_TORUS_POINTS,
    MAX_TORUS_DIMS,
    MIN_COARSE_POINTS,
)
from coherence_power.exceptions import SearchDimensionError

_LOGGER = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

type ScalarObjective = Callable[[float], float]
type TorusObjective = Callable[[npt.NDArray[np.float64]], float]


@dataclass(frozen=True)
class SearchConfig:
    """Grid sizes and refinement limits for the oracle minimizers."""

    circle_points: int = DEFAULT_CIRCLE_POINTS
    torus_points: int = DEFAULT_TORUS_POINTS
    interval_points: int = DEFAULT_INTERVAL_POINTS
    refine_tol: float = DEFAULT_REFINE_TOL
    max_refine_iters: int = DEFAULT_MAX_REFINE_ITERS

    def __post_init__(self) -> None:
        """Validate the configuration."""
        for name in ("circle_points", "torus_points", "interval_points"):
            if getattr(self, name) < MIN_COARSE_POINTS:
                msg = f"{name} must be at least {MIN_COARSE_POINTS}"
                raise ValueError(msg)
        if not self.refine_tol > 0.0:
            msg = f"refine_tol must be positive, got {self.refine_tol}"
            raise ValueError(msg)
        if self.max_refine_iters < 1:
            msg = f"max_refine_iters must be positive, got {self.max_refine_iters}"
            raise ValueError(msg)


class Minimum(NamedTuple):
    """Location and value of a minimum."""

    point: float
    value: float


class TorusMinimum(NamedTuple):
    """Location (one phase per dimension) and value of a minimum on a torus."""

    point: tuple[float, ...]
    value: float


def golden_section(
    f: ScalarObjective, a: float, b: float, tol: float, max_iters: int
) -> Minimum:
    """
    Minimize ``f`` on [a, b] by golden-section search.

    Returns the best probe seen, which for unimodal ``f`` is within ``tol`` of
    the minimizer.
    """
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    best = Minimum(c, fc) if fc <= fd else Minimum(d, fd)

    for _ in range(max_iters):
        if abs(b - a) <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
            if fc < best.value:
                best = Minimum(c, fc)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
            if fd < best.value:
                best = Minimum(d, fd)
    else:
        _LOGGER.warning(
            "Golden-section search stopped after %d iterations (width %.3e)",
            max_iters,
            b - a,
        )

    return best


def minimize_circle(f: ScalarObjective, cfg: SearchConfig | None = None) -> Minimum:
    """
    Minimize a function of one angle over [0, 2 pi).

    Scans ``cfg.circle_points`` equally spaced angles, then refines inside the
    bracket of the two neighbours of the best grid point.
    """
    cfg = cfg or SearchConfig()
    step = TWO_PI / cfg.circle_points
    values = [f(i * step) for i in range(cfg.circle_points)]
    index = int(np.argmin(values))
    grid_best = Minimum(index * step, values[index])
    _LOGGER.debug("Circle grid minimum %.12g at %.6f", grid_best.value, grid_best.point)

    refined = golden_section(
        f,
        grid_best.point - step,
        grid_best.point + step,
        cfg.refine_tol,
        cfg.max_refine_iters,
    )
    if refined.value < grid_best.value:
        return Minimum(refined.point % TWO_PI, refined.value)
    return grid_best


def _pattern_directions(dims: int) -> list[npt.NDArray[np.float64]]:
    """Return the coordinate axes followed by the pairwise diagonals."""
    eye = np.eye(dims)
    directions = list(eye)
    for i, j in itertools.combinations(range(dims), 2):
        directions.append((eye[i] + eye[j]) / math.sqrt(2.0))
        directions.append((eye[i] - eye[j]) / math.sqrt(2.0))
    return directions


def _descend(
    f: TorusObjective,
    start: npt.NDArray[np.float64],
    value: float,
    step: float,
    cfg: SearchConfig,
) -> TorusMinimum:
    """Line-search along every pattern direction until a sweep stops improving."""
    point = start.copy()
    directions = _pattern_directions(point.size)

    for _ in range(cfg.max_refine_iters):
        before = value
        for direction in directions:
            base = point.copy()

            def along(t: float, base=base, direction=direction) -> float:
                return f(base + t * direction)

            found = golden_section(
                along, -step, step, cfg.refine_tol, cfg.max_refine_iters
            )
            if found.value < value:
                point = base + found.point * direction
                value = found.value
        if before - value < cfg.refine_tol:
            break

    return TorusMinimum(tuple(float(x) for x in point % TWO_PI), value)


def minimize_torus(
    f: TorusObjective,
    dims: int,
    cfg: SearchConfig | None = None,
    seeds: Iterable[Sequence[float]] = (),
) -> TorusMinimum:
    """
    Minimize a function of ``dims`` phases over the torus [0, 2 pi)^dims.

    A full ``torus_points``-per-axis grid is scanned; the best grid point and
    every seed are then refined by pattern search (axes and pairwise
    diagonals) with golden-section line searches. The best result wins and is
    never worse than the grid minimum.

    Raises:
        SearchDimensionError: If ``dims`` is not in [1, MAX_TORUS_DIMS].

    """
    if not 1 <= dims <= MAX_TORUS_DIMS:
        msg = f"Torus search supports 1 to {MAX_TORUS_DIMS} phases, got {dims}"
        raise SearchDimensionError(msg)
    cfg = cfg or SearchConfig()
    step = TWO_PI / cfg.torus_points

    best_index: tuple[int, ...] = (0,) * dims
    best_value = math.inf
    for index in itertools.product(range(cfg.torus_points), repeat=dims):
        value = f(np.asarray(index, dtype=np.float64) * step)
        if value < best_value:
            best_index, best_value = index, value
    grid_point = np.asarray(best_index, dtype=np.float64) * step
    _LOGGER.debug("Torus grid minimum %.12g at %s", best_value, grid_point)

    best = _descend(f, grid_point, best_value, step, cfg)
    for seed in seeds:
        start = np.asarray(seed, dtype=np.float64)
        if start.shape != (dims,):
            msg = f"Seed {tuple(seed)} does not have {dims} phases"
            raise SearchDimensionError(msg)
        candidate = _descend(f, start, f(start), step, cfg)
        if candidate.value < best.value:
            best = candidate

    _LOGGER.debug("Torus refined minimum %.12g at %s", best.value, best.point)
    return best


def minimize_interval(
    f: ScalarObjective, lo: float, hi: float, cfg: SearchConfig | None = None
) -> Minimum:
    """
    Minimize ``f`` on [lo, hi] by a uniform grid plus golden-section refinement.

    Raises:
        ValueError: If ``lo > hi``.

    """
    if lo > hi:
        msg = f"Interval bounds reversed: lo={lo} > hi={hi}"
        raise ValueError(msg)
    if lo == hi:
        return Minimum(lo, f(lo))
    cfg = cfg or SearchConfig()

    grid = np.linspace(lo, hi, cfg.interval_points)
    values = [f(float(x)) for x in grid]
    index = int(np.argmin(values))
    grid_best = Minimum(float(grid[index]), values[index])

    left = float(grid[max(index - 1, 0)])
    right = float(grid[min(index + 1, grid.size - 1)])
    refined = golden_section(f, left, right, cfg.refine_tol, cfg.max_refine_iters)
    if refined.value < grid_best.value:
        return refined
    return grid_best

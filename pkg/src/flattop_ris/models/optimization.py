"""
Phase optimizer models: flat-top masks, solver settings and reports.
"""

from __future__ import annotations

import math
from typing import Self

import numpy as np
from numpy.typing import NDArray
from pydantic import Field, model_validator

from flattop_ris.constants import DEFAULT_PATTERN_POINTS, InitPolicy
from flattop_ris.models.base import FlatTopModel, RealVector
from flattop_ris.models.pattern import FlatTopMetrics
from flattop_ris.models.profile import PhaseProfile

Interval = tuple[float, float]


def _overlaps(a: Interval, b: Interval) -> bool:
    return a[0] < b[1] and b[0] < a[1]


class FlatTopSpec(FlatTopModel):
    """
    Flat-top mask on the optimization grid.

    Angles are radians. The passband is sampled at ``grid_points`` evenly
    spaced angles; stopbands are sampled every ``stopband_step_deg``.
    Widening or narrowing the passband bounds tunes the beam width.
    """

    name: str = "custom"
    passband: Interval
    stopbands: tuple[Interval, ...] = ()
    grid_points: int = Field(default=15, ge=2)
    sidelobe_target_db: float = -13.0
    ripple_weight: float = Field(default=1.0, ge=0.0)
    sidelobe_weight: float = Field(default=0.25, ge=0.0)
    stopband_step_deg: float = Field(default=0.5, gt=0.0)

    @model_validator(mode="after")
    def _check_bands(self) -> Self:
        bands = (self.passband, *self.stopbands)
        for low, high in bands:
            if not low < high:
                raise ValueError(f"band ({low}, {high}) must have positive width")
            if abs(low) > math.pi / 2 + 1e-12 or abs(high) > math.pi / 2 + 1e-12:
                raise ValueError(f"band ({low}, {high}) outside [-pi/2, pi/2]")
        for stopband in self.stopbands:
            if _overlaps(self.passband, stopband):
                raise ValueError(f"stopband {stopband} overlaps the passband")
        return self

    def passband_grid(self) -> NDArray[np.float64]:
        low, high = self.passband
        return np.linspace(low, high, self.grid_points)

    def stopband_grid(self) -> NDArray[np.float64]:
        step = math.radians(self.stopband_step_deg)
        samples = [
            np.linspace(low, high, max(int(math.floor((high - low) / step + 1e-9)) + 1, 2))
            for low, high in self.stopbands
        ]
        if not samples:
            return np.empty(0, dtype=np.float64)
        return np.concatenate(samples)

    def with_grid_points(self, grid_points: int) -> Self:
        """Same mask sampled with a different passband grid."""
        return type(self).model_validate({**self.model_dump(), "grid_points": grid_points})

    @classmethod
    def from_degrees(
        cls,
        name: str,
        passband_deg: Interval,
        stopbands_deg: tuple[Interval, ...] = (),
        **kwargs: float | int,
    ) -> Self:
        return cls.model_validate(
            {
                "name": name,
                "passband": (math.radians(passband_deg[0]), math.radians(passband_deg[1])),
                "stopbands": tuple(
                    (math.radians(low), math.radians(high)) for low, high in stopbands_deg
                ),
                **kwargs,
            }
        )

    @classmethod
    def wide(cls) -> Self:
        """Chosen default: +/-15 degree passband, stopbands beyond +/-23 degrees."""
        return cls.from_degrees("wide", (-15.0, 15.0), ((-90.0, -23.0), (23.0, 90.0)))

    @classmethod
    def narrow(cls) -> Self:
        """Chosen default: +/-6 degree passband, stopbands beyond +/-16 degrees."""
        return cls.from_degrees("narrow", (-6.0, 6.0), ((-90.0, -16.0), (16.0, 90.0)))


class OptimizerConfig(FlatTopModel):
    """
    Gradient descent settings for the phase optimizer.

    The objective smooths max/min with log-sum-exp at ``temperature`` (dB),
    which is halved every ``anneal_every`` accepted steps down to
    ``min_temperature``.
    """

    max_iterations: int = Field(default=2000, ge=1)
    tolerance_db: float = Field(default=1e-4, gt=0.0, description="Objective change over `patience` steps")
    patience: int = Field(default=10, ge=1)
    initial_step: float = Field(default=1e-2, gt=0.0, description="Radians per unit gradient")
    max_step: float = Field(default=1.0, gt=0.0)
    step_growth: float = Field(default=2.0, ge=1.0)
    backtrack_factor: float = Field(default=0.5, gt=0.0, lt=1.0)
    max_backtracks: int = Field(default=30, ge=1)
    armijo: float = Field(default=1e-4, gt=0.0, lt=1.0)
    temperature: float = Field(default=0.1, gt=0.0)
    temperature_decay: float = Field(default=0.5, gt=0.0, le=1.0)
    anneal_every: int = Field(default=50, ge=1)
    min_temperature: float = Field(default=1e-3, gt=0.0)
    power_floor: float = Field(default=1e-12, gt=0.0)
    dense_points: int = Field(default=DEFAULT_PATTERN_POINTS, ge=11)
    init_policy: InitPolicy = InitPolicy.TEMPLATE
    seed: int = Field(default=0, ge=0)


class OptimizationReport(FlatTopModel):
    """
    Outcome of one optimizer run.

    ``converged`` reports the stop rule; ``useful`` reports whether the
    dense-grid ripple meets the flat-top threshold and stays within the
    coverage gap of the optimization-grid ripple. The two are independent:
    a coarse grid can converge to a useless beam.
    """

    spec: FlatTopSpec
    phases: PhaseProfile
    iterations: int = Field(..., ge=0)
    objective_trace: RealVector
    initial_ripple_db: float = Field(..., ge=0.0, description="Optimization-grid ripple of the start point")
    final_ripple_db: float = Field(..., ge=0.0, description="Optimization-grid ripple of the result")
    metrics: FlatTopMetrics = Field(..., description="Dense-grid verification")
    converged: bool
    useful: bool
    reverted: bool = Field(default=False, description="Result fell back to the start point")
    final_temperature: float

    @model_validator(mode="after")
    def _check_trace(self) -> Self:
        if self.objective_trace.size == 0:
            raise ValueError("objective trace must not be empty")
        if np.any(np.diff(self.objective_trace) > 1e-12 * (1.0 + np.abs(self.objective_trace[:-1]))):
            raise ValueError("objective trace must be nonincreasing")
        return self

    @property
    def dense_ripple_db(self) -> float:
        return self.metrics.passband_ripple_db

    @property
    def coverage_gap_db(self) -> float:
        return self.metrics.coverage_gap_db(self.final_ripple_db)


class GridSensitivityReport(FlatTopModel):
    """Runs of one mask at several passband grid densities."""

    runs: tuple[OptimizationReport, ...]

    @property
    def grid_points(self) -> list[int]:
        return [run.spec.grid_points for run in self.runs]

    def run_for(self, grid_points: int) -> OptimizationReport:
        for run in self.runs:
            if run.spec.grid_points == grid_points:
                return run
        raise KeyError(grid_points)

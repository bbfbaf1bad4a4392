"""
Radiation pattern models.

Angles are stored in radians. For planar patterns the two axes are
sine-space angles: u = sin(az), v = sin(el).
"""

from __future__ import annotations

import math
from typing import Self

import numpy as np
from numpy.typing import NDArray
from pydantic import Field, model_validator

from flattop_ris.constants import (
    DEFAULT_PATTERN_POINTS,
    MAX_COVERAGE_GAP_DB,
    USEFUL_RIPPLE_DB,
    Normalization,
)
from flattop_ris.models.base import FlatTopModel, RealMatrix, RealVector

_HALF_PI = math.pi / 2.0
_SPAN_TOL = 1e-12


class AngularGrid(FlatTopModel):
    """Strictly increasing angles within [-pi/2, pi/2]."""

    angles: RealVector

    @model_validator(mode="after")
    def _check_angles(self) -> Self:
        if self.angles.size == 0:
            raise ValueError("angular grid must not be empty")
        if np.any(np.abs(self.angles) > _HALF_PI + _SPAN_TOL):
            raise ValueError("angles must lie within [-pi/2, pi/2]")
        if np.any(np.diff(self.angles) <= 0.0):
            raise ValueError("angles must be strictly increasing")
        return self

    def __len__(self) -> int:
        return int(self.angles.size)

    @property
    def degrees(self) -> NDArray[np.float64]:
        return np.degrees(self.angles)

    @classmethod
    def uniform(
        cls,
        n_points: int = DEFAULT_PATTERN_POINTS,
        low: float = -_HALF_PI,
        high: float = _HALF_PI,
    ) -> Self:
        """n_points evenly spaced angles from low to high inclusive."""
        return cls(angles=np.clip(np.linspace(low, high, n_points), -_HALF_PI, _HALF_PI))

    @classmethod
    def from_degrees(
        cls,
        low_deg: float = -90.0,
        high_deg: float = 90.0,
        n_points: int = DEFAULT_PATTERN_POINTS,
    ) -> Self:
        return cls.uniform(n_points, math.radians(low_deg), math.radians(high_deg))


class RadiationPattern(FlatTopModel):
    """Power pattern over a 1D angular grid, in dB."""

    grid: AngularGrid
    power_db: RealVector
    normalization: Normalization = Normalization.PEAK

    @model_validator(mode="after")
    def _check_values(self) -> Self:
        if self.power_db.shape != self.grid.angles.shape:
            raise ValueError("power_db must match the grid length")
        if not np.all(np.isfinite(self.power_db)):
            raise ValueError("power_db must be finite")
        return self

    @property
    def angles(self) -> NDArray[np.float64]:
        return self.grid.angles

    @property
    def peak_db(self) -> float:
        return float(self.power_db.max())

    @property
    def peak_angle(self) -> float:
        """Angle of the maximum, in radians."""
        return float(self.grid.angles[int(np.argmax(self.power_db))])


class RadiationPattern2D(FlatTopModel):
    """
    Power over an (el, az) grid in dB.

    ``power_db`` has one row per elevation sample and one column per
    azimuth sample. Invisible directions (u^2 + v^2 > 1) hold the dB floor.
    """

    az: AngularGrid
    el: AngularGrid
    power_db: RealMatrix
    normalization: Normalization = Normalization.PEAK

    @model_validator(mode="after")
    def _check_values(self) -> Self:
        if self.power_db.shape != (len(self.el), len(self.az)):
            raise ValueError(
                f"power_db shape {self.power_db.shape} does not match "
                f"({len(self.el)}, {len(self.az)})"
            )
        if not np.all(np.isfinite(self.power_db)):
            raise ValueError("power_db must be finite")
        return self

    @property
    def peak_index(self) -> tuple[int, int]:
        """(el, az) index of the maximum."""
        row, col = np.unravel_index(int(np.argmax(self.power_db)), self.power_db.shape)
        return int(row), int(col)


class FlatTopMetrics(FlatTopModel):
    """Quality figures of a flat-top main lobe over a passband."""

    passband_ripple_db: float = Field(..., ge=0.0, description="max - min over the passband")
    max_sidelobe_db: float | None = Field(
        default=None, description="Highest peak outside passband and guard, relative to the passband mean"
    )
    transition_width_deg: float = Field(..., ge=0.0)
    passband_mean_db: float
    passband_samples: int = Field(..., ge=1)

    def coverage_gap_db(self, grid_ripple_db: float) -> float:
        """Dense ripple in excess of the ripple seen on the optimization grid."""
        return self.passband_ripple_db - grid_ripple_db

    def is_useful(
        self,
        threshold_db: float = USEFUL_RIPPLE_DB,
        grid_ripple_db: float | None = None,
        max_gap_db: float = MAX_COVERAGE_GAP_DB,
    ) -> bool:
        """
        Flat-top verdict on the dense grid.

        With ``grid_ripple_db`` the beam must also keep its ripple between
        the optimization grid samples: a dip the grid never saw is a
        coverage gap, however flat the beam looks at the samples.
        """
        if self.passband_ripple_db > threshold_db:
            return False
        if grid_ripple_db is None:
            return True
        return self.coverage_gap_db(grid_ripple_db) <= max_gap_db

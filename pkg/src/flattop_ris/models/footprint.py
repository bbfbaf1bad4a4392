"""
Ground footprint models.

Ground coordinates are meters: x runs along the azimuth axis of the array,
y along the forward ground direction the array tilts toward.
"""

from __future__ import annotations

import math
from typing import Self

import numpy as np
from numpy.typing import NDArray
from pydantic import Field, model_validator

from flattop_ris.constants import (
    DEFAULT_DOWNTILT,
    DEFAULT_FOOTPRINT_RESOLUTION_M,
    DEFAULT_MOUNT_HEIGHT_M,
    DEFAULT_WAVELENGTH_M,
    SCENARIO_PROVENANCE,
)
from flattop_ris.models.base import FlatTopModel, RealMatrix, RealVector

Extent = tuple[float, float]


def _cell_centers(extent: Extent, resolution: float) -> NDArray[np.float64]:
    """Centers of whole cells from the low edge; a partial last cell is dropped."""
    low, high = extent
    count = max(math.floor((high - low) / resolution + 1e-9), 1)
    return low + resolution * (np.arange(count, dtype=np.float64) + 0.5)


class DeploymentScenario(FlatTopModel):
    """
    Mounted array over flat ground.

    A downtilt of zero points the boresight at nadir; atan(x0 / h) aims it
    at ground distance x0 along +y.
    """

    mount_height_m: float = Field(default=DEFAULT_MOUNT_HEIGHT_M, gt=0.0)
    downtilt: float = Field(default=DEFAULT_DOWNTILT, ge=0.0, lt=math.pi / 2, description="Radians from nadir")
    x_range_m: Extent = (-40.0, 40.0)
    y_range_m: Extent = (-20.0, 60.0)
    resolution_m: float = Field(default=DEFAULT_FOOTPRINT_RESOLUTION_M, gt=0.0)
    wavelength_m: float = Field(default=DEFAULT_WAVELENGTH_M, gt=0.0)
    provenance: str = SCENARIO_PROVENANCE

    @model_validator(mode="after")
    def _check_extent(self) -> Self:
        for name, (low, high) in (("x_range_m", self.x_range_m), ("y_range_m", self.y_range_m)):
            if high - low < self.resolution_m:
                raise ValueError(f"{name} must span at least one cell")
        return self

    @property
    def x_centers(self) -> NDArray[np.float64]:
        return _cell_centers(self.x_range_m, self.resolution_m)

    @property
    def y_centers(self) -> NDArray[np.float64]:
        return _cell_centers(self.y_range_m, self.resolution_m)

    @property
    def aim_distance_m(self) -> float:
        """Ground distance where the boresight meets the ground."""
        return self.mount_height_m * math.tan(self.downtilt)


class FootprintGrid(FlatTopModel):
    """Peak-normalized received power per ground cell (dB), rows along y."""

    x_m: RealVector
    y_m: RealVector
    power_db: RealMatrix
    scenario: DeploymentScenario
    peak_fspl_db: float = Field(..., description="Free-space path loss to the peak cell")

    @model_validator(mode="after")
    def _check_values(self) -> Self:
        if self.power_db.shape != (self.y_m.size, self.x_m.size):
            raise ValueError("power_db must have one row per y and one column per x")
        if not np.all(np.isfinite(self.power_db)):
            raise ValueError("power_db must be finite")
        return self

    @property
    def origin(self) -> tuple[float, float]:
        """Lower-left corner of the grid in meters."""
        half = self.scenario.resolution_m / 2.0
        return float(self.x_m[0] - half), float(self.y_m[0] - half)

    @property
    def resolution_m(self) -> float:
        return self.scenario.resolution_m

    @property
    def peak_index(self) -> tuple[int, int]:
        """(y, x) index of the peak cell."""
        row, col = np.unravel_index(int(np.argmax(self.power_db)), self.power_db.shape)
        return int(row), int(col)

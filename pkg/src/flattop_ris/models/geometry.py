"""
Array layout models.

Linear and planar element grids of the surface (RIS) and the active feeder
(AMAF), plus the combined center-fed arrangement. All lengths are in
half-wavelength units.
"""

from __future__ import annotations

from typing import Self

from pydantic import Field, model_validator

from flattop_ris.constants import (
    DEFAULT_AMAF_ELEMENTS,
    DEFAULT_FOCAL_LENGTH,
    DEFAULT_RIS_ELEMENTS,
    DEFAULT_SPACING,
)
from flattop_ris.models.base import FlatTopModel


class LinearLayout(FlatTopModel):
    """Uniform linear array centered on the origin."""

    n_elements: int = Field(default=DEFAULT_RIS_ELEMENTS, ge=1, description="Element count")
    spacing: float = Field(default=DEFAULT_SPACING, gt=0.0, description="Pitch in half-wavelengths")

    @property
    def aperture(self) -> float:
        """Aperture size D = n_elements x spacing."""
        return self.n_elements * self.spacing


class PlanarLayout(FlatTopModel):
    """
    Rectangular array as the Cartesian product of two linear layouts.

    Rows run along elevation (y), columns along azimuth (x). Flat element
    index is row * n_cols + col.
    """

    rows: LinearLayout = Field(default_factory=LinearLayout, description="Elevation (y) axis")
    cols: LinearLayout = Field(default_factory=LinearLayout, description="Azimuth (x) axis")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows.n_elements, self.cols.n_elements)

    @property
    def n_elements(self) -> int:
        return self.rows.n_elements * self.cols.n_elements

    @property
    def aperture(self) -> float:
        """Largest side of the aperture."""
        return max(self.rows.aperture, self.cols.aperture)

    @classmethod
    def square(cls, n: int, spacing: float = DEFAULT_SPACING) -> Self:
        side = LinearLayout(n_elements=n, spacing=spacing)
        return cls(rows=side, cols=side)


Layout = LinearLayout | PlanarLayout


class AmafRisLayout(FlatTopModel):
    """
    Center-fed AMAF-RIS arrangement.

    The RIS lies in the plane z=0 facing +z; the AMAF lies in the parallel
    plane z=-F, both centered on the common boresight axis.
    """

    ris: LinearLayout | PlanarLayout = Field(
        default_factory=lambda: LinearLayout(n_elements=DEFAULT_RIS_ELEMENTS)
    )
    amaf: LinearLayout | PlanarLayout = Field(
        default_factory=lambda: LinearLayout(n_elements=DEFAULT_AMAF_ELEMENTS)
    )
    focal_length: float = Field(default=DEFAULT_FOCAL_LENGTH, gt=0.0, description="F")

    @model_validator(mode="after")
    def _same_dimensionality(self) -> Self:
        if isinstance(self.ris, PlanarLayout) != isinstance(self.amaf, PlanarLayout):
            raise ValueError("RIS and AMAF must both be linear or both be planar")
        return self

    @property
    def is_planar(self) -> bool:
        return isinstance(self.ris, PlanarLayout)

    @property
    def n_ris(self) -> int:
        return self.ris.n_elements

    @property
    def n_amaf(self) -> int:
        return self.amaf.n_elements

    @classmethod
    def linear(
        cls,
        n_ris: int = DEFAULT_RIS_ELEMENTS,
        n_amaf: int = DEFAULT_AMAF_ELEMENTS,
        focal_length: float = DEFAULT_FOCAL_LENGTH,
        ris_spacing: float = DEFAULT_SPACING,
        amaf_spacing: float = DEFAULT_SPACING,
    ) -> Self:
        return cls(
            ris=LinearLayout(n_elements=n_ris, spacing=ris_spacing),
            amaf=LinearLayout(n_elements=n_amaf, spacing=amaf_spacing),
            focal_length=focal_length,
        )

    @classmethod
    def planar(
        cls,
        n_ris: int = DEFAULT_RIS_ELEMENTS,
        n_amaf: int = DEFAULT_AMAF_ELEMENTS,
        focal_length: float = DEFAULT_FOCAL_LENGTH,
        ris_spacing: float = DEFAULT_SPACING,
        amaf_spacing: float = DEFAULT_SPACING,
    ) -> Self:
        """Square n_ris x n_ris surface fed by a square n_amaf x n_amaf feeder."""
        return cls(
            ris=PlanarLayout.square(n_ris, ris_spacing),
            amaf=PlanarLayout.square(n_amaf, amaf_spacing),
            focal_length=focal_length,
        )


class RayGeometry(FlatTopModel):
    """Distance and angles of the ray from AMAF element m to RIS element n."""

    distance: float = Field(..., ge=0.0, description="r in half-wavelengths")
    departure_angle: float = Field(..., description="theta from the AMAF element boresight (rad)")
    arrival_angle: float = Field(..., description="phi from the RIS element boresight (rad)")

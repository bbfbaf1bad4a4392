"""
Principal eigenmode models.
"""

from __future__ import annotations

from typing import Self

import numpy as np
from numpy.typing import NDArray
from pydantic import Field, model_validator

from flattop_ris.constants import UNIT_MODULUS_TOL
from flattop_ris.models.base import ComplexVector, FlatTopModel, RealVector


class PrincipalEigenmode(FlatTopModel):
    """
    Dominant singular triple (sigma1, u1, v1) of the coupling matrix.

    The global phase is fixed so that sum(v1) is real and positive.
    """

    sigma1: float = Field(..., ge=0.0)
    u1: ComplexVector
    v1: ComplexVector
    singular_values: RealVector = Field(..., description="Full spectrum, descending")

    @model_validator(mode="after")
    def _check_norms(self) -> Self:
        for name, vector in (("u1", self.u1), ("v1", self.v1)):
            if abs(np.linalg.norm(vector) - 1.0) > UNIT_MODULUS_TOL * 10:
                raise ValueError(f"{name} must have unit norm")
        return self

    @property
    def u1_magnitude(self) -> NDArray[np.float64]:
        """|u1|, the aperture amplitude taper."""
        return np.abs(self.u1)

    @property
    def power_transfer(self) -> float:
        """sigma1 squared: the principal AMAF-RIS power-transfer gain."""
        return self.sigma1**2

    @property
    def n_ris(self) -> int:
        return len(self.u1)

    @property
    def n_amaf(self) -> int:
        return len(self.v1)


class CophaseVector(FlatTopModel):
    """Unit-modulus vector w such that w * u1 = |u1|."""

    values: ComplexVector
    zero_indices: tuple[int, ...] = Field(
        default=(), description="Entries where u1 vanished and the phase was set to 1"
    )

    @model_validator(mode="after")
    def _check_unit_modulus(self) -> Self:
        if np.any(np.abs(np.abs(self.values) - 1.0) > UNIT_MODULUS_TOL):
            raise ValueError("co-phasing entries must have unit modulus")
        return self

    @property
    def n_elements(self) -> int:
        return len(self.values)


class TaperPoint(FlatTopModel):
    """One focal length of an F/D sweep."""

    focal_length: float
    f_over_d: float
    edge_taper_db: float = Field(..., description="Edge |u1| relative to its maximum")
    sigma1: float

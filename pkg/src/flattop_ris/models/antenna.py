"""
Element and coupling models.

ElementPattern is the axisymmetric cosine power pattern shared by AMAF and
RIS elements; CouplingMatrix holds the Friis-model feed-to-surface matrix.
"""

from __future__ import annotations

import math
from typing import Self

import numpy as np
from pydantic import Field, model_validator

from flattop_ris.constants import PATCH_EXPONENT, PATCH_PEAK_GAIN
from flattop_ris.models.base import ComplexMatrix, FlatTopModel
from flattop_ris.models.geometry import AmafRisLayout


class ElementPattern(FlatTopModel):
    """Power pattern G(psi) = peak_gain * cos(psi) ** exponent."""

    peak_gain: float = Field(default=PATCH_PEAK_GAIN, gt=0.0, description="Linear peak power gain")
    exponent: float = Field(default=PATCH_EXPONENT, ge=0.0, description="Cosine power q")

    @property
    def peak_gain_dbi(self) -> float:
        return 10.0 * math.log10(self.peak_gain)

    @classmethod
    def patch(cls) -> Self:
        """Microstrip patch: 4 cos^2(psi), 6 dBi and 90 degree HPBW."""
        return cls(peak_gain=PATCH_PEAK_GAIN, exponent=PATCH_EXPONENT)

    @classmethod
    def isotropic(cls) -> Self:
        """Unit gain over the front hemisphere."""
        return cls(peak_gain=1.0, exponent=0.0)


class CouplingMatrix(FlatTopModel):
    """
    AMAF-RIS matrix T, N_p rows by N_a columns.

    Carries the layout and element patterns it was built from so the
    on-axis magnitude bound can be checked.
    """

    entries: ComplexMatrix
    layout: AmafRisLayout
    amaf_pattern: ElementPattern
    ris_pattern: ElementPattern

    @model_validator(mode="after")
    def _check_entries(self) -> Self:
        if self.entries.shape != (self.layout.n_ris, self.layout.n_amaf):
            raise ValueError(
                f"entries shape {self.entries.shape} does not match "
                f"({self.layout.n_ris}, {self.layout.n_amaf})"
            )
        if not np.all(np.isfinite(self.entries)):
            raise ValueError("coupling entries must be finite")
        if np.max(np.abs(self.entries)) > self.on_axis_bound * (1.0 + 1e-12):
            raise ValueError("coupling magnitude exceeds the on-axis bound")
        return self

    @property
    def on_axis_bound(self) -> float:
        """sqrt(E_A(0) E_R(0)) / (2 pi F)."""
        gain = math.sqrt(self.amaf_pattern.peak_gain * self.ris_pattern.peak_gain)
        return gain / (2.0 * math.pi * self.layout.focal_length)

    @property
    def shape(self) -> tuple[int, int]:
        rows, cols = self.entries.shape
        return (rows, cols)

"""
DC power budget models.
"""

from __future__ import annotations

import math
from typing import Self

from pydantic import Field, model_validator

from flattop_ris.constants import DEFAULT_P_RF_DBM, DEFAULT_PA_EFFICIENCY, DEFAULT_SPLITTER_STAGES
from flattop_ris.models.base import FlatTopModel


class SplitterStage(FlatTopModel):
    """One stage of a passive power split."""

    ways: int = Field(..., ge=2)
    insertion_loss_db: float = Field(default=0.0, ge=0.0)


def _default_stages() -> tuple[SplitterStage, ...]:
    return tuple(SplitterStage(ways=w, insertion_loss_db=il) for w, il in DEFAULT_SPLITTER_STAGES)


class PowerBudget(FlatTopModel):
    """Radiated RF power, PA efficiency and the splitter tree of the active array."""

    p_rf_dbm: float = Field(default=DEFAULT_P_RF_DBM, description="Total RF power")
    pa_efficiency: float = Field(default=DEFAULT_PA_EFFICIENCY, gt=0.0, le=1.0)
    splitter_stages: tuple[SplitterStage, ...] = Field(default_factory=_default_stages)

    @property
    def fan_out(self) -> int:
        """Output ports of the splitter tree."""
        return math.prod(stage.ways for stage in self.splitter_stages)


class DcPowerReport(FlatTopModel):
    """PA output and DC consumption of one architecture."""

    architecture: str
    pa_count: int = Field(..., ge=1)
    per_pa_dbm: float
    per_pa_mw: float = Field(..., gt=0.0, description="Largest requested PA output")
    pa_efficiency: float = Field(..., gt=0.0, le=1.0)
    total_dc_mw: float = Field(..., gt=0.0)

    @model_validator(mode="after")
    def _check_total(self) -> Self:
        expected = self.pa_count * self.per_pa_mw / self.pa_efficiency
        if not math.isclose(self.total_dc_mw, expected, rel_tol=1e-9):
            raise ValueError("total DC power must equal pa_count * per_pa_mw / efficiency")
        return self


class EnergyComparison(FlatTopModel):
    """AMAF-RIS against a constant-modulus active array."""

    amaf_ris: DcPowerReport
    active_array: DcPowerReport
    savings_mw: float
    ratio: float = Field(..., gt=0.0, description="Active array DC over AMAF-RIS DC")

    @property
    def amaf_ris_wins(self) -> bool:
        return self.amaf_ris.total_dc_mw < self.active_array.total_dc_mw

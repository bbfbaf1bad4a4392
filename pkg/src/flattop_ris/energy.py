"""
DC power of AMAF-RIS versus a constant-modulus active array.

Every PA is biased for the largest output it is asked for and consumes
P_out / efficiency. The AMAF drives N_a PAs at max |v1|^2 P_RF each; the
active array drives its elements from one PA through a splitter tree, so
that PA must cover the split ratio and the insertion losses.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np
from numpy.typing import ArrayLike

from flattop_ris.exceptions import FlatTopValidationError
from flattop_ris.models.energy import DcPowerReport, EnergyComparison, PowerBudget, SplitterStage

logger = logging.getLogger(__name__)

AMAF_RIS = "AMAF-RIS"
ACTIVE_ARRAY = "constant-modulus active array"


def dbm_to_mw(dbm: float) -> float:
    return float(10.0 ** (dbm / 10.0))


def mw_to_dbm(mw: float) -> float:
    if mw <= 0.0:
        raise FlatTopValidationError("Power must be positive", field="mw", value=mw, expected="> 0")
    return 10.0 * math.log10(mw)


def amaf_ris_dc_power(v1: ArrayLike, budget: PowerBudget) -> DcPowerReport:
    """
    DC power of the AMAF fed with v1.

    v1 is normalized first, so only its shape matters.

    Raises:
        FlatTopValidationError: v1 is empty or has zero norm.
    """
    feed = np.asarray(v1, dtype=np.complex128)
    norm = float(np.linalg.norm(feed))
    if feed.size == 0 or norm == 0.0:
        raise FlatTopValidationError("Feed vector must be nonzero", field="v1", value=norm, expected="> 0")

    share = float(np.max(np.abs(feed / norm) ** 2))
    per_pa_mw = share * dbm_to_mw(budget.p_rf_dbm)
    total = feed.size * per_pa_mw / budget.pa_efficiency
    return DcPowerReport(
        architecture=AMAF_RIS,
        pa_count=feed.size,
        per_pa_dbm=mw_to_dbm(per_pa_mw),
        per_pa_mw=per_pa_mw,
        pa_efficiency=budget.pa_efficiency,
        total_dc_mw=total,
    )


def splitter_loss(stages: Sequence[SplitterStage | tuple[int, float]]) -> float:
    """
    Input power over per-port output power, in dB.

    Sum of 10 log10(ways) and the insertion losses of every stage.

    Raises:
        FlatTopValidationError: no stages given.
    """
    if not stages:
        raise FlatTopValidationError("Splitter needs at least one stage", field="stages", expected="nonempty")
    parsed = [
        stage if isinstance(stage, SplitterStage) else SplitterStage(ways=stage[0], insertion_loss_db=stage[1])
        for stage in stages
    ]
    return sum(10.0 * math.log10(stage.ways) + stage.insertion_loss_db for stage in parsed)


def active_array_dc_power(n_elements: int, budget: PowerBudget) -> DcPowerReport:
    """
    DC power of one PA feeding n_elements through the splitter tree.

    Raises:
        FlatTopValidationError: the splitter fan-out is below n_elements.
    """
    if n_elements < 1:
        raise FlatTopValidationError(
            "Element count must be positive", field="n_elements", value=n_elements, expected=">= 1"
        )
    if budget.fan_out < n_elements:
        raise FlatTopValidationError(
            "Splitter fan-out is smaller than the element count",
            field="splitter_stages",
            value=budget.fan_out,
            expected=f">= {n_elements}",
        )

    loss = splitter_loss(budget.splitter_stages) if budget.splitter_stages else 0.0
    per_element_dbm = budget.p_rf_dbm - 10.0 * math.log10(n_elements)
    pa_dbm = per_element_dbm + loss
    pa_mw = dbm_to_mw(pa_dbm)
    return DcPowerReport(
        architecture=ACTIVE_ARRAY,
        pa_count=1,
        per_pa_dbm=pa_dbm,
        per_pa_mw=pa_mw,
        pa_efficiency=budget.pa_efficiency,
        total_dc_mw=pa_mw / budget.pa_efficiency,
    )


def compare_architectures(v1: ArrayLike, n_elements: int, budget: PowerBudget) -> EnergyComparison:
    """Both DC reports plus the savings of AMAF-RIS."""
    amaf = amaf_ris_dc_power(v1, budget)
    active = active_array_dc_power(n_elements, budget)
    logger.info(
        "DC power: %s %.1f mW, %s %.1f mW",
        AMAF_RIS,
        amaf.total_dc_mw,
        ACTIVE_ARRAY,
        active.total_dc_mw,
    )
    return EnergyComparison(
        amaf_ris=amaf,
        active_array=active,
        savings_mw=active.total_dc_mw - amaf.total_dc_mw,
        ratio=active.total_dc_mw / amaf.total_dc_mw,
    )

"""
Ground footprints of planar beams.

The RIS is a point source carrying its planar pattern (ground distances are
far beyond the aperture). Each cell receives |a_el^H W a_az|^2 E(psi) / d^2,
normalized so the strongest cell is 0 dB.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

from flattop_ris.constants import DB_FLOOR, FootprintCombination
from flattop_ris.exceptions import FlatTopValidationError
from flattop_ris.models.antenna import ElementPattern
from flattop_ris.models.footprint import DeploymentScenario, FootprintGrid
from flattop_ris.models.geometry import PlanarLayout
from flattop_ris.pattern import main_lobe_edges, planar_response, planar_weights, power_to_db
from flattop_ris.propagation import element_gain

logger = logging.getLogger(__name__)


def _array_frame(downtilt: float) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """Azimuth axis, elevation axis and boresight of the tilted array."""
    az_axis = np.array([1.0, 0.0, 0.0])
    el_axis = np.array([0.0, math.cos(downtilt), math.sin(downtilt)])
    boresight = np.array([0.0, math.sin(downtilt), -math.cos(downtilt)])
    return az_axis, el_axis, boresight


def free_space_path_loss_db(distance_m: float, wavelength_m: float) -> float:
    """20 log10(4 pi d / lambda)."""
    return 20.0 * math.log10(4.0 * math.pi * distance_m / wavelength_m)


def ground_footprint(
    weights: ArrayLike,
    layout: PlanarLayout,
    element: ElementPattern,
    scenario: DeploymentScenario,
) -> FootprintGrid:
    """
    Relative received power on the ground grid of ``scenario``.

    Cells behind the array plane get the dB floor.

    Raises:
        FlatTopValidationError: W does not match the layout shape.
    """
    matrix = np.asarray(weights, dtype=np.complex128)
    if matrix.shape != layout.shape:
        raise FlatTopValidationError(
            "Weight matrix does not match the planar layout",
            field="weights",
            value=matrix.shape,
            expected=str(layout.shape),
        )

    x = scenario.x_centers
    y = scenario.y_centers
    gy, gx = np.meshgrid(y, x, indexing="ij")
    offset = np.stack([gx, gy, np.full_like(gx, -scenario.mount_height_m)], axis=-1)
    distance = np.linalg.norm(offset, axis=-1)
    direction = offset / distance[..., None]

    az_axis, el_axis, boresight = _array_frame(scenario.downtilt)
    u = direction @ az_axis
    v = direction @ el_axis
    cos_psi = direction @ boresight
    in_front = cos_psi > 0.0

    psi = np.arccos(np.clip(cos_psi, -1.0, 1.0))
    gain = np.where(in_front, element_gain(element, psi), 0.0)
    array_factor = np.abs(planar_response(matrix, u, v)) ** 2
    power = array_factor * gain / distance**2

    power_db = power_to_db(power)
    received = power > 0.0
    peak_row, peak_col = np.unravel_index(int(np.argmax(power)), power.shape)
    if np.any(received):
        power_db = np.where(received, power_db - power_db[peak_row, peak_col], DB_FLOOR)

    peak_distance = float(distance[peak_row, peak_col])
    fspl = free_space_path_loss_db(peak_distance, scenario.wavelength_m)
    logger.debug(
        "Footprint %dx%d: peak at (%.2f, %.2f) m, FSPL %.1f dB",
        x.size,
        y.size,
        x[peak_col],
        y[peak_row],
        fspl,
    )
    return FootprintGrid(x_m=x, y_m=y, power_db=power_db, scenario=scenario, peak_fspl_db=fspl)


def planar_design(
    combination: FootprintCombination,
    template: ArrayLike,
    optimized: ArrayLike,
) -> NDArray[np.complex128]:
    """
    W = w_el w_az^H for one of the footprint combinations.

    ``template`` is the step-2 (confined) linear weight vector and
    ``optimized`` the widened one; both serve either axis.
    """
    el, az = {
        FootprintCombination.CONFINED: (template, template),
        FootprintCombination.AZ_WIDENED: (template, optimized),
        FootprintCombination.EL_WIDENED: (optimized, template),
        FootprintCombination.BOTH_WIDENED: (optimized, optimized),
    }[combination]
    return planar_weights(el, az)


def footprint_extents(grid: FootprintGrid, level_db: float = -3.0) -> tuple[float, float]:
    """(x, y) extents in meters above peak + level_db, on the cuts through the peak cell."""
    row, col = grid.peak_index
    x_low, x_high = main_lobe_edges(grid.x_m, grid.power_db[row, :], level_db)
    y_low, y_high = main_lobe_edges(grid.y_m, grid.power_db[:, col], level_db)
    return x_high - x_low, y_high - y_low

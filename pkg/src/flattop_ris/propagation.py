"""
Friis-model AMAF-RIS coupling.

T[n, m] = sqrt(E_A(theta) E_R(phi)) * exp(-j pi r) / (2 pi r), with r in
half-wavelengths. Element patterns are power gains; the matrix builder
takes the square root of their product.
"""

from __future__ import annotations

import logging
import math
from typing import overload

import numpy as np
from numpy.typing import ArrayLike, NDArray

from flattop_ris.exceptions import FlatTopValidationError
from flattop_ris.geometry import ray_table
from flattop_ris.models.antenna import CouplingMatrix, ElementPattern
from flattop_ris.models.geometry import AmafRisLayout

logger = logging.getLogger(__name__)

_HALF_PI = math.pi / 2.0
# cos(pi/2) is 6e-17 in floating point; treat the hemisphere edge as exact
_EDGE_TOL = 1e-12


@overload
def element_gain(pattern: ElementPattern, psi: float) -> float: ...


@overload
def element_gain(pattern: ElementPattern, psi: NDArray[np.float64]) -> NDArray[np.float64]: ...


def element_gain(pattern: ElementPattern, psi: ArrayLike) -> float | NDArray[np.float64]:
    """
    Power gain at angle psi from the element boresight.

    Angles beyond pi/2 lie behind the element and get zero gain; negative
    angles are rejected.
    """
    angles = np.asarray(psi, dtype=np.float64)
    if np.any(angles < 0.0):
        raise FlatTopValidationError(
            "Element angle must be nonnegative",
            field="psi",
            value=float(np.min(angles)),
            expected=">= 0",
        )

    cosine = np.clip(np.cos(angles), 0.0, None)
    gain = pattern.peak_gain * cosine**pattern.exponent
    if pattern.exponent > 0.0:
        gain = np.where(angles >= _HALF_PI - _EDGE_TOL, 0.0, gain)
    else:
        gain = np.where(angles > _HALF_PI + _EDGE_TOL, 0.0, gain)

    if gain.ndim == 0:
        return float(gain)
    return gain


def coupling_matrix(
    layout: AmafRisLayout,
    amaf_pattern: ElementPattern,
    ris_pattern: ElementPattern,
) -> CouplingMatrix:
    """Build the N_p x N_a coupling matrix of the layout."""
    distance, angle = ray_table(layout)
    amplitude = np.sqrt(element_gain(amaf_pattern, angle) * element_gain(ris_pattern, angle))
    entries = amplitude * np.exp(-1j * np.pi * distance) / (2.0 * np.pi * distance)

    logger.debug(
        "Coupling matrix %dx%d built (F=%.3f, max |T|=%.5f)",
        layout.n_ris,
        layout.n_amaf,
        layout.focal_length,
        float(np.max(np.abs(entries))),
    )
    return CouplingMatrix(
        entries=entries,
        layout=layout,
        amaf_pattern=amaf_pattern,
        ris_pattern=ris_pattern,
    )

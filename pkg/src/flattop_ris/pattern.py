"""
Far-field patterns by array theory and pattern multiplication.

Linear arrays: P(theta) = |a(theta)^H w|^2 E(theta), where
a_k(theta) = conj(exp(-j pi k sin theta)) for half-wavelength spacing.

Planar arrays: the response is the bilinear form a_el^H W a_az evaluated in
sine space (u = sin az, v = sin el); for W = w_el w_az^H it factors into
(a_el^H w_el) * conj(a_az^H w_az).
"""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.signal import find_peaks

from flattop_ris.constants import (
    CAUCHY_SCHWARZ_SLACK,
    DB_FLOOR,
    MAIN_LOBE_LEVEL_DB,
    MIN_PASSBAND_SAMPLES,
    SIDELOBE_GUARD_DEG,
    Normalization,
)
from flattop_ris.exceptions import FlatTopNumericalError, FlatTopValidationError
from flattop_ris.models.antenna import ElementPattern
from flattop_ris.models.geometry import PlanarLayout
from flattop_ris.models.pattern import (
    AngularGrid,
    FlatTopMetrics,
    RadiationPattern,
    RadiationPattern2D,
)
from flattop_ris.models.profile import EffectiveWeights
from flattop_ris.propagation import element_gain

_HALF_PI = math.pi / 2.0


# =============================================================================
# Array Factor
# =============================================================================


def steering_vector(theta: float, n_elements: int) -> NDArray[np.complex128]:
    """a(theta), entry k = conj(exp(-j pi k sin theta))."""
    if abs(theta) > _HALF_PI + 1e-12:
        raise FlatTopValidationError(
            "Steering angle outside the visible region",
            field="theta",
            value=theta,
            expected="|theta| <= pi/2",
        )
    k = np.arange(n_elements, dtype=np.float64)
    return np.conj(np.exp(-1j * np.pi * k * math.sin(theta)))


def array_response(weights: ArrayLike, angles: ArrayLike) -> NDArray[np.complex128]:
    """a(theta)^H w for every angle."""
    w = np.asarray(weights, dtype=np.complex128)
    sines = np.sin(np.asarray(angles, dtype=np.float64))
    k = np.arange(w.size, dtype=np.float64)
    steering_h = np.exp(-1j * np.pi * np.multiply.outer(sines, k))
    return steering_h @ w


def planar_weights(w_el: ArrayLike, w_az: ArrayLike) -> NDArray[np.complex128]:
    """W = w_el w_az^H, rows along elevation and columns along azimuth."""
    return np.outer(np.asarray(w_el, dtype=np.complex128), np.conj(np.asarray(w_az, dtype=np.complex128)))


def planar_response(weights: ArrayLike, u: ArrayLike, v: ArrayLike) -> NDArray[np.complex128]:
    """
    a_el(v)^H W a_az(u) evaluated pointwise.

    u and v are paired direction sines of equal shape; the result has that
    shape.
    """
    matrix = np.asarray(weights, dtype=np.complex128)
    if matrix.ndim != 2:
        raise FlatTopValidationError(
            "Planar weights must be a matrix", field="weights", value=matrix.shape, expected="2D"
        )
    u_arr = np.asarray(u, dtype=np.float64)
    v_arr = np.asarray(v, dtype=np.float64)
    if u_arr.shape != v_arr.shape:
        raise FlatTopValidationError(
            "u and v must have the same shape",
            field="u",
            value=u_arr.shape,
            expected=str(v_arr.shape),
        )

    rows, cols = matrix.shape
    r = np.arange(rows, dtype=np.float64)
    c = np.arange(cols, dtype=np.float64)
    el_h = np.exp(-1j * np.pi * np.multiply.outer(v_arr.ravel(), r))
    az = np.exp(1j * np.pi * np.multiply.outer(u_arr.ravel(), c))
    response = np.einsum("pr,rc,pc->p", el_h, matrix, az)
    return response.reshape(u_arr.shape)


# =============================================================================
# Patterns
# =============================================================================


def power_to_db(power: ArrayLike) -> NDArray[np.float64]:
    """10 log10(power), with zero power mapped to the dB floor."""
    values = np.asarray(power, dtype=np.float64)
    positive = values > 0.0
    safe = np.where(positive, values, 1.0)
    return np.where(positive, np.maximum(10.0 * np.log10(safe), DB_FLOOR), DB_FLOOR)


def _normalize(power: NDArray[np.float64], normalization: Normalization) -> NDArray[np.float64]:
    power_db = power_to_db(power)
    if normalization is Normalization.PEAK and np.any(power > 0.0):
        visible = power > 0.0
        power_db = np.where(visible, power_db - power_db[visible].max(), DB_FLOOR)
    return power_db


def _check_peak_bound(peak: float, bound: float) -> None:
    if peak > bound * (1.0 + CAUCHY_SCHWARZ_SLACK) + 1e-300:
        raise FlatTopNumericalError(
            "Array factor exceeds the Cauchy-Schwarz bound",
            quantity="array_factor_peak",
            value=peak,
        )


def linear_pattern(
    weights: EffectiveWeights | ArrayLike,
    grid: AngularGrid,
    element: ElementPattern | None = None,
    normalization: Normalization = Normalization.PEAK,
) -> RadiationPattern:
    """
    |a^H w|^2 E(theta) over the grid, in dB.

    Raises:
        FlatTopNumericalError: the array factor exceeds N ||w||^2.
    """
    w = weights.weights if isinstance(weights, EffectiveWeights) else np.asarray(weights, dtype=np.complex128)
    element = element or ElementPattern.patch()

    array_factor = np.abs(array_response(w, grid.angles)) ** 2
    _check_peak_bound(float(array_factor.max()), w.size * float(np.vdot(w, w).real))

    power = array_factor * element_gain(element, np.abs(grid.angles))
    return RadiationPattern(grid=grid, power_db=_normalize(power, normalization), normalization=normalization)


def planar_pattern(
    weights: ArrayLike,
    az_grid: AngularGrid,
    el_grid: AngularGrid,
    element: ElementPattern | None = None,
    normalization: Normalization = Normalization.PEAK,
    layout: PlanarLayout | None = None,
) -> RadiationPattern2D:
    """
    |a_el^H W a_az|^2 E over a sine-space (el, az) grid.

    Raises:
        FlatTopValidationError: W does not match the layout shape.
        FlatTopNumericalError: the array factor exceeds its Cauchy-Schwarz
            bound.
    """
    matrix = np.asarray(weights, dtype=np.complex128)
    if layout is not None and matrix.shape != layout.shape:
        raise FlatTopValidationError(
            "Weight matrix does not match the planar layout",
            field="weights",
            value=matrix.shape,
            expected=str(layout.shape),
        )
    element = element or ElementPattern.patch()

    v, u = np.meshgrid(np.sin(el_grid.angles), np.sin(az_grid.angles), indexing="ij")
    array_factor = np.abs(planar_response(matrix, u, v)) ** 2
    _check_peak_bound(float(array_factor.max()), matrix.size * float(np.sum(np.abs(matrix) ** 2)))

    radial = u**2 + v**2
    visible = radial <= 1.0
    psi = np.arccos(np.sqrt(np.clip(1.0 - radial, 0.0, 1.0)))
    gain = np.where(visible, element_gain(element, psi), 0.0)

    return RadiationPattern2D(
        az=az_grid,
        el=el_grid,
        power_db=_normalize(array_factor * gain, normalization),
        normalization=normalization,
    )


# =============================================================================
# Metrics
# =============================================================================


def main_lobe_edges(
    angles: ArrayLike, power_db: ArrayLike, level_db: float = -3.0
) -> tuple[float, float]:
    """First and last angle whose power is within |level_db| of the peak."""
    theta = np.asarray(angles, dtype=np.float64)
    values = np.asarray(power_db, dtype=np.float64)
    above = np.flatnonzero(values >= values.max() + level_db)
    return float(theta[above[0]]), float(theta[above[-1]])


def beam_extent_deg(pattern: RadiationPattern, level_db: float = -3.0) -> float:
    """Outer angular span above peak + level_db, in degrees."""
    low, high = main_lobe_edges(pattern.angles, pattern.power_db, level_db)
    return math.degrees(high - low)


def main_lobe_width_deg(pattern: RadiationPattern, level_db: float = MAIN_LOBE_LEVEL_DB) -> float:
    """
    Shaped main-lobe width in degrees.

    Measured at -10 dB by default: a flattened lobe can keep a central peak
    whose half-power span is narrower than the shoulders around it.
    """
    return beam_extent_deg(pattern, level_db)


def planar_beam_extents(pattern: RadiationPattern2D, level_db: float = -3.0) -> tuple[float, float]:
    """(az, el) extents in degrees on the principal cuts through the peak."""
    row, col = pattern.peak_index
    az_low, az_high = main_lobe_edges(pattern.az.angles, pattern.power_db[row, :], level_db)
    el_low, el_high = main_lobe_edges(pattern.el.angles, pattern.power_db[:, col], level_db)
    return math.degrees(az_high - az_low), math.degrees(el_high - el_low)


def flat_top_metrics(
    pattern: RadiationPattern,
    passband: tuple[float, float],
    guard_deg: float = SIDELOBE_GUARD_DEG,
) -> FlatTopMetrics:
    """
    Ripple, sidelobe level and transition width over a passband (radians).

    Sidelobes are the local maxima more than ``guard_deg`` outside the
    passband. The transition width is the larger of the two distances from
    a passband edge to the first sample below (passband min - 10 dB).

    Raises:
        FlatTopValidationError: empty or out-of-grid passband, or fewer
            than 10 samples inside it.
    """
    low, high = passband
    theta = pattern.angles
    if not low < high:
        raise FlatTopValidationError(
            "Passband must have positive width", field="passband", value=passband, expected="low < high"
        )
    if low < theta[0] - 1e-12 or high > theta[-1] + 1e-12:
        raise FlatTopValidationError(
            "Passband outside the pattern grid",
            field="passband",
            value=passband,
            expected=f"within [{theta[0]:.6g}, {theta[-1]:.6g}]",
        )

    inside = (theta >= low - 1e-12) & (theta <= high + 1e-12)
    count = int(inside.sum())
    if count < MIN_PASSBAND_SAMPLES:
        raise FlatTopValidationError(
            "Too few grid samples in the passband",
            field="passband",
            value=count,
            expected=f">= {MIN_PASSBAND_SAMPLES}",
        )

    power = pattern.power_db
    band = power[inside]
    mean = float(band.mean())
    ripple = float(band.max() - band.min())

    guard = math.radians(guard_deg)
    peaks, _ = find_peaks(power)
    outside = peaks[(theta[peaks] < low - guard) | (theta[peaks] > high + guard)]
    sidelobe = float(power[outside].max()) - mean if outside.size else None

    floor = float(band.min()) - 10.0
    first_in, last_in = np.flatnonzero(inside)[[0, -1]]
    right = np.flatnonzero(power[last_in:] < floor)
    right_width = theta[last_in + right[0]] - high if right.size else theta[-1] - high
    left = np.flatnonzero(power[: first_in + 1][::-1] < floor)
    left_width = low - theta[first_in - left[0]] if left.size else low - theta[0]

    return FlatTopMetrics(
        passband_ripple_db=ripple,
        max_sidelobe_db=sidelobe,
        transition_width_deg=max(math.degrees(max(right_width, left_width)), 0.0),
        passband_mean_db=mean,
        passband_samples=count,
    )

"""
Element positions and feed-to-surface ray geometry.

Coordinate frame: the RIS spans x (azimuth) and y (elevation) in the plane
z=0 with boresight +z; the AMAF sits in the plane z=-F. All lengths are in
half-wavelength units, so distances enter the coupling model unscaled.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from flattop_ris.exceptions import FlatTopValidationError
from flattop_ris.models.geometry import (
    AmafRisLayout,
    Layout,
    LinearLayout,
    PlanarLayout,
    RayGeometry,
)


def element_positions(layout: LinearLayout) -> NDArray[np.float64]:
    """
    Centered 1D coordinates of a linear layout.

    Returns spacing * (i - (n - 1) / 2) for i = 0..n-1.
    """
    index = np.arange(layout.n_elements, dtype=np.float64)
    return layout.spacing * (index - (layout.n_elements - 1) / 2.0)


def planar_positions(layout: PlanarLayout) -> NDArray[np.float64]:
    """(N, 2) array of (x, y) per element, row-major over (row, col)."""
    y = element_positions(layout.rows)
    x = element_positions(layout.cols)
    yy, xx = np.meshgrid(y, x, indexing="ij")
    return np.column_stack([xx.ravel(), yy.ravel()])


def _lateral_positions(layout: Layout) -> NDArray[np.float64]:
    if isinstance(layout, PlanarLayout):
        return planar_positions(layout)
    x = element_positions(layout)
    return np.column_stack([x, np.zeros_like(x)])


def ris_coordinates(layout: AmafRisLayout) -> NDArray[np.float64]:
    """(N_p, 3) RIS element coordinates in the plane z=0."""
    xy = _lateral_positions(layout.ris)
    return np.column_stack([xy, np.zeros(len(xy))])


def amaf_coordinates(layout: AmafRisLayout) -> NDArray[np.float64]:
    """(N_a, 3) AMAF element coordinates in the plane z=-F."""
    xy = _lateral_positions(layout.amaf)
    return np.column_stack([xy, np.full(len(xy), -layout.focal_length)])


def f_over_d(layout: AmafRisLayout) -> float:
    """Focal length over RIS aperture size."""
    aperture = layout.ris.aperture
    if aperture <= 0.0:
        raise FlatTopValidationError(
            "RIS aperture must be positive",
            field="ris",
            value=aperture,
            expected="> 0",
        )
    return layout.focal_length / aperture


def ray_table(layout: AmafRisLayout) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Distances and angles for every (RIS n, AMAF m) pair.

    Returns (r, angle), each of shape (N_p, N_a). With parallel planes the
    departure and arrival angles coincide, so a single angle array is
    returned: atan2(lateral offset, F).
    """
    ris = ris_coordinates(layout)
    amaf = amaf_coordinates(layout)
    offset = ris[:, None, :2] - amaf[None, :, :2]
    lateral = np.hypot(offset[..., 0], offset[..., 1])
    distance = np.hypot(lateral, layout.focal_length)
    angle = np.arctan2(lateral, layout.focal_length)
    return distance, angle


def ray_geometry(layout: AmafRisLayout, m: int, n: int) -> RayGeometry:
    """Ray from AMAF element m to RIS element n."""
    if not 0 <= m < layout.n_amaf:
        raise FlatTopValidationError(
            "AMAF index out of range", field="m", value=m, expected=f"0..{layout.n_amaf - 1}"
        )
    if not 0 <= n < layout.n_ris:
        raise FlatTopValidationError(
            "RIS index out of range", field="n", value=n, expected=f"0..{layout.n_ris - 1}"
        )

    ris = ris_coordinates(layout)[n]
    amaf = amaf_coordinates(layout)[m]
    lateral = float(np.hypot(ris[0] - amaf[0], ris[1] - amaf[1]))
    angle = float(np.arctan2(lateral, layout.focal_length))
    return RayGeometry(
        distance=float(np.hypot(lateral, layout.focal_length)),
        departure_angle=angle,
        arrival_angle=angle,
    )


def central_indices(layout: Layout) -> NDArray[np.intp]:
    """Indices of the elements nearest the array center."""
    xy = _lateral_positions(layout)
    radius = np.hypot(xy[:, 0], xy[:, 1])
    return np.flatnonzero(np.isclose(radius, radius.min(), rtol=0.0, atol=1e-9))

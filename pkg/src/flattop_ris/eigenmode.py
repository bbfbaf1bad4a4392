"""
Principal eigenmode of the AMAF-RIS coupling matrix.

Feeding the AMAF with v1 maximizes the power transferred to the surface and
imprints the amplitude taper |u1| on the RIS aperture. The co-phasing vector
removes the phase of u1 so that phase-only shaping starts from a real,
nonnegative aperture distribution.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable

import numpy as np
from scipy import linalg

from flattop_ris.constants import SIGMA_FLOOR, SVD_RESIDUAL_TOL
from flattop_ris.exceptions import FlatTopNumericalError
from flattop_ris.geometry import central_indices, f_over_d
from flattop_ris.models.antenna import CouplingMatrix, ElementPattern
from flattop_ris.models.eigenmode import CophaseVector, PrincipalEigenmode, TaperPoint
from flattop_ris.models.geometry import AmafRisLayout
from flattop_ris.propagation import coupling_matrix

logger = logging.getLogger(__name__)


def principal_eigenmode(coupling: CouplingMatrix) -> PrincipalEigenmode:
    """
    Largest singular triple of T with a fixed global phase.

    (u1, v1) are rotated jointly so that sum(v1) is real positive. If that
    sum vanishes, the rotation makes the mean of u1 over the central
    elements real positive instead.

    Raises:
        FlatTopNumericalError: sigma1 is numerically zero or the SVD
            residual exceeds 1e-10 * sigma1.
    """
    entries = coupling.entries
    u, s, vh = linalg.svd(entries, full_matrices=False, lapack_driver="gesdd")
    sigma1 = float(s[0])
    if sigma1 <= SIGMA_FLOOR:
        raise FlatTopNumericalError(
            "Principal singular value is numerically zero (degenerate geometry)",
            quantity="sigma1",
            value=sigma1,
        )

    u1 = u[:, 0]
    v1 = vh[0].conj()

    v_sum = v1.sum()
    if abs(v_sum) > 1e-12:
        rotation = np.conj(v_sum) / abs(v_sum)
    else:
        central = u1[central_indices(coupling.layout.ris)].mean()
        rotation = np.conj(central) / abs(central) if abs(central) > 0.0 else 1.0 + 0.0j
    u1 = u1 * rotation
    v1 = v1 * rotation

    residual = float(np.linalg.norm(entries @ v1 - sigma1 * u1))
    if residual > SVD_RESIDUAL_TOL * sigma1:
        raise FlatTopNumericalError(
            "SVD residual exceeds tolerance",
            quantity="residual",
            value=residual,
        )

    logger.debug("Principal eigenmode: sigma1=%.6g, |v1|=%s", sigma1, np.round(np.abs(v1), 6))
    return PrincipalEigenmode(sigma1=sigma1, u1=u1, v1=v1, singular_values=s)


def cophase_vector(eigenmode: PrincipalEigenmode) -> CophaseVector:
    """
    w(n) = exp(-j angle(u1(n))), so that w * u1 = |u1|.

    Where u1 is exactly zero the phase is undefined; those entries are set
    to 1, logged, and listed in ``zero_indices``.
    """
    u1 = eigenmode.u1
    zero = np.flatnonzero(u1 == 0)
    values = np.exp(-1j * np.angle(u1))
    if zero.size:
        values[zero] = 1.0
        logger.warning(
            "u1 vanishes at %d element(s) %s; co-phasing set to 1 there",
            zero.size,
            zero.tolist(),
        )
    return CophaseVector(values=values, zero_indices=tuple(int(i) for i in zero))


def taper_sweep(
    layout: AmafRisLayout,
    focal_lengths: Iterable[float],
    amaf_pattern: ElementPattern,
    ris_pattern: ElementPattern,
) -> list[TaperPoint]:
    """
    Edge taper of |u1| across focal lengths.

    Supports the choice of F/D: a larger F flattens the taper, a smaller F
    concentrates the aperture illumination toward the center.
    """
    points: list[TaperPoint] = []
    for focal_length in focal_lengths:
        variant = AmafRisLayout(
            ris=layout.ris, amaf=layout.amaf, focal_length=float(focal_length)
        )
        eigenmode = principal_eigenmode(coupling_matrix(variant, amaf_pattern, ris_pattern))
        magnitude = eigenmode.u1_magnitude
        edge_taper = 20.0 * np.log10(magnitude[0] / magnitude.max())
        points.append(
            TaperPoint(
                focal_length=float(focal_length),
                f_over_d=f_over_d(variant),
                edge_taper_db=float(edge_taper),
                sigma1=eigenmode.sigma1,
            )
        )
    return points

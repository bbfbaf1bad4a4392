"""
Pragmatic flat-top phase template.

The template is built in three pieces and multiplied entrywise:

    w = w_ppf * w_binary * w_cophase

w_binary flips symmetric element groups by pi to split and flatten the main
lobe; w_ppf adds a symmetric phase ramp that widens it; w_cophase removes the
phase of u1 so that the aperture starts from the real taper |u1|.
"""

from __future__ import annotations

import logging

import numpy as np
from numpy.typing import NDArray

from flattop_ris.constants import DEFAULT_PPF_EXPONENT, DEFAULT_PPF_SCALE, Provenance
from flattop_ris.eigenmode import cophase_vector
from flattop_ris.exceptions import FlatTopValidationError
from flattop_ris.models.eigenmode import CophaseVector, PrincipalEigenmode
from flattop_ris.models.profile import (
    BinaryGrouping,
    EffectiveWeights,
    PhaseProfile,
    TemplateSet,
)

logger = logging.getLogger(__name__)


def binary_vector(grouping: BinaryGrouping) -> PhaseProfile:
    """
    +1 outside the pi-ranges, -1 inside.

    Raises:
        FlatTopValidationError: the grouping is not symmetric about the
            array center.
    """
    if not grouping.is_symmetric:
        raise FlatTopValidationError(
            "Binary grouping must be symmetric about the array center",
            field="pi_ranges",
            value=grouping.pi_ranges,
            expected="ranges mirrored about (N-1)/2",
        )
    values = np.where(grouping.mask, -1.0, 1.0).astype(np.complex128)
    return PhaseProfile(values=values, provenance=Provenance.BINARY)


def _check_ppf_inputs(n_elements: int, c: float, p: float) -> None:
    if n_elements < 2:
        raise FlatTopValidationError(
            "PPF needs at least two elements", field="n_elements", value=n_elements, expected=">= 2"
        )
    if c < 0.0:
        raise FlatTopValidationError("PPF scale must be nonnegative", field="c", value=c, expected=">= 0")
    if p <= 0.0:
        raise FlatTopValidationError("PPF exponent must be positive", field="p", value=p, expected="> 0")


def ppf_values(
    n_elements: int,
    c: float = DEFAULT_PPF_SCALE,
    p: float = DEFAULT_PPF_EXPONENT,
) -> NDArray[np.float64]:
    """
    Phase perturbation f(n) for every element, in radians.

    x(n) = (n - (N-1)/2) / (N-1) runs from -0.5 to 0.5, and
    f(n) = |4 pi c sign(x) |x|^p| = 4 pi c |x|^p, symmetric about the center.
    """
    _check_ppf_inputs(n_elements, c, p)
    index = np.arange(n_elements, dtype=np.float64)
    x = 0.5 / (n_elements - 1) + (index - 0.5 * n_elements) / (n_elements - 1)
    signed = np.sign(x) * np.abs(x) ** p
    return np.abs(4.0 * np.pi * c * signed)


def ppf_value(
    n: int,
    n_elements: int,
    c: float = DEFAULT_PPF_SCALE,
    p: float = DEFAULT_PPF_EXPONENT,
) -> float:
    """Phase perturbation of element n."""
    if not 0 <= n < n_elements:
        raise FlatTopValidationError(
            "Element index out of range", field="n", value=n, expected=f"0..{n_elements - 1}"
        )
    return float(ppf_values(n_elements, c, p)[n])


def widening_vector(
    n_elements: int,
    c: float = DEFAULT_PPF_SCALE,
    p: float = DEFAULT_PPF_EXPONENT,
) -> PhaseProfile:
    """Beam broadening vector exp(j f(n))."""
    return PhaseProfile(
        values=np.exp(1j * ppf_values(n_elements, c, p)),
        provenance=Provenance.PPF,
    )


def _as_profile(vector: CophaseVector | PhaseProfile) -> PhaseProfile:
    if isinstance(vector, PhaseProfile):
        return vector
    return PhaseProfile(values=vector.values, provenance=Provenance.COPHASE)


def compose_template(
    cophase: CophaseVector | PhaseProfile,
    binary: PhaseProfile,
    ppf: PhaseProfile,
) -> PhaseProfile:
    """
    Entrywise product ppf * binary * cophase.

    Raises:
        FlatTopValidationError: the three vectors differ in length.
    """
    profiles = [_as_profile(cophase), binary, ppf]
    lengths = {profile.n_elements for profile in profiles}
    if len(lengths) != 1:
        raise FlatTopValidationError(
            "Template vectors must have equal length",
            field="length",
            value=sorted(lengths),
            expected="a single length",
        )

    values = profiles[0].values * profiles[1].values * profiles[2].values
    # Keep the product on the unit circle after repeated rounding
    values = values / np.abs(values)
    return PhaseProfile(values=values, provenance=Provenance.COMPOSED)


def effective_weights(
    phase: PhaseProfile,
    eigenmode: PrincipalEigenmode,
    includes_cophase: bool = True,
) -> EffectiveWeights:
    """
    Aperture weights seen by the far field.

    With ``includes_cophase`` the profile already carries the co-phasing
    vector and multiplies u1; otherwise it multiplies the taper |u1|. Both
    give the same weights for the same shaping phases.
    """
    if phase.n_elements != eigenmode.n_ris:
        raise FlatTopValidationError(
            "Phase profile length does not match the eigenmode",
            field="phase",
            value=phase.n_elements,
            expected=str(eigenmode.n_ris),
        )
    base = eigenmode.u1 if includes_cophase else eigenmode.u1_magnitude
    return EffectiveWeights(weights=phase.values * base)


def pragmatic_template(
    eigenmode: PrincipalEigenmode,
    grouping: BinaryGrouping,
    c: float = DEFAULT_PPF_SCALE,
    p: float = DEFAULT_PPF_EXPONENT,
) -> TemplateSet:
    """Binary, widening and co-phasing vectors plus the step-2 and step-3 compositions."""
    if grouping.n_elements != eigenmode.n_ris:
        raise FlatTopValidationError(
            "Grouping size does not match the eigenmode",
            field="n_elements",
            value=grouping.n_elements,
            expected=str(eigenmode.n_ris),
        )

    cophase = _as_profile(cophase_vector(eigenmode))
    binary = binary_vector(grouping)
    ppf = widening_vector(grouping.n_elements, c, p)
    step2 = compose_template(cophase, binary, PhaseProfile.ones(grouping.n_elements, Provenance.PPF))
    step3 = compose_template(cophase, binary, ppf)

    logger.debug(
        "Template built: %d pi-elements, c=%.3g, p=%.3g",
        int(grouping.mask.sum()),
        c,
        p,
    )
    return TemplateSet(binary=binary, ppf=ppf, cophase=cophase, step2=step2, step3=step3)

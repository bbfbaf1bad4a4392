"""
Phase profile and aperture weight models.
"""

from __future__ import annotations

import math
from typing import Self

import numpy as np
from numpy.typing import NDArray
from pydantic import Field, model_validator

from flattop_ris.constants import DEFAULT_LEAD_FRACTION, UNIT_MODULUS_TOL, Provenance
from flattop_ris.models.base import ComplexVector, FlatTopModel


def _nearest_int(value: float) -> int:
    # Half-up rounding; Python's round() rounds halves to even
    return int(math.floor(value + 0.5))


class PhaseProfile(FlatTopModel):
    """Unit-modulus phase vector applied by the RIS, tagged with its origin."""

    values: ComplexVector
    provenance: Provenance = Provenance.COMPOSED

    @model_validator(mode="after")
    def _check_unit_modulus(self) -> Self:
        if np.any(np.abs(np.abs(self.values) - 1.0) > UNIT_MODULUS_TOL):
            raise ValueError("phase profile entries must have unit modulus")
        return self

    @property
    def n_elements(self) -> int:
        return len(self.values)

    @property
    def phases(self) -> NDArray[np.float64]:
        """Phases in radians, wrapped to (-pi, pi]."""
        return np.angle(self.values)

    @classmethod
    def from_phases(cls, phases: NDArray[np.float64], provenance: Provenance) -> Self:
        return cls(values=np.exp(1j * np.asarray(phases, dtype=np.float64)), provenance=provenance)

    @classmethod
    def ones(cls, n_elements: int, provenance: Provenance = Provenance.COMPOSED) -> Self:
        return cls(values=np.ones(n_elements, dtype=np.complex128), provenance=provenance)


class BinaryGrouping(FlatTopModel):
    """
    Contiguous element groups carrying phase pi.

    Ranges are inclusive (start, stop) index pairs, disjoint and within
    [0, n_elements). Symmetry about the array center is checked when settings
    load and again where the binary vector is built.
    """

    n_elements: int = Field(..., ge=1)
    pi_ranges: tuple[tuple[int, int], ...] = ()

    @model_validator(mode="after")
    def _check_ranges(self) -> Self:
        ordered = sorted(self.pi_ranges)
        for start, stop in ordered:
            if not 0 <= start <= stop < self.n_elements:
                raise ValueError(f"range ({start}, {stop}) outside [0, {self.n_elements})")
        for (_, prev_stop), (next_start, _) in zip(ordered, ordered[1:], strict=False):
            if next_start <= prev_stop:
                raise ValueError("pi ranges must be disjoint")
        return self

    @property
    def mask(self) -> NDArray[np.bool_]:
        """True where the element carries phase pi."""
        flags = np.zeros(self.n_elements, dtype=bool)
        for start, stop in self.pi_ranges:
            flags[start : stop + 1] = True
        return flags

    @property
    def is_symmetric(self) -> bool:
        flags = self.mask
        return bool(np.array_equal(flags, flags[::-1]))

    @classmethod
    def from_fraction(
        cls,
        n_elements: int,
        fraction: float,
        lead_fraction: float = DEFAULT_LEAD_FRACTION,
    ) -> Self:
        """
        Two symmetric interior groups of round(fraction * N) elements.

        Each group starts round(lead_fraction * N) elements in from its edge,
        which reproduces the 6-7-14-7-6 layout for N=40, fraction=0.175.
        """
        size = _nearest_int(fraction * n_elements)
        lead = _nearest_int(lead_fraction * n_elements)
        if size <= 0:
            return cls(n_elements=n_elements)
        if 2 * (lead + size) > n_elements:
            raise ValueError(
                f"groups of {size} after a lead of {lead} do not fit in {n_elements} elements"
            )
        left = (lead, lead + size - 1)
        right = (n_elements - lead - size, n_elements - lead - 1)
        return cls(n_elements=n_elements, pi_ranges=(left, right))


class EffectiveWeights(FlatTopModel):
    """Aperture weights: phase profile applied to the eigenmode taper."""

    weights: ComplexVector

    @property
    def modulus(self) -> NDArray[np.float64]:
        return np.abs(self.weights)

    @property
    def n_elements(self) -> int:
        return len(self.weights)


class TemplateSet(FlatTopModel):
    """Intermediate and final vectors of the pragmatic template."""

    binary: PhaseProfile
    ppf: PhaseProfile
    cophase: PhaseProfile
    step2: PhaseProfile = Field(..., description="binary * cophase")
    step3: PhaseProfile = Field(..., description="ppf * binary * cophase")

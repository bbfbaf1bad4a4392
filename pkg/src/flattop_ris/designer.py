"""
High-Level Flat-Top Designer.

This module provides the FlatTopDesigner class, the primary entry point for
running the design flow from a configuration: eigenmode, template, phase
optimization, planar patterns, ground footprints and the DC power budget.

Intermediate results are computed on first use and cached on the instance.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from functools import cached_property

import numpy as np
from numpy.typing import NDArray

from flattop_ris.constants import FootprintCombination, Provenance
from flattop_ris.eigenmode import cophase_vector, principal_eigenmode, taper_sweep
from flattop_ris.energy import compare_architectures
from flattop_ris.footprint import ground_footprint, planar_design
from flattop_ris.geometry import f_over_d
from flattop_ris.models.antenna import CouplingMatrix
from flattop_ris.models.eigenmode import PrincipalEigenmode, TaperPoint
from flattop_ris.models.energy import EnergyComparison
from flattop_ris.models.footprint import FootprintGrid
from flattop_ris.models.geometry import AmafRisLayout, PlanarLayout
from flattop_ris.models.optimization import GridSensitivityReport, OptimizationReport
from flattop_ris.models.pattern import AngularGrid, RadiationPattern, RadiationPattern2D
from flattop_ris.models.profile import BinaryGrouping, EffectiveWeights, PhaseProfile, TemplateSet
from flattop_ris.optimizer import grid_sensitivity_experiment, optimize_phases
from flattop_ris.pattern import linear_pattern, planar_pattern
from flattop_ris.propagation import coupling_matrix
from flattop_ris.settings import FlatTopSettings, get_settings
from flattop_ris.shaping import compose_template, effective_weights, pragmatic_template

logger = logging.getLogger(__name__)


class FlatTopDesigner:
    """
    Flat-top beam design flow for one configuration.

    Usage:
        designer = FlatTopDesigner.from_settings(load_settings("run.yaml"))
        report = designer.optimize("wide")
        grid = designer.footprint()
    """

    def __init__(self, settings: FlatTopSettings) -> None:
        self.settings = settings
        self._reports: dict[str, OptimizationReport] = {}

    @classmethod
    def from_settings(cls, settings: FlatTopSettings | None = None) -> FlatTopDesigner:
        """Create a designer from settings (defaults to the global settings)."""
        return cls(settings if settings is not None else get_settings())

    # =========================================================================
    # Eigenmode
    # =========================================================================

    @cached_property
    def layout(self) -> AmafRisLayout:
        return self.settings.layout.linear()

    @cached_property
    def planar_layout(self) -> AmafRisLayout:
        return self.settings.layout.planar()

    @cached_property
    def coupling(self) -> CouplingMatrix:
        elements = self.settings.elements
        return coupling_matrix(self.layout, elements.amaf, elements.ris)

    @cached_property
    def eigenmode(self) -> PrincipalEigenmode:
        eigenmode = principal_eigenmode(self.coupling)
        logger.info(
            "Eigenmode: N_p=%d, N_a=%d, F/D=%.3f, sigma1=%.5g",
            self.layout.n_ris,
            self.layout.n_amaf,
            f_over_d(self.layout),
            eigenmode.sigma1,
        )
        return eigenmode

    @cached_property
    def planar_eigenmode(self) -> PrincipalEigenmode:
        elements = self.settings.elements
        return principal_eigenmode(coupling_matrix(self.planar_layout, elements.amaf, elements.ris))

    def taper_sweep(self, focal_lengths: Iterable[float]) -> list[TaperPoint]:
        elements = self.settings.elements
        return taper_sweep(self.layout, focal_lengths, elements.amaf, elements.ris)

    # =========================================================================
    # Template
    # =========================================================================

    @cached_property
    def grouping(self) -> BinaryGrouping:
        return self.settings.template.grouping(self.layout.n_ris)

    @cached_property
    def templates(self) -> TemplateSet:
        template = self.settings.template
        return pragmatic_template(self.eigenmode, self.grouping, template.c, template.p)

    @cached_property
    def cophase(self) -> PhaseProfile:
        return PhaseProfile(values=cophase_vector(self.eigenmode).values, provenance=Provenance.COPHASE)

    @cached_property
    def shaping_start(self) -> PhaseProfile:
        """ppf * binary: the template without co-phasing, acting on |u1|."""
        ones = PhaseProfile.ones(self.layout.n_ris, Provenance.COPHASE)
        return compose_template(ones, self.templates.binary, self.templates.ppf)

    def weights(self, profile: PhaseProfile) -> EffectiveWeights:
        """Aperture weights of a full RIS configuration (co-phasing included)."""
        return effective_weights(profile, self.eigenmode, includes_cophase=True)

    @cached_property
    def pencil_weights(self) -> EffectiveWeights:
        return self.weights(self.cophase)

    @cached_property
    def step2_weights(self) -> EffectiveWeights:
        return self.weights(self.templates.step2)

    @cached_property
    def step3_weights(self) -> EffectiveWeights:
        return self.weights(self.templates.step3)

    # =========================================================================
    # Patterns
    # =========================================================================

    @cached_property
    def pattern_grid(self) -> AngularGrid:
        return AngularGrid.uniform(self.settings.pattern.points)

    def linear_pattern(self, weights: EffectiveWeights | NDArray[np.complex128]) -> RadiationPattern:
        return linear_pattern(
            weights,
            self.pattern_grid,
            self.settings.elements.ris,
            self.settings.pattern.normalization,
        )

    def planar_weights(self, combination: FootprintCombination | None = None) -> NDArray[np.complex128]:
        """W for a footprint combination, widened with the configured spec."""
        combination = combination or self.settings.footprint.combination
        template = self.step2_weights.weights
        if combination is FootprintCombination.CONFINED:
            return planar_design(combination, template, template)
        widened = self.optimized_weights(self.settings.footprint.widened_spec)
        return planar_design(combination, template, widened.weights)

    def planar_pattern(self, combination: FootprintCombination | None = None) -> RadiationPattern2D:
        grid = AngularGrid.uniform(self.settings.pattern.planar_points)
        return planar_pattern(
            self.planar_weights(combination),
            grid,
            grid,
            self.settings.elements.ris,
            self.settings.pattern.normalization,
            layout=self.footprint_layout,
        )

    # =========================================================================
    # Optimization
    # =========================================================================

    def optimize(self, spec_name: str) -> OptimizationReport:
        """Optimized shaping phases for a named spec, starting from the template."""
        if spec_name not in self._reports:
            self._reports[spec_name] = optimize_phases(
                self.eigenmode.u1_magnitude,
                self.shaping_start,
                self.settings.optimization.spec(spec_name),
                self.settings.optimization.solver,
                self.settings.elements.ris,
            )
        return self._reports[spec_name]

    def optimized_profile(self, spec_name: str) -> PhaseProfile:
        """Full RIS configuration: optimized shaping phases times co-phasing."""
        shaping = self.optimize(spec_name).phases
        return PhaseProfile(values=shaping.values * self.cophase.values, provenance=Provenance.OPTIMIZED)

    def optimized_weights(self, spec_name: str) -> EffectiveWeights:
        return self.weights(self.optimized_profile(spec_name))

    @cached_property
    def grid_sensitivity(self) -> GridSensitivityReport:
        optimization = self.settings.optimization
        return grid_sensitivity_experiment(
            self.eigenmode.u1_magnitude,
            self.shaping_start,
            optimization.spec(optimization.sensitivity_spec),
            optimization.solver,
            optimization.sensitivity_grid_points,
            self.settings.elements.ris,
        )

    # =========================================================================
    # Footprint and Energy
    # =========================================================================

    @cached_property
    def footprint_layout(self) -> PlanarLayout:
        return PlanarLayout.square(self.layout.n_ris, self.layout.ris.spacing)

    def footprint(self, combination: FootprintCombination | None = None) -> FootprintGrid:
        return ground_footprint(
            self.planar_weights(combination),
            self.footprint_layout,
            self.settings.elements.ris,
            self.settings.footprint.scenario(),
        )

    def energy(self, use_eigenmode: bool = False) -> EnergyComparison:
        """
        DC power comparison.

        With ``use_eigenmode`` the AMAF feed is v1 of the planar layout;
        otherwise the configured feed vector is used and no SVD runs.
        """
        energy = self.settings.energy
        v1 = self.planar_eigenmode.v1 if use_eigenmode else np.asarray(energy.amaf_v1)
        return compare_architectures(v1, energy.active_elements, energy.budget)

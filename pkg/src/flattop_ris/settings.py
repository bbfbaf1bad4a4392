"""
flattop-ris Settings and Configuration.

This module provides configuration management using pydantic-settings.
A run is described by one YAML document; environment variables with the
FLATTOP_ prefix fill in whatever the document leaves out.

Example document:

    layout:
      n_ris: 40
      n_amaf: 2
      focal_length: 9.4   # required whenever the layout section is given
    template:
      pi_ranges: [[6, 12], [27, 33]]
      c: 2.0
      p: 1.0
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Any, Self

import yaml
from pydantic import Field, ValidationError, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict, YamlConfigSettingsSource

from flattop_ris.constants import (
    DEFAULT_ACTIVE_ELEMENTS,
    DEFAULT_AIM_DISTANCE_M,
    DEFAULT_AMAF_ELEMENTS,
    DEFAULT_AMAF_V1,
    DEFAULT_FOCAL_LENGTH,
    DEFAULT_FOOTPRINT_RESOLUTION_M,
    DEFAULT_LEAD_FRACTION,
    DEFAULT_MOUNT_HEIGHT_M,
    DEFAULT_PATTERN_POINTS,
    DEFAULT_PI_RANGES,
    DEFAULT_PLANAR_POINTS,
    DEFAULT_PPF_EXPONENT,
    DEFAULT_PPF_SCALE,
    DEFAULT_RIS_ELEMENTS,
    DEFAULT_SPACING,
    DEFAULT_WAVELENGTH_M,
    SCENARIO_PROVENANCE,
    FootprintCombination,
    Normalization,
)
from flattop_ris.exceptions import FlatTopConfigurationError
from flattop_ris.models.antenna import ElementPattern
from flattop_ris.models.base import FlatTopModel
from flattop_ris.models.energy import PowerBudget
from flattop_ris.models.footprint import DeploymentScenario, Extent
from flattop_ris.models.geometry import AmafRisLayout
from flattop_ris.models.optimization import FlatTopSpec, Interval, OptimizerConfig
from flattop_ris.models.profile import BinaryGrouping


# =============================================================================
# Sections
# =============================================================================


class LayoutSection(FlatTopModel):
    """Linear design layout; the planar layout squares both arrays."""

    n_ris: int = Field(default=DEFAULT_RIS_ELEMENTS, ge=1)
    n_amaf: int = Field(default=DEFAULT_AMAF_ELEMENTS, ge=1)
    planar_n_amaf: int = Field(default=2, ge=1, description="AMAF side of the planar layout")
    focal_length: float = Field(..., gt=0.0, description="F in half-wavelengths")
    ris_spacing: float = Field(default=DEFAULT_SPACING, gt=0.0)
    amaf_spacing: float = Field(default=DEFAULT_SPACING, gt=0.0)

    def linear(self) -> AmafRisLayout:
        return AmafRisLayout.linear(
            self.n_ris, self.n_amaf, self.focal_length, self.ris_spacing, self.amaf_spacing
        )

    def planar(self) -> AmafRisLayout:
        return AmafRisLayout.planar(
            self.n_ris, self.planar_n_amaf, self.focal_length, self.ris_spacing, self.amaf_spacing
        )


class ElementsSection(FlatTopModel):
    amaf: ElementPattern = Field(default_factory=ElementPattern.patch)
    ris: ElementPattern = Field(default_factory=ElementPattern.patch)


class TemplateSection(FlatTopModel):
    """
    Binary grouping and widening parameters.

    Give either explicit inclusive ``pi_ranges`` or a ``group_fraction``;
    a fraction takes precedence when both are set.
    """

    pi_ranges: tuple[tuple[int, int], ...] = DEFAULT_PI_RANGES
    group_fraction: float | None = Field(default=None, gt=0.0, lt=0.5)
    lead_fraction: float = Field(default=DEFAULT_LEAD_FRACTION, ge=0.0, lt=0.5)
    c: float = Field(default=DEFAULT_PPF_SCALE, ge=0.0)
    p: float = Field(default=DEFAULT_PPF_EXPONENT, gt=0.0)

    def grouping(self, n_elements: int) -> BinaryGrouping:
        if self.group_fraction is not None:
            return BinaryGrouping.from_fraction(n_elements, self.group_fraction, self.lead_fraction)
        return BinaryGrouping(n_elements=n_elements, pi_ranges=self.pi_ranges)


class PatternSection(FlatTopModel):
    points: int = Field(default=DEFAULT_PATTERN_POINTS, ge=11)
    planar_points: int = Field(default=DEFAULT_PLANAR_POINTS, ge=3)
    normalization: Normalization = Normalization.PEAK


class SpecSection(FlatTopModel):
    """Flat-top mask in degrees."""

    passband_deg: Interval
    stopbands_deg: tuple[Interval, ...] = ()
    grid_points: int = Field(default=15, ge=2)
    sidelobe_target_db: float = -13.0
    ripple_weight: float = Field(default=1.0, ge=0.0)
    sidelobe_weight: float = Field(default=0.25, ge=0.0)

    def to_spec(self, name: str) -> FlatTopSpec:
        return FlatTopSpec.from_degrees(
            name,
            self.passband_deg,
            self.stopbands_deg,
            grid_points=self.grid_points,
            sidelobe_target_db=self.sidelobe_target_db,
            ripple_weight=self.ripple_weight,
            sidelobe_weight=self.sidelobe_weight,
        )


def _default_specs() -> dict[str, SpecSection]:
    # Chosen defaults for the passband and stopband edges
    return {
        "wide": SpecSection(passband_deg=(-15.0, 15.0), stopbands_deg=((-90.0, -23.0), (23.0, 90.0))),
        "narrow": SpecSection(passband_deg=(-6.0, 6.0), stopbands_deg=((-90.0, -16.0), (16.0, 90.0))),
    }


class OptimizationSection(FlatTopModel):
    specs: dict[str, SpecSection] = Field(default_factory=_default_specs)
    solver: OptimizerConfig = Field(default_factory=OptimizerConfig)
    sensitivity_spec: str = "wide"
    sensitivity_grid_points: tuple[int, ...] = (5, 15)

    @model_validator(mode="after")
    def _check_names(self) -> Self:
        if not self.specs:
            raise ValueError("at least one flat-top spec is required")
        if self.sensitivity_spec not in self.specs:
            raise ValueError(f"sensitivity_spec {self.sensitivity_spec!r} is not a defined spec")
        return self

    def spec(self, name: str) -> FlatTopSpec:
        if name not in self.specs:
            raise FlatTopConfigurationError(
                f"Unknown flat-top spec {name!r}",
                missing_config=[f"optimization.specs.{name}"],
            )
        return self.specs[name].to_spec(name)


class FootprintSection(FlatTopModel):
    """Deployment scenario; the defaults are illustrative, not measured."""

    mount_height_m: float = Field(default=DEFAULT_MOUNT_HEIGHT_M, gt=0.0)
    aim_distance_m: float = Field(default=DEFAULT_AIM_DISTANCE_M, ge=0.0)
    x_range_m: Extent = (-40.0, 40.0)
    y_range_m: Extent = (-20.0, 60.0)
    resolution_m: float = Field(default=DEFAULT_FOOTPRINT_RESOLUTION_M, gt=0.0)
    wavelength_m: float = Field(default=DEFAULT_WAVELENGTH_M, gt=0.0)
    combination: FootprintCombination = FootprintCombination.AZ_WIDENED
    widened_spec: str = "wide"
    provenance: str = SCENARIO_PROVENANCE

    def scenario(self) -> DeploymentScenario:
        return DeploymentScenario(
            mount_height_m=self.mount_height_m,
            downtilt=math.atan2(self.aim_distance_m, self.mount_height_m),
            x_range_m=self.x_range_m,
            y_range_m=self.y_range_m,
            resolution_m=self.resolution_m,
            wavelength_m=self.wavelength_m,
            provenance=self.provenance,
        )


class EnergySection(FlatTopModel):
    budget: PowerBudget = Field(default_factory=PowerBudget)
    active_elements: int = Field(default=DEFAULT_ACTIVE_ELEMENTS, ge=1)
    amaf_v1: tuple[float, ...] = Field(default=DEFAULT_AMAF_V1, min_length=1)


# =============================================================================
# Settings
# =============================================================================


class FlatTopSettings(BaseSettings):
    """
    Run configuration.

    Environment Variables:
        FLATTOP_OUTPUT_DIR: Directory for the artifacts of a run
        FLATTOP_EXPORT_COUPLING: Also write the coupling matrix
        FLATTOP_<SECTION>__<FIELD>: Any nested field, e.g.
            FLATTOP_OPTIMIZATION__SOLVER__SEED=7
    """

    model_config = SettingsConfigDict(
        env_prefix="FLATTOP_",
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="forbid",
    )

    layout: LayoutSection = Field(default_factory=lambda: LayoutSection(focal_length=DEFAULT_FOCAL_LENGTH))
    elements: ElementsSection = Field(default_factory=ElementsSection)
    template: TemplateSection = Field(default_factory=TemplateSection)
    pattern: PatternSection = Field(default_factory=PatternSection)
    optimization: OptimizationSection = Field(default_factory=OptimizationSection)
    footprint: FootprintSection = Field(default_factory=FootprintSection)
    energy: EnergySection = Field(default_factory=EnergySection)

    output_dir: Path = Field(default=Path("results"), description="Artifact directory")
    export_coupling: bool = Field(default=False, description="Write coupling_matrix.csv")

    @model_validator(mode="after")
    def _check_references(self) -> Self:
        if self.footprint.widened_spec not in self.optimization.specs:
            raise ValueError(f"footprint.widened_spec {self.footprint.widened_spec!r} is not a defined spec")
        return self

    @model_validator(mode="after")
    def _check_grouping(self) -> Self:
        n_ris = self.layout.n_ris
        try:
            grouping = self.template.grouping(n_ris)
        except ValueError as e:
            raise ValueError(f"template grouping is invalid for {n_ris} elements: {e}") from e
        if not grouping.is_symmetric:
            raise ValueError(
                f"template grouping {grouping.pi_ranges} is not symmetric about the center of {n_ris} elements"
            )
        return self

    def to_yaml(self) -> str:
        """Re-emit the resolved configuration as YAML."""
        return yaml.safe_dump(self.model_dump(mode="json"), sort_keys=False)

    def with_seed(self, seed: int) -> FlatTopSettings:
        """Copy with the optimizer seed replaced."""
        data = self.model_dump(mode="json")
        data["optimization"]["solver"]["seed"] = seed
        return type(self)(**data)

    def with_output_dir(self, output_dir: Path) -> FlatTopSettings:
        data = self.model_dump(mode="json")
        data["output_dir"] = str(output_dir)
        return type(self)(**data)


def _error_paths(error: ValidationError) -> list[str]:
    return [".".join(str(part) for part in item["loc"]) for item in error.errors()]


def load_settings(path: Path | str | None = None, **overrides: Any) -> FlatTopSettings:
    """
    Read and validate a configuration document.

    Without a path, defaults and environment variables apply.

    Raises:
        FlatTopConfigurationError: the file is missing, is not valid YAML,
            or fails validation. ``missing_config`` lists the offending
            field paths.
    """
    data: dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise FlatTopConfigurationError(
                f"Configuration file not found: {path}", missing_config=[str(path)]
            )
        try:
            data = YamlConfigSettingsSource(FlatTopSettings, yaml_file=path)()
        except yaml.YAMLError as e:
            raise FlatTopConfigurationError(f"Configuration file is not valid YAML: {e}") from e

    try:
        return FlatTopSettings(**{**data, **overrides})
    except ValidationError as e:
        paths = _error_paths(e)
        raise FlatTopConfigurationError(
            f"Invalid configuration ({e.error_count()} error(s)): {', '.join(paths)}",
            missing_config=paths,
            details={"errors": [item["msg"] for item in e.errors()]},
        ) from e


# Global settings instance (lazy initialization)
_settings: FlatTopSettings | None = None


def get_settings() -> FlatTopSettings:
    """Get the global settings instance."""
    global _settings
    if _settings is None:
        _settings = FlatTopSettings()
    return _settings


def configure_settings(**kwargs: Any) -> FlatTopSettings:
    """Configure settings with explicit values."""
    global _settings
    _settings = FlatTopSettings(**kwargs)
    return _settings

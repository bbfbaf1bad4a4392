"""
flattop-ris Data Models.

This package provides the immutable pydantic value types shared by every
design stage.

Models:
    - LinearLayout, PlanarLayout, AmafRisLayout: array arrangements
    - ElementPattern, CouplingMatrix: elements and the feed-to-surface matrix
    - PrincipalEigenmode, CophaseVector, TaperPoint: eigenmode results
    - PhaseProfile, BinaryGrouping, EffectiveWeights, TemplateSet: shaping
    - AngularGrid, RadiationPattern, RadiationPattern2D, FlatTopMetrics: patterns
    - FlatTopSpec, OptimizerConfig, OptimizationReport, GridSensitivityReport
    - DeploymentScenario, FootprintGrid: ground footprints
    - SplitterStage, PowerBudget, DcPowerReport, EnergyComparison: DC power
"""

from flattop_ris.models.antenna import CouplingMatrix, ElementPattern
from flattop_ris.models.base import FlatTopModel
from flattop_ris.models.eigenmode import CophaseVector, PrincipalEigenmode, TaperPoint
from flattop_ris.models.energy import DcPowerReport, EnergyComparison, PowerBudget, SplitterStage
from flattop_ris.models.footprint import DeploymentScenario, FootprintGrid
from flattop_ris.models.geometry import AmafRisLayout, LinearLayout, PlanarLayout, RayGeometry
from flattop_ris.models.optimization import (
    FlatTopSpec,
    GridSensitivityReport,
    OptimizationReport,
    OptimizerConfig,
)
from flattop_ris.models.pattern import AngularGrid, FlatTopMetrics, RadiationPattern, RadiationPattern2D
from flattop_ris.models.profile import BinaryGrouping, EffectiveWeights, PhaseProfile, TemplateSet

__all__ = [
    "AmafRisLayout",
    "AngularGrid",
    "BinaryGrouping",
    "CophaseVector",
    "CouplingMatrix",
    "DcPowerReport",
    "DeploymentScenario",
    "EffectiveWeights",
    "ElementPattern",
    "EnergyComparison",
    "FlatTopMetrics",
    "FlatTopModel",
    "FlatTopSpec",
    "FootprintGrid",
    "GridSensitivityReport",
    "LinearLayout",
    "OptimizationReport",
    "OptimizerConfig",
    "PhaseProfile",
    "PlanarLayout",
    "PowerBudget",
    "PrincipalEigenmode",
    "RadiationPattern",
    "RadiationPattern2D",
    "RayGeometry",
    "SplitterStage",
    "TaperPoint",
    "TemplateSet",
]

"""
flattop-ris - Flat-top beam synthesis for RIS fed by an active multi-antenna feeder.

This package provides:
1. The principal eigenmode of the feeder-to-surface coupling and its taper
2. A pragmatic phase template (binary grouping, phase perturbation, co-phasing)
3. Phase-only optimization of tunable-width flat-top beams
4. Linear/planar patterns, ground footprints and a DC power comparison
5. A command line running every stage from one YAML configuration

Quick Start (Python Library):
    ```python
    from flattop_ris import FlatTopDesigner, load_settings

    designer = FlatTopDesigner(load_settings("run.yaml"))
    report = designer.optimize("wide")
    print(report.metrics.passband_ripple_db, report.converged, report.useful)
    ```

Quick Start (CLI):
    ```bash
    flattop-ris pipeline --out results/default
    ```

Design flow:
    coupling matrix T ──► (sigma1, u1, v1) ──► template w = w_ppf * w_binary * w_cophase
                                                   │
                                                   ▼
              footprint ◄── planar W = w_el w_az^H ◄── optimized phases

See the README for full documentation.
"""

from flattop_ris.constants import FootprintCombination, InitPolicy, Normalization, Provenance
from flattop_ris.designer import FlatTopDesigner
from flattop_ris.eigenmode import cophase_vector, principal_eigenmode, taper_sweep
from flattop_ris.energy import (
    active_array_dc_power,
    amaf_ris_dc_power,
    compare_architectures,
    dbm_to_mw,
    mw_to_dbm,
    splitter_loss,
)
from flattop_ris.exceptions import (
    FlatTopConfigurationError,
    FlatTopError,
    FlatTopNumericalError,
    FlatTopValidationError,
)
from flattop_ris.footprint import footprint_extents, ground_footprint, planar_design
from flattop_ris.geometry import (
    amaf_coordinates,
    central_indices,
    element_positions,
    f_over_d,
    planar_positions,
    ray_geometry,
    ray_table,
    ris_coordinates,
)
from flattop_ris.models import (
    AmafRisLayout,
    AngularGrid,
    BinaryGrouping,
    CophaseVector,
    CouplingMatrix,
    DcPowerReport,
    DeploymentScenario,
    EffectiveWeights,
    ElementPattern,
    EnergyComparison,
    FlatTopMetrics,
    FlatTopSpec,
    FootprintGrid,
    GridSensitivityReport,
    LinearLayout,
    OptimizationReport,
    OptimizerConfig,
    PhaseProfile,
    PlanarLayout,
    PowerBudget,
    PrincipalEigenmode,
    RadiationPattern,
    RadiationPattern2D,
    RayGeometry,
    SplitterStage,
    TaperPoint,
    TemplateSet,
)
from flattop_ris.optimizer import grid_sensitivity_experiment, optimize_phases
from flattop_ris.pattern import (
    array_response,
    beam_extent_deg,
    flat_top_metrics,
    linear_pattern,
    main_lobe_edges,
    main_lobe_width_deg,
    planar_beam_extents,
    planar_pattern,
    planar_response,
    planar_weights,
    steering_vector,
)
from flattop_ris.propagation import coupling_matrix, element_gain
from flattop_ris.settings import FlatTopSettings, configure_settings, get_settings, load_settings
from flattop_ris.shaping import (
    binary_vector,
    compose_template,
    effective_weights,
    ppf_value,
    ppf_values,
    pragmatic_template,
    widening_vector,
)

__version__ = "0.1.0"

__all__ = [
    # Designer
    "FlatTopDesigner",
    # Settings
    "FlatTopSettings",
    "configure_settings",
    "get_settings",
    "load_settings",
    # Enums
    "FootprintCombination",
    "InitPolicy",
    "Normalization",
    "Provenance",
    # Geometry
    "amaf_coordinates",
    "central_indices",
    "element_positions",
    "f_over_d",
    "planar_positions",
    "ray_geometry",
    "ray_table",
    "ris_coordinates",
    # Propagation and eigenmode
    "coupling_matrix",
    "element_gain",
    "cophase_vector",
    "principal_eigenmode",
    "taper_sweep",
    # Shaping
    "binary_vector",
    "compose_template",
    "effective_weights",
    "ppf_value",
    "ppf_values",
    "pragmatic_template",
    "widening_vector",
    # Patterns
    "array_response",
    "beam_extent_deg",
    "flat_top_metrics",
    "linear_pattern",
    "main_lobe_edges",
    "main_lobe_width_deg",
    "planar_beam_extents",
    "planar_pattern",
    "planar_response",
    "planar_weights",
    "steering_vector",
    # Optimization
    "grid_sensitivity_experiment",
    "optimize_phases",
    # Footprint
    "footprint_extents",
    "ground_footprint",
    "planar_design",
    # Energy
    "active_array_dc_power",
    "amaf_ris_dc_power",
    "compare_architectures",
    "dbm_to_mw",
    "mw_to_dbm",
    "splitter_loss",
    # Models
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
    # Exceptions
    "FlatTopConfigurationError",
    "FlatTopError",
    "FlatTopNumericalError",
    "FlatTopValidationError",
]

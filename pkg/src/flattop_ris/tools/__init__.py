"""
flattop-ris Tools Package.

Artifact plumbing shared by the command line:
    - formatting: CSV tables and text reports
    - artifacts: the run directory writer
"""

from flattop_ris.tools.artifacts import ArtifactWriter
from flattop_ris.tools.formatting import (
    fmt,
    format_coupling_csv,
    format_csv,
    format_eigenmode_summary,
    format_energy_csv,
    format_energy_report,
    format_footprint_csv,
    format_footprint_raster,
    format_grid_sensitivity,
    format_metrics,
    format_optimization_report,
    format_pattern2d_csv,
    format_pattern_csv,
    format_phases_csv,
    format_taper_sweep_csv,
    format_template_csv,
    format_u1_csv,
)

__all__ = [
    "ArtifactWriter",
    "fmt",
    "format_coupling_csv",
    "format_csv",
    "format_eigenmode_summary",
    "format_energy_csv",
    "format_energy_report",
    "format_footprint_csv",
    "format_footprint_raster",
    "format_grid_sensitivity",
    "format_metrics",
    "format_optimization_report",
    "format_pattern2d_csv",
    "format_pattern_csv",
    "format_phases_csv",
    "format_taper_sweep_csv",
    "format_template_csv",
    "format_u1_csv",
]

"""
flattop-ris Constants and Enumerations.

This module defines all constants, enumerations, and default values
used throughout the package. Lengths are in half-wavelength units unless
a name says otherwise.
"""

from __future__ import annotations

import math
from enum import IntEnum, StrEnum


# =============================================================================
# Array Layout Defaults
# =============================================================================

DEFAULT_RIS_ELEMENTS = 40
DEFAULT_AMAF_ELEMENTS = 2
DEFAULT_FOCAL_LENGTH = 9.4
DEFAULT_SPACING = 1.0

# Patch element: 6 dBi peak, 90 degree half power beam width
PATCH_PEAK_GAIN = 4.0
PATCH_EXPONENT = 2.0


# =============================================================================
# Template Defaults
# =============================================================================

# Inclusive index ranges carrying phase pi for the 40-element surface
DEFAULT_PI_RANGES: tuple[tuple[int, int], ...] = ((6, 12), (27, 33))

# Leading block of zero-phase elements before the first group, as a share of N_p
DEFAULT_LEAD_FRACTION = 0.15

DEFAULT_PPF_SCALE = 2.0
DEFAULT_PPF_EXPONENT = 1.0


# =============================================================================
# Pattern Evaluation
# =============================================================================

DEFAULT_PATTERN_POINTS = 1801
DEFAULT_PLANAR_POINTS = 181

# Guard beyond the passband edges before sidelobes are searched
SIDELOBE_GUARD_DEG = 2.0

# Floor for dB values of zero power (behind the array, invisible region)
DB_FLOOR = -300.0

# Dense-grid ripple above which an optimized beam is not useful
USEFUL_RIPPLE_DB = 3.0

# Dense-grid ripple in excess of the optimization-grid ripple beyond which
# the grid samples do not cover the passband
MAX_COVERAGE_GAP_DB = 1.0

# Level below the peak at which shaped main lobes are compared
MAIN_LOBE_LEVEL_DB = -10.0

# Minimum passband samples for flat-top metrics
MIN_PASSBAND_SAMPLES = 10


# =============================================================================
# Numerical Tolerances
# =============================================================================

UNIT_MODULUS_TOL = 1e-12
SVD_RESIDUAL_TOL = 1e-10
SIGMA_FLOOR = 1e-15
CAUCHY_SCHWARZ_SLACK = 1e-9


# =============================================================================
# Footprint Defaults (illustrative; the picocell numbers are external)
# =============================================================================

DEFAULT_MOUNT_HEIGHT_M = 10.0
DEFAULT_AIM_DISTANCE_M = 20.0
DEFAULT_DOWNTILT = math.atan2(DEFAULT_AIM_DISTANCE_M, DEFAULT_MOUNT_HEIGHT_M)
DEFAULT_FOOTPRINT_RESOLUTION_M = 0.5
DEFAULT_WAVELENGTH_M = 0.0107  # 28 GHz
SCENARIO_PROVENANCE = "illustrative defaults"


# =============================================================================
# Energy Defaults
# =============================================================================

DEFAULT_P_RF_DBM = 20.0
DEFAULT_PA_EFFICIENCY = 0.3
DEFAULT_SPLITTER_STAGES: tuple[tuple[int, float], ...] = ((4, 1.0), (4, 1.0), (10, 1.0), (10, 1.0))
DEFAULT_ACTIVE_ELEMENTS = 1600
DEFAULT_AMAF_V1: tuple[float, ...] = (0.5, 0.5, 0.5, 0.5)


# =============================================================================
# Enumerations
# =============================================================================


class Provenance(StrEnum):
    """Origin of a phase profile."""

    BINARY = "binary"
    PPF = "ppf"
    COPHASE = "cophase"
    COMPOSED = "composed"
    OPTIMIZED = "optimized"


class Normalization(StrEnum):
    """Pattern normalization modes."""

    PEAK = "peak"  # Peak at 0 dB
    ABSOLUTE = "absolute"  # |a^H w|^2 E in dB, no rescaling


class InitPolicy(StrEnum):
    """Starting point of the phase optimizer."""

    TEMPLATE = "template"
    RANDOM = "random"


class FootprintCombination(StrEnum):
    """Planar designs built from the linear elevation/azimuth vectors."""

    CONFINED = "confined"  # step-2 x step-2
    AZ_WIDENED = "az_widened"  # step-2 (el) x optimized (az)
    EL_WIDENED = "el_widened"  # optimized (el) x step-2 (az)
    BOTH_WIDENED = "both_widened"  # optimized x optimized


class ExitCode(IntEnum):
    """CLI exit codes."""

    SUCCESS = 0
    UNEXPECTED = 1
    CONFIG_ERROR = 2
    NUMERICAL_FAILURE = 3
    INTERRUPTED = 130


# =============================================================================
# Output Files
# =============================================================================

U1_FILE = "u1.csv"
COUPLING_FILE = "coupling_matrix.csv"
EIGENMODE_SUMMARY_FILE = "eigenmode_summary.txt"
FD_SWEEP_FILE = "fd_sweep.csv"
BINARY_PHASES_FILE = "binary_phases.csv"
PPF_PHASES_FILE = "ppf_phases.csv"
TEMPLATE_PHASES_FILE = "template_phases.csv"
PATTERN_STEP2_FILE = "pattern_step2.csv"
PATTERN_STEP3_FILE = "pattern_step3.csv"
PATTERN_LINEAR_FILE = "pattern_linear.csv"
PATTERN_PLANAR_FILE = "pattern_planar.csv"
OPTIMIZE_REPORT_FILE = "optimize_report.txt"
GRID_SENSITIVITY_FILE = "grid_sensitivity.txt"
FOOTPRINT_FILE = "footprint.csv"
FOOTPRINT_RASTER_FILE = "footprint_raster.txt"
ENERGY_REPORT_FILE = "energy_report.txt"
ENERGY_CSV_FILE = "energy.csv"
RESOLVED_CONFIG_FILE = "config_resolved.yaml"


def optimized_phases_file(spec_name: str) -> str:
    """File name of the optimized phases for a named spec."""
    return f"optimized_phases_{spec_name}.csv"


def optimized_pattern_file(spec_name: str) -> str:
    """File name of the optimized pattern for a named spec."""
    return f"pattern_optimized_{spec_name}.csv"

"""
Artifact Formatting Utilities for flattop-ris.

This module renders synthesis results as CSV tables and plain-text
reports. Numbers are printed with a fixed format so that a run is
reproducible byte-for-byte from its configuration.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable, Sequence

from flattop_ris.geometry import f_over_d
from flattop_ris.models.antenna import CouplingMatrix
from flattop_ris.models.eigenmode import PrincipalEigenmode, TaperPoint
from flattop_ris.models.energy import EnergyComparison, PowerBudget
from flattop_ris.models.footprint import FootprintGrid
from flattop_ris.models.geometry import AmafRisLayout
from flattop_ris.models.optimization import GridSensitivityReport, OptimizationReport
from flattop_ris.models.pattern import FlatTopMetrics, RadiationPattern, RadiationPattern2D
from flattop_ris.models.profile import PhaseProfile, TemplateSet

RASTER_NODATA = -9999


def fmt(value: float) -> str:
    """Fixed-precision number for artifacts."""
    return f"{value:.12g}"


def format_csv(header: Sequence[str], rows: Iterable[Sequence[object]], comments: Sequence[str] = ()) -> str:
    """CSV text with optional leading '#' comment lines."""
    buffer = io.StringIO()
    for comment in comments:
        buffer.write(f"# {comment}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(cell) if isinstance(cell, float) else cell for cell in row])
    return buffer.getvalue()


# =============================================================================
# Eigenmode
# =============================================================================


def format_u1_csv(eigenmode: PrincipalEigenmode) -> str:
    rows = (
        (n, float(value.real), float(value.imag), float(abs(value)))
        for n, value in enumerate(eigenmode.u1)
    )
    return format_csv(("index", "u1_re", "u1_im", "u1_abs"), rows)


def format_coupling_csv(coupling: CouplingMatrix) -> str:
    entries = coupling.entries
    rows = (
        (n, m, float(entries[n, m].real), float(entries[n, m].imag))
        for n in range(entries.shape[0])
        for m in range(entries.shape[1])
    )
    return format_csv(("ris_index", "amaf_index", "t_re", "t_im"), rows)


def format_eigenmode_summary(eigenmode: PrincipalEigenmode, layout: AmafRisLayout) -> str:
    """Plain-text summary of the principal eigenmode."""
    lines = [
        "# Principal Eigenmode",
        "",
        f"- RIS elements: {layout.n_ris}",
        f"- AMAF elements: {layout.n_amaf}",
        f"- Focal length F: {fmt(layout.focal_length)}",
        f"- F/D: {f_over_d(layout):.3f}",
        f"- sigma1: {fmt(eigenmode.sigma1)}",
        f"- Power transfer sigma1^2: {fmt(eigenmode.power_transfer)}",
        "",
        "## v1",
    ]
    for m, value in enumerate(eigenmode.v1):
        sign = "+" if value.imag >= 0 else "-"
        lines.append(f"- v1[{m}] = {fmt(value.real)} {sign} {fmt(abs(value.imag))}j (|v1| = {abs(value):.6f})")
    lines.extend(["", "## Singular values"])
    lines.extend(f"- {fmt(float(s))}" for s in eigenmode.singular_values)
    return "\n".join(lines) + "\n"


def format_taper_sweep_csv(points: Sequence[TaperPoint]) -> str:
    rows = ((p.focal_length, p.f_over_d, p.edge_taper_db, p.sigma1) for p in points)
    return format_csv(("focal_length", "f_over_d", "edge_taper_db", "sigma1"), rows)


# =============================================================================
# Phase Profiles
# =============================================================================


def format_phases_csv(profile: PhaseProfile) -> str:
    """(index, phase in radians), the form a RIS controller consumes."""
    rows = ((n, float(phase)) for n, phase in enumerate(profile.phases))
    return format_csv(("index", "phase_rad"), rows, comments=(f"provenance: {profile.provenance}",))


def format_template_csv(templates: TemplateSet) -> str:
    columns = (templates.binary, templates.ppf, templates.cophase, templates.step2, templates.step3)
    rows = (
        (n, *(float(profile.phases[n]) for profile in columns))
        for n in range(templates.step3.n_elements)
    )
    return format_csv(
        ("index", "binary_rad", "ppf_rad", "cophase_rad", "step2_rad", "step3_rad"), rows
    )


# =============================================================================
# Patterns
# =============================================================================


def format_pattern_csv(pattern: RadiationPattern) -> str:
    rows = zip(pattern.grid.degrees.tolist(), pattern.power_db.tolist(), strict=True)
    return format_csv(("angle_deg", "power_db"), rows)


def format_pattern2d_csv(pattern: RadiationPattern2D) -> str:
    az = pattern.az.degrees
    el = pattern.el.degrees
    rows = (
        (float(az[col]), float(el[row]), float(pattern.power_db[row, col]))
        for row in range(el.size)
        for col in range(az.size)
    )
    return format_csv(("az_deg", "el_deg", "power_db"), rows)


def format_metrics(metrics: FlatTopMetrics) -> list[str]:
    sidelobe = "none" if metrics.max_sidelobe_db is None else f"{metrics.max_sidelobe_db:.3f} dB"
    return [
        f"- Passband ripple: {metrics.passband_ripple_db:.3f} dB",
        f"- Max sidelobe: {sidelobe}",
        f"- Transition width: {metrics.transition_width_deg:.2f} deg",
        f"- Passband mean: {metrics.passband_mean_db:.3f} dB",
        f"- Passband samples: {metrics.passband_samples}",
    ]


# =============================================================================
# Optimization
# =============================================================================


def format_optimization_report(report: OptimizationReport) -> str:
    spec = report.spec
    low, high = (math.degrees(edge) for edge in spec.passband)
    lines = [
        f"# Optimization: {spec.name}",
        "",
        f"- Passband: [{low:.2f}, {high:.2f}] deg, {spec.grid_points} grid points",
        f"- Converged: {'yes' if report.converged else 'no'}",
        f"- Useful: {'yes' if report.useful else 'no'}",
        f"- Iterations: {report.iterations}",
        f"- Final temperature: {fmt(report.final_temperature)} dB",
        f"- Grid ripple: {report.initial_ripple_db:.3f} dB -> {report.final_ripple_db:.3f} dB",
        f"- Coverage gap: {report.coverage_gap_db:.3f} dB",
    ]
    if report.reverted:
        lines.append("- Reverted to the start point (ripple did not improve)")
    lines.extend(["", "## Dense-grid metrics", *format_metrics(report.metrics)])
    lines.extend(["", "## Objective trace"])
    lines.extend(f"{step} {fmt(float(value))}" for step, value in enumerate(report.objective_trace))
    lines.extend(["", "## Phases (rad)"])
    lines.extend(f"{n} {fmt(float(phase))}" for n, phase in enumerate(report.phases.phases))
    return "\n".join(lines) + "\n"


def format_grid_sensitivity(report: GridSensitivityReport) -> str:
    """Table separating convergence from usefulness per grid density."""
    lines = [
        "# Grid sensitivity",
        "",
        "| grid points | converged | iterations | grid ripple (dB) | dense ripple (dB) | coverage gap (dB) | useful |",
        "|---|---|---|---|---|---|---|",
    ]
    for run in report.runs:
        lines.append(
            f"| {run.spec.grid_points} | {'yes' if run.converged else 'no'} | {run.iterations} | "
            f"{run.final_ripple_db:.3f} | {run.dense_ripple_db:.3f} | {run.coverage_gap_db:.3f} | "
            f"{'yes' if run.useful else 'no'} |"
        )
    return "\n".join(lines) + "\n"


# =============================================================================
# Footprint
# =============================================================================


def _scenario_comments(grid: FootprintGrid) -> list[str]:
    scenario = grid.scenario
    return [
        f"scenario: {scenario.provenance}",
        f"mount_height_m: {fmt(scenario.mount_height_m)}",
        f"downtilt_deg: {fmt(math.degrees(scenario.downtilt))}",
        f"peak_fspl_db: {fmt(grid.peak_fspl_db)}",
    ]


def format_footprint_csv(grid: FootprintGrid) -> str:
    rows = (
        (float(grid.x_m[col]), float(grid.y_m[row]), float(grid.power_db[row, col]))
        for row in range(grid.y_m.size)
        for col in range(grid.x_m.size)
    )
    return format_csv(("x_m", "y_m", "power_db"), rows, comments=_scenario_comments(grid))


def format_footprint_raster(grid: FootprintGrid) -> str:
    """ESRI ASCII grid: header, then rows from the far (max y) edge down."""
    x0, y0 = grid.origin
    lines = [
        f"ncols {grid.x_m.size}",
        f"nrows {grid.y_m.size}",
        f"xllcorner {fmt(x0)}",
        f"yllcorner {fmt(y0)}",
        f"cellsize {fmt(grid.resolution_m)}",
        f"NODATA_value {RASTER_NODATA}",
    ]
    for row in grid.power_db[::-1]:
        lines.append(" ".join(f"{value:.4f}" for value in row.tolist()))
    return "\n".join(lines) + "\n"


# =============================================================================
# Energy
# =============================================================================


def format_energy_report(comparison: EnergyComparison, budget: PowerBudget) -> str:
    amaf = comparison.amaf_ris
    active = comparison.active_array
    stages = ", ".join(f"{s.ways}-way/{s.insertion_loss_db:g} dB" for s in budget.splitter_stages)
    lines = [
        "# DC power comparison",
        "",
        f"- P_RF: {budget.p_rf_dbm:.1f} dBm",
        f"- PA efficiency: {budget.pa_efficiency:g}",
        f"- Splitter: {stages or 'none'}",
        "",
        f"## {amaf.architecture}",
        f"- PAs: {amaf.pa_count}",
        f"- Per-PA max output: {amaf.per_pa_dbm:.1f} dBm = {amaf.per_pa_mw:.1f} mW",
        f"- Total DC: {amaf.total_dc_mw:.1f} mW",
        "",
        f"## {active.architecture}",
        f"- PAs: {active.pa_count}",
        f"- PA output: {active.per_pa_dbm:.1f} dBm = {active.per_pa_mw:.1f} mW",
        f"- Total DC: {active.total_dc_mw:.1f} mW",
        "",
        f"- Savings: {comparison.savings_mw:.1f} mW ({comparison.ratio:.2f}x)",
        f"- More efficient: {amaf.architecture if comparison.amaf_ris_wins else active.architecture}",
    ]
    return "\n".join(lines) + "\n"


def format_energy_csv(comparison: EnergyComparison) -> str:
    rows = (
        (r.architecture, r.pa_count, r.per_pa_dbm, r.per_pa_mw, r.total_dc_mw)
        for r in (comparison.amaf_ris, comparison.active_array)
    )
    return format_csv(("architecture", "pa_count", "per_pa_dbm", "per_pa_mw", "total_dc_mw"), rows)

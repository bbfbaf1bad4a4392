#!/usr/bin/env python3
"""
flattop-ris Command Line Interface.

This module provides the main entry point for the flattop-ris command,
with one subcommand per design stage and a pipeline running them all.

Commands:
    flattop-ris eigenmode     Coupling matrix, |u1|, v1, sigma1 and F/D
    flattop-ris template      Binary, PPF and composed template phases and patterns
    flattop-ris optimize      Phase-only optimization per flat-top spec
    flattop-ris pattern       Linear and planar radiation patterns
    flattop-ris footprint     Ground footprint of a planar design
    flattop-ris energy        DC power comparison (no SVD needed)
    flattop-ris pipeline      All of the above, in order

Examples:
    # Full run with the built-in defaults
    flattop-ris pipeline --out results/default

    # Optimize the narrow spec from a configuration file
    flattop-ris optimize --config run.yaml --spec narrow --seed 7

    # Show version
    flattop-ris --version
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import NoReturn

from pydantic import ValidationError

from flattop_ris import plotting
from flattop_ris.constants import (
    BINARY_PHASES_FILE,
    COUPLING_FILE,
    EIGENMODE_SUMMARY_FILE,
    ENERGY_CSV_FILE,
    ENERGY_REPORT_FILE,
    FD_SWEEP_FILE,
    FOOTPRINT_FILE,
    FOOTPRINT_RASTER_FILE,
    GRID_SENSITIVITY_FILE,
    OPTIMIZE_REPORT_FILE,
    PATTERN_LINEAR_FILE,
    PATTERN_PLANAR_FILE,
    PATTERN_STEP2_FILE,
    PATTERN_STEP3_FILE,
    PPF_PHASES_FILE,
    RESOLVED_CONFIG_FILE,
    TEMPLATE_PHASES_FILE,
    U1_FILE,
    ExitCode,
    FootprintCombination,
    optimized_pattern_file,
    optimized_phases_file,
)
from flattop_ris.designer import FlatTopDesigner
from flattop_ris.exceptions import (
    FlatTopConfigurationError,
    FlatTopNumericalError,
    FlatTopValidationError,
)
from flattop_ris.pattern import main_lobe_width_deg
from flattop_ris.settings import load_settings
from flattop_ris.tools import (
    ArtifactWriter,
    format_coupling_csv,
    format_eigenmode_summary,
    format_energy_csv,
    format_energy_report,
    format_footprint_csv,
    format_footprint_raster,
    format_grid_sensitivity,
    format_optimization_report,
    format_pattern2d_csv,
    format_pattern_csv,
    format_phases_csv,
    format_taper_sweep_csv,
    format_template_csv,
    format_u1_csv,
)

logger = logging.getLogger(__name__)

Command = Callable[[FlatTopDesigner, ArtifactWriter, argparse.Namespace], None]


def load_dotenv_if_available() -> None:
    """Load .env file if python-dotenv is available."""
    try:
        from dotenv import load_dotenv

        # Try current directory first, then walk up to find .env
        cwd = Path.cwd()
        for parent in [cwd, *cwd.parents]:
            env_file = parent / ".env"
            if env_file.exists():
                load_dotenv(env_file)
                return
        load_dotenv()
    except ImportError:
        pass  # python-dotenv not installed, skip


def get_version() -> str:
    """
    Get the package version.

    Returns:
        The package version string, or "unknown" if not found.
    """
    try:
        from importlib.metadata import version

        return version("flattop-ris")
    except Exception:
        return "unknown"


def configure_logging(verbose: bool, quiet: bool) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


# =============================================================================
# Commands
# =============================================================================


def cmd_eigenmode(designer: FlatTopDesigner, writer: ArtifactWriter, args: argparse.Namespace) -> None:
    """Write |u1|, the eigenmode summary and optionally T and an F/D sweep."""
    eigenmode = designer.eigenmode
    writer.write(U1_FILE, format_u1_csv(eigenmode))
    writer.write(EIGENMODE_SUMMARY_FILE, format_eigenmode_summary(eigenmode, designer.layout))
    if designer.settings.export_coupling:
        writer.write(COUPLING_FILE, format_coupling_csv(designer.coupling))
    if getattr(args, "sweep", None):
        writer.write(FD_SWEEP_FILE, format_taper_sweep_csv(designer.taper_sweep(args.sweep)))
    if args.plot:
        plotting.plot_eigenmode(eigenmode, writer.path("eigenmode.png"))


def cmd_template(designer: FlatTopDesigner, writer: ArtifactWriter, args: argparse.Namespace) -> None:
    """Write the template vectors and the step-2 and step-3 patterns."""
    templates = designer.templates
    writer.write(BINARY_PHASES_FILE, format_phases_csv(templates.binary))
    writer.write(PPF_PHASES_FILE, format_phases_csv(templates.ppf))
    writer.write(TEMPLATE_PHASES_FILE, format_template_csv(templates))

    step2 = designer.linear_pattern(designer.step2_weights)
    step3 = designer.linear_pattern(designer.step3_weights)
    writer.write(PATTERN_STEP2_FILE, format_pattern_csv(step2))
    writer.write(PATTERN_STEP3_FILE, format_pattern_csv(step3))
    logger.info(
        "Main-lobe width at -10 dB: step 2 %.1f deg, step 3 %.1f deg",
        main_lobe_width_deg(step2),
        main_lobe_width_deg(step3),
    )
    if args.plot:
        patterns = {
            "co-phased": designer.linear_pattern(designer.pencil_weights),
            "binary": step2,
            "binary + PPF": step3,
        }
        plotting.plot_linear_patterns(patterns, writer.path("template_patterns.png"))


def cmd_optimize(designer: FlatTopDesigner, writer: ArtifactWriter, args: argparse.Namespace) -> None:
    """Optimize each requested spec and run the grid sensitivity experiment."""
    names = getattr(args, "spec", None) or list(designer.settings.optimization.specs)
    sections = []
    patterns = {}
    for name in names:
        report = designer.optimize(name)
        sections.append(format_optimization_report(report))
        writer.write(optimized_phases_file(name), format_phases_csv(designer.optimized_profile(name)))
        patterns[name] = designer.linear_pattern(designer.optimized_weights(name))
        writer.write(optimized_pattern_file(name), format_pattern_csv(patterns[name]))
    writer.write(OPTIMIZE_REPORT_FILE, "\n".join(sections))

    if not getattr(args, "skip_sensitivity", False):
        writer.write(GRID_SENSITIVITY_FILE, format_grid_sensitivity(designer.grid_sensitivity))
    if args.plot:
        plotting.plot_linear_patterns(patterns, writer.path("optimized_patterns.png"))


def _combination(args: argparse.Namespace) -> FootprintCombination | None:
    value = getattr(args, "combination", None)
    return FootprintCombination(value) if value else None


def cmd_pattern(designer: FlatTopDesigner, writer: ArtifactWriter, args: argparse.Namespace) -> None:
    """Write the step-3 linear pattern and the planar pattern of the configured design."""
    writer.write(PATTERN_LINEAR_FILE, format_pattern_csv(designer.linear_pattern(designer.step3_weights)))
    planar = designer.planar_pattern(_combination(args))
    writer.write(PATTERN_PLANAR_FILE, format_pattern2d_csv(planar))
    if args.plot:
        plotting.plot_planar_pattern(planar, writer.path("pattern_planar.png"))


def cmd_footprint(designer: FlatTopDesigner, writer: ArtifactWriter, args: argparse.Namespace) -> None:
    """Write the ground footprint as CSV and raster text."""
    grid = designer.footprint(_combination(args))
    writer.write(FOOTPRINT_FILE, format_footprint_csv(grid))
    writer.write(FOOTPRINT_RASTER_FILE, format_footprint_raster(grid))
    if args.plot:
        plotting.plot_footprint(grid, writer.path("footprint.png"))


def cmd_energy(designer: FlatTopDesigner, writer: ArtifactWriter, args: argparse.Namespace) -> None:
    """Write the DC power comparison."""
    comparison = designer.energy(use_eigenmode=getattr(args, "from_eigenmode", False))
    writer.write(ENERGY_REPORT_FILE, format_energy_report(comparison, designer.settings.energy.budget))
    writer.write(ENERGY_CSV_FILE, format_energy_csv(comparison))


def cmd_pipeline(designer: FlatTopDesigner, writer: ArtifactWriter, args: argparse.Namespace) -> None:
    """Eigenmode, template, optimize, pattern, footprint, then energy from the planar v1."""
    for command in (cmd_eigenmode, cmd_template, cmd_optimize, cmd_pattern, cmd_footprint):
        command(designer, writer, args)
    args.from_eigenmode = True
    cmd_energy(designer, writer, args)


COMMANDS: dict[str, Command] = {
    "eigenmode": cmd_eigenmode,
    "template": cmd_template,
    "optimize": cmd_optimize,
    "pattern": cmd_pattern,
    "footprint": cmd_footprint,
    "energy": cmd_energy,
    "pipeline": cmd_pipeline,
}


# =============================================================================
# Parser
# =============================================================================


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", "-c", type=Path, default=None, metavar="PATH", help="YAML configuration file")
    common.add_argument("--out", "-o", type=Path, default=None, metavar="DIR", help="Output directory")
    common.add_argument("--seed", type=int, default=None, help="Optimizer seed (overrides the configuration)")
    common.add_argument("--plot", action="store_true", help="Also write PNG figures (needs matplotlib)")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    verbosity.add_argument("--quiet", "-q", action="store_true", help="Warnings and errors only")
    return common


def create_parser() -> argparse.ArgumentParser:
    """
    Create and configure the argument parser.

    Returns:
        Configured ArgumentParser instance.
    """
    parser = argparse.ArgumentParser(
        prog="flattop-ris",
        description="flattop-ris - Flat-top beam synthesis for AMAF-fed RIS",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""\
Exit codes:
  0  success (including optimizer non-convergence, flagged in the report)
  1  unexpected error
  2  configuration or validation error
  3  numerical failure
""",
    )
    parser.add_argument("--version", "-V", action="version", version=f"%(prog)s {get_version()}")

    subparsers = parser.add_subparsers(
        dest="command",
        title="commands",
        metavar="<command>",
        required=True,
    )
    common = _common_parser()

    eigenmode = subparsers.add_parser("eigenmode", parents=[common], help="Principal eigenmode and F/D")
    eigenmode.add_argument(
        "--sweep",
        type=float,
        nargs="+",
        default=None,
        metavar="F",
        help="Focal lengths for an edge-taper sweep (writes fd_sweep.csv)",
    )

    subparsers.add_parser("template", parents=[common], help="Pragmatic flat-top template")

    optimize = subparsers.add_parser("optimize", parents=[common], help="Phase-only optimization")
    optimize.add_argument("--spec", action="append", default=None, metavar="NAME", help="Spec to run (repeatable)")
    optimize.add_argument(
        "--skip-sensitivity", action="store_true", help="Skip the passband grid sensitivity experiment"
    )

    choices = [c.value for c in FootprintCombination]
    pattern = subparsers.add_parser("pattern", parents=[common], help="Linear and planar patterns")
    pattern.add_argument("--combination", choices=choices, default=None, help="Planar design")

    footprint = subparsers.add_parser("footprint", parents=[common], help="Ground footprint")
    footprint.add_argument("--combination", choices=choices, default=None, help="Planar design")

    energy = subparsers.add_parser("energy", parents=[common], help="DC power comparison")
    energy.add_argument(
        "--from-eigenmode",
        action="store_true",
        help="Use v1 of the planar eigenmode instead of the configured feed vector",
    )

    pipeline = subparsers.add_parser("pipeline", parents=[common], help="Run every stage")
    pipeline.add_argument("--combination", choices=choices, default=None, help="Planar design")

    return parser


# =============================================================================
# Entry Points
# =============================================================================


def main(argv: Sequence[str] | None = None) -> int:
    """
    Main entry point for the CLI.

    Returns:
        Exit code (0 for success, non-zero for error).
    """
    load_dotenv_if_available()

    parser = create_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)

    try:
        settings = load_settings(args.config)
        if args.seed is not None:
            settings = settings.with_seed(args.seed)
        if args.out is not None:
            settings = settings.with_output_dir(args.out)

        designer = FlatTopDesigner(settings)
        writer = ArtifactWriter(settings.output_dir)
        COMMANDS[args.command](designer, writer, args)
        writer.write(RESOLVED_CONFIG_FILE, settings.to_yaml())
    except (FlatTopConfigurationError, FlatTopValidationError, ValidationError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return ExitCode.CONFIG_ERROR
    except FlatTopNumericalError as e:
        print(f"Numerical failure: {e}", file=sys.stderr)
        return ExitCode.NUMERICAL_FAILURE

    return ExitCode.SUCCESS


def cli_main() -> NoReturn:
    """
    CLI entry point that exits with the appropriate code.

    This is the actual entry point referenced in pyproject.toml.
    """
    try:
        exit_code = main()
        sys.exit(exit_code)
    except KeyboardInterrupt:
        # Handle Ctrl+C gracefully
        print()
        sys.exit(ExitCode.INTERRUPTED)
    except Exception as e:
        # Catch unexpected errors and display them
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(ExitCode.UNEXPECTED)


if __name__ == "__main__":
    cli_main()

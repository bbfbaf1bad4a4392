"""
Optional PNG figures of a design run.

Requires the ``plot`` extra (matplotlib). The Agg backend is selected so
figures render without a display.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from pathlib import Path
from typing import Any

import numpy as np

from flattop_ris.exceptions import FlatTopConfigurationError
from flattop_ris.models.eigenmode import PrincipalEigenmode
from flattop_ris.models.footprint import FootprintGrid
from flattop_ris.models.pattern import RadiationPattern, RadiationPattern2D

logger = logging.getLogger(__name__)

PLOT_FLOOR_DB = -40.0


def _pyplot() -> Any:
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError as e:
        raise FlatTopConfigurationError(
            "Plotting requires matplotlib; install the 'plot' extra",
            missing_config=["matplotlib"],
        ) from e
    return plt


def _save(fig: Any, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    _pyplot().close(fig)
    logger.info("Wrote %s", path)
    return path


def plot_eigenmode(eigenmode: PrincipalEigenmode, path: Path) -> Path:
    """|u1| across the RIS."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.stem(np.arange(eigenmode.n_ris), eigenmode.u1_magnitude)
    ax.set_xlabel("RIS element")
    ax.set_ylabel("|u1|")
    ax.grid(True, alpha=0.3)
    return _save(fig, path)


def plot_linear_patterns(patterns: Mapping[str, RadiationPattern], path: Path) -> Path:
    """Overlay of labelled 1D patterns."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4))
    for label, pattern in patterns.items():
        ax.plot(pattern.grid.degrees, np.maximum(pattern.power_db, PLOT_FLOOR_DB), label=label)
    ax.set_xlabel("angle (deg)")
    ax.set_ylabel("power (dB)")
    ax.set_xlim(-90, 90)
    ax.set_ylim(PLOT_FLOOR_DB, 1)
    ax.grid(True, alpha=0.3)
    ax.legend()
    return _save(fig, path)


def plot_planar_pattern(pattern: RadiationPattern2D, path: Path) -> Path:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    mesh = ax.pcolormesh(
        pattern.az.degrees,
        pattern.el.degrees,
        np.maximum(pattern.power_db, PLOT_FLOOR_DB),
        shading="auto",
    )
    fig.colorbar(mesh, ax=ax, label="power (dB)")
    ax.set_xlabel("az (deg)")
    ax.set_ylabel("el (deg)")
    return _save(fig, path)


def plot_footprint(grid: FootprintGrid, path: Path) -> Path:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    mesh = ax.pcolormesh(grid.x_m, grid.y_m, np.maximum(grid.power_db, PLOT_FLOOR_DB), shading="auto")
    fig.colorbar(mesh, ax=ax, label="relative power (dB)")
    ax.set_xlabel("x (m)")
    ax.set_ylabel("y (m)")
    ax.set_aspect("equal")
    ax.set_title(grid.scenario.provenance)
    return _save(fig, path)

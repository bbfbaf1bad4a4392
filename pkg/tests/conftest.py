"""
Pytest Configuration and Fixtures for flattop-ris Tests.

This module provides factories, fixtures and shared helpers for testing
the design flow.

Architecture:
    - Factories: Generate layouts, phase profiles and config documents
    - Fixtures: Provide the default design (40-element RIS, 2-element AMAF,
      F = 9.4) and its eigenmode, templates and weights
    - Markers: Custom pytest markers for test categorization

Slow Mode:
    Optimizer runs on the default 40-element design are marked ``slow``. Skip them with:
        pytest --skip-slow
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import numpy as np
import pytest
import yaml

from flattop_ris.constants import Provenance
from flattop_ris.eigenmode import principal_eigenmode
from flattop_ris.models import (
    AmafRisLayout,
    AngularGrid,
    BinaryGrouping,
    EffectiveWeights,
    ElementPattern,
    PhaseProfile,
    PrincipalEigenmode,
    TemplateSet,
)
from flattop_ris.propagation import coupling_matrix
from flattop_ris.shaping import effective_weights, pragmatic_template


# =============================================================================
# Pytest Configuration
# =============================================================================


def pytest_addoption(parser):
    """Add custom command line options."""
    parser.addoption(
        "--skip-slow",
        action="store_true",
        default=False,
        help="Skip optimizer runs on the default design",
    )


def pytest_collection_modifyitems(config, items):
    """Skip slow tests when requested."""
    if not config.getoption("--skip-slow"):
        return
    skip_slow = pytest.mark.skip(reason="Slow test (run without --skip-slow)")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


# =============================================================================
# Test Data Factories
# =============================================================================


class LayoutFactory:
    """Factory for AMAF-RIS layouts."""

    @staticmethod
    def linear(n_ris: int = 40, n_amaf: int = 2, focal_length: float = 9.4) -> AmafRisLayout:
        return AmafRisLayout.linear(n_ris=n_ris, n_amaf=n_amaf, focal_length=focal_length)

    @staticmethod
    def planar(n_ris: int = 40, n_amaf: int = 2, focal_length: float = 9.4) -> AmafRisLayout:
        return AmafRisLayout.planar(n_ris=n_ris, n_amaf=n_amaf, focal_length=focal_length)

    @staticmethod
    def eigenmode(n_ris: int = 40, n_amaf: int = 2, focal_length: float = 9.4) -> PrincipalEigenmode:
        """Principal eigenmode of a linear layout with patch elements."""
        layout = LayoutFactory.linear(n_ris, n_amaf, focal_length)
        patch = ElementPattern.patch()
        return principal_eigenmode(coupling_matrix(layout, patch, patch))


class ProfileFactory:
    """Factory for phase profiles and weight vectors."""

    @staticmethod
    def random(n: int, seed: int = 0, provenance: Provenance = Provenance.COMPOSED) -> PhaseProfile:
        rng = np.random.default_rng(seed)
        return PhaseProfile.from_phases(rng.uniform(-np.pi, np.pi, n), provenance)

    @staticmethod
    def random_weights(n: int, seed: int = 0) -> np.ndarray:
        rng = np.random.default_rng(seed)
        return rng.normal(size=n) + 1j * rng.normal(size=n)

    @staticmethod
    def symmetric_weights(n: int, seed: int = 0) -> np.ndarray:
        """Complex weights with w[k] == w[n - 1 - k]."""
        half = ProfileFactory.random_weights((n + 1) // 2, seed)
        return np.concatenate([half, half[: n // 2][::-1]])

    @staticmethod
    def default_grouping(n: int) -> BinaryGrouping:
        """Two symmetric groups scaled from the 40-element layout."""
        return BinaryGrouping.from_fraction(n, 0.175)


class ConfigFactory:
    """Factory for YAML configuration documents."""

    @staticmethod
    def small(**overrides: Any) -> dict[str, Any]:
        """A 16-element design that optimizes in well under a second."""
        document: dict[str, Any] = {
            "layout": {"n_ris": 16, "n_amaf": 2, "focal_length": 4.0},
            "template": {"group_fraction": 0.175, "c": 1.0, "p": 1.0},
            "pattern": {"points": 901, "planar_points": 41},
            "optimization": {
                "specs": {
                    "wide": {
                        "passband_deg": [-20.0, 20.0],
                        "stopbands_deg": [[-90.0, -40.0], [40.0, 90.0]],
                    },
                },
                "solver": {"max_iterations": 40, "dense_points": 901},
                "sensitivity_spec": "wide",
            },
            "footprint": {
                "aim_distance_m": 0.0,
                "x_range_m": [-10.0, 10.0],
                "y_range_m": [-10.0, 10.0],
                "resolution_m": 1.0,
            },
        }
        for section, values in overrides.items():
            if isinstance(values, dict) and isinstance(document.get(section), dict):
                document[section] = {**document[section], **values}
            else:
                document[section] = values
        return document

    @staticmethod
    def write(path: Path, document: dict[str, Any]) -> Path:
        path.write_text(yaml.safe_dump(document, sort_keys=False), encoding="utf-8")
        return path


# =============================================================================
# Fixtures
# =============================================================================


@pytest.fixture(autouse=True)
def _clean_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep FLATTOP_* variables from the host out of the tests."""
    import os

    for key in list(os.environ):
        if key.upper().startswith("FLATTOP_"):
            monkeypatch.delenv(key, raising=False)


@pytest.fixture
def patch() -> ElementPattern:
    return ElementPattern.patch()


@pytest.fixture(scope="session")
def default_layout() -> AmafRisLayout:
    return LayoutFactory.linear()


@pytest.fixture(scope="session")
def default_eigenmode() -> PrincipalEigenmode:
    return LayoutFactory.eigenmode()


@pytest.fixture(scope="session")
def default_grouping() -> BinaryGrouping:
    return BinaryGrouping(n_elements=40, pi_ranges=((6, 12), (27, 33)))


@pytest.fixture(scope="session")
def default_templates(default_eigenmode: PrincipalEigenmode, default_grouping: BinaryGrouping) -> TemplateSet:
    return pragmatic_template(default_eigenmode, default_grouping, c=2.0, p=1.0)


@pytest.fixture(scope="session")
def pencil_weights(default_eigenmode: PrincipalEigenmode, default_templates: TemplateSet) -> EffectiveWeights:
    return effective_weights(default_templates.cophase, default_eigenmode)


@pytest.fixture(scope="session")
def step2_weights(default_eigenmode: PrincipalEigenmode, default_templates: TemplateSet) -> EffectiveWeights:
    return effective_weights(default_templates.step2, default_eigenmode)


@pytest.fixture(scope="session")
def step3_weights(default_eigenmode: PrincipalEigenmode, default_templates: TemplateSet) -> EffectiveWeights:
    return effective_weights(default_templates.step3, default_eigenmode)


@pytest.fixture(scope="session")
def dense_grid() -> AngularGrid:
    return AngularGrid.uniform(1801)


@pytest.fixture
def small_config(tmp_path: Path) -> Path:
    """Path of a small configuration document."""
    return ConfigFactory.write(tmp_path / "small.yaml", ConfigFactory.small())

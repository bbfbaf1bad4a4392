"""
Tests for Configuration Loading.

This module tests:
- Defaults of every section
- Loading YAML documents and reporting invalid ones
- Environment variable overrides
- Round-tripping the resolved configuration
"""

from __future__ import annotations

from pathlib import Path

import pytest

import flattop_ris.settings as settings_module
from flattop_ris.constants import FootprintCombination
from flattop_ris.exceptions import FlatTopConfigurationError
from flattop_ris.models import BinaryGrouping, FlatTopSpec
from flattop_ris.settings import (
    FlatTopSettings,
    TemplateSection,
    configure_settings,
    get_settings,
    load_settings,
)

from tests.conftest import ConfigFactory


pytestmark = [pytest.mark.config, pytest.mark.unit]


# =============================================================================
# Defaults
# =============================================================================


class TestDefaults:
    """Tests for the default configuration."""

    def test_layout(self):
        """Test the default layout is 40 x 2 at F = 9.4."""
        settings = FlatTopSettings()
        assert settings.layout.n_ris == 40
        assert settings.layout.n_amaf == 2
        assert settings.layout.focal_length == 9.4
        assert settings.layout.linear().n_ris == 40
        assert settings.layout.planar().n_amaf == 4

    def test_specs(self):
        """Test the wide and narrow masks are defined."""
        optimization = FlatTopSettings().optimization
        assert set(optimization.specs) == {"wide", "narrow"}
        assert optimization.spec("wide") == FlatTopSpec.wide()
        assert optimization.spec("narrow") == FlatTopSpec.narrow()

    def test_template_grouping(self):
        """Test the default ranges build the 40-element grouping."""
        grouping = FlatTopSettings().template.grouping(40)
        assert grouping == BinaryGrouping(n_elements=40, pi_ranges=((6, 12), (27, 33)))

    def test_fraction_takes_precedence(self):
        """Test a group fraction overrides explicit ranges."""
        section = TemplateSection(pi_ranges=((0, 1), (8, 9)), group_fraction=0.175)
        assert section.grouping(40).pi_ranges == ((6, 12), (27, 33))

    def test_footprint_scenario(self):
        """Test the scenario aims 20 m out and is labelled illustrative."""
        settings = FlatTopSettings()
        scenario = settings.footprint.scenario()
        assert scenario.aim_distance_m == pytest.approx(20.0)
        assert scenario.provenance == "illustrative defaults"
        assert settings.footprint.combination is FootprintCombination.AZ_WIDENED

    def test_unknown_spec(self):
        """Test asking for an undefined mask is a configuration error."""
        with pytest.raises(FlatTopConfigurationError) as exc_info:
            FlatTopSettings().optimization.spec("medium")
        assert exc_info.value.missing_config == ["optimization.specs.medium"]


# =============================================================================
# Loading
# =============================================================================


class TestLoadSettings:
    """Tests for load_settings."""

    def test_shipped_default_config(self):
        """Test configs/default.yaml spells out the built-in defaults."""
        path = Path(__file__).resolve().parent.parent / "configs" / "default.yaml"
        assert load_settings(path).model_dump() == FlatTopSettings().model_dump()

    def test_load_document(self, small_config: Path):
        """Test values from the document replace the defaults."""
        settings = load_settings(small_config)
        assert settings.layout.n_ris == 16
        assert settings.layout.focal_length == 4.0
        assert settings.template.c == 1.0
        assert set(settings.optimization.specs) == {"wide"}
        assert settings.optimization.solver.max_iterations == 40

    def test_no_path_uses_defaults(self):
        """Test loading without a document gives the defaults."""
        assert load_settings().layout.focal_length == 9.4

    def test_overrides(self, small_config: Path, tmp_path: Path):
        """Test keyword overrides win over the document."""
        settings = load_settings(small_config, output_dir=tmp_path / "out")
        assert settings.output_dir == tmp_path / "out"

    def test_missing_focal_length(self, tmp_path: Path):
        """Test a layout without F names the missing field."""
        path = ConfigFactory.write(tmp_path / "bad.yaml", {"layout": {"n_ris": 16, "n_amaf": 2}})
        with pytest.raises(FlatTopConfigurationError) as exc_info:
            load_settings(path)
        assert "layout.focal_length" in exc_info.value.missing_config

    def test_unknown_key(self, tmp_path: Path):
        """Test unknown keys are rejected at every level."""
        top = ConfigFactory.write(tmp_path / "top.yaml", {"bogus": 1})
        nested = ConfigFactory.write(tmp_path / "nested.yaml", {"layout": {"focal_length": 4.0, "bogus": 1}})
        for path in (top, nested):
            with pytest.raises(FlatTopConfigurationError):
                load_settings(path)

    def test_invalid_yaml(self, tmp_path: Path):
        """Test malformed YAML is a configuration error."""
        path = tmp_path / "broken.yaml"
        path.write_text("layout: [unclosed\n", encoding="utf-8")
        with pytest.raises(FlatTopConfigurationError):
            load_settings(path)

    def test_missing_file(self, tmp_path: Path):
        """Test a nonexistent path is a configuration error."""
        with pytest.raises(FlatTopConfigurationError):
            load_settings(tmp_path / "absent.yaml")

    @pytest.mark.parametrize(
        "template",
        [
            {"pi_ranges": [[0, 2]], "group_fraction": None},
            {"group_fraction": 0.45, "lead_fraction": 0.3},
            {"pi_ranges": [[6, 12], [27, 33]], "group_fraction": None},
        ],
        ids=["asymmetric", "oversized-fraction", "ranges-past-array"],
    )
    def test_invalid_grouping(self, tmp_path: Path, template: dict):
        """Test the grouping is built and checked against the layout at load time."""
        document = ConfigFactory.small(template=template)
        with pytest.raises(FlatTopConfigurationError) as exc_info:
            load_settings(ConfigFactory.write(tmp_path / "grouping.yaml", document))
        assert "grouping" in " ".join(exc_info.value.details["errors"])

    def test_symmetric_grouping_loads(self, tmp_path: Path):
        """Test explicit symmetric ranges for the configured array are accepted."""
        document = ConfigFactory.small(template={"pi_ranges": [[2, 4], [11, 13]], "group_fraction": None})
        settings = load_settings(ConfigFactory.write(tmp_path / "sym.yaml", document))
        assert settings.template.grouping(16).is_symmetric

    @pytest.mark.parametrize(
        "section,values",
        [
            ("footprint", {"widened_spec": "medium"}),
            ("optimization", {"sensitivity_spec": "medium"}),
        ],
    )
    def test_dangling_spec_reference(self, tmp_path: Path, section: str, values: dict):
        """Test references to undefined masks are rejected."""
        document = ConfigFactory.small(**{section: values})
        with pytest.raises(FlatTopConfigurationError):
            load_settings(ConfigFactory.write(tmp_path / "dangling.yaml", document))

    def test_round_trip(self, small_config: Path, tmp_path: Path):
        """Test re-emitted YAML loads back to the same document."""
        first = load_settings(small_config).to_yaml()
        path = tmp_path / "resolved.yaml"
        path.write_text(first, encoding="utf-8")
        second = load_settings(path).to_yaml()
        assert second == first


# =============================================================================
# Environment and Globals
# =============================================================================


class TestEnvironment:
    """Tests for environment overrides and the global instance."""

    def test_top_level_env(self, monkeypatch: pytest.MonkeyPatch):
        """Test FLATTOP_EXPORT_COUPLING switches coupling export on."""
        monkeypatch.setenv("FLATTOP_EXPORT_COUPLING", "true")
        assert FlatTopSettings().export_coupling is True

    def test_nested_env(self, monkeypatch: pytest.MonkeyPatch):
        """Test nested fields are reachable with double underscores."""
        monkeypatch.setenv("FLATTOP_OPTIMIZATION__SOLVER__SEED", "7")
        settings = FlatTopSettings()
        assert settings.optimization.solver.seed == 7
        assert set(settings.optimization.specs) == {"wide", "narrow"}

    def test_with_seed(self):
        """Test with_seed replaces only the optimizer seed."""
        settings = FlatTopSettings()
        seeded = settings.with_seed(11)
        assert seeded.optimization.solver.seed == 11
        assert settings.optimization.solver.seed == 0
        assert seeded.layout == settings.layout

    def test_with_output_dir(self, tmp_path: Path):
        """Test with_output_dir replaces the artifact directory."""
        assert FlatTopSettings().with_output_dir(tmp_path).output_dir == tmp_path

    def test_global_settings(self, monkeypatch: pytest.MonkeyPatch):
        """Test configure_settings replaces the instance get_settings returns."""
        monkeypatch.setattr(settings_module, "_settings", None)
        assert get_settings() is get_settings()
        configured = configure_settings(export_coupling=True)
        assert get_settings() is configured
        assert get_settings().export_coupling is True

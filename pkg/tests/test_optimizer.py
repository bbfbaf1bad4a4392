"""
Tests for the Phase-Only Flat-Top Optimizer.

This module tests:
- Flat-top masks and solver settings
- Feasibility, monotone objective trace and determinism
- The ripple safeguard and gauge pinning
- Wide and narrow flat-top targets on the default design (slow)
- The grid sensitivity experiment
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from pydantic import ValidationError

from flattop_ris.constants import InitPolicy, Provenance
from flattop_ris.exceptions import FlatTopValidationError
from flattop_ris.models import (
    FlatTopSpec,
    OptimizationReport,
    OptimizerConfig,
    PhaseProfile,
    PrincipalEigenmode,
    TemplateSet,
)
from flattop_ris.optimizer import grid_sensitivity_experiment, optimize_phases
from flattop_ris.shaping import binary_vector, compose_template, widening_vector

from tests.conftest import LayoutFactory, ProfileFactory


pytestmark = [pytest.mark.optimizer, pytest.mark.unit]


# =============================================================================
# Helpers
# =============================================================================


SMALL_SPEC = FlatTopSpec.from_degrees("small", (-20.0, 20.0), ((-90.0, -40.0), (40.0, 90.0)))
SMALL_CONFIG = OptimizerConfig(max_iterations=60, dense_points=901)


@pytest.fixture(scope="module")
def small_problem() -> tuple[np.ndarray, PhaseProfile]:
    """Taper and template start of a 16-element design."""
    eigenmode = LayoutFactory.eigenmode(n_ris=16, n_amaf=2, focal_length=4.0)
    start = compose_template(
        PhaseProfile.ones(16),
        binary_vector(ProfileFactory.default_grouping(16)),
        widening_vector(16, c=1.0),
    )
    return eigenmode.u1_magnitude, start


def _shaping_start(templates: TemplateSet) -> PhaseProfile:
    return compose_template(PhaseProfile.ones(templates.binary.n_elements), templates.binary, templates.ppf)


# =============================================================================
# Masks and Settings
# =============================================================================


class TestFlatTopSpec:
    """Tests for flat-top masks."""

    def test_wide_default(self):
        """Test the wide mask bounds."""
        spec = FlatTopSpec.wide()
        assert spec.passband == pytest.approx((math.radians(-15.0), math.radians(15.0)))
        assert spec.grid_points == 15

    def test_passband_grid(self):
        """Test the passband is sampled at grid_points angles including its edges."""
        grid = FlatTopSpec.narrow().passband_grid()
        assert grid.size == 15
        assert grid[0] == pytest.approx(math.radians(-6.0))
        assert grid[-1] == pytest.approx(math.radians(6.0))

    def test_stopband_grid(self):
        """Test stopbands are sampled every half degree."""
        grid = FlatTopSpec.wide().stopband_grid()
        assert grid.size == 2 * 135
        assert np.all(np.abs(grid) >= math.radians(23.0) - 1e-12)

    def test_no_stopbands(self):
        """Test a passband-only mask has an empty stopband grid."""
        spec = FlatTopSpec.from_degrees("bare", (-10.0, 10.0))
        assert spec.stopband_grid().size == 0

    def test_with_grid_points(self):
        """Test resampling changes only the grid density."""
        spec = FlatTopSpec.wide()
        coarse = spec.with_grid_points(5)
        assert coarse.grid_points == 5
        assert coarse.model_dump(exclude={"grid_points"}) == spec.model_dump(exclude={"grid_points"})

    @pytest.mark.parametrize(
        "passband,stopbands",
        [
            ((10.0, -10.0), ()),
            ((-10.0, 10.0), ((5.0, 30.0),)),
            ((-100.0, 10.0), ()),
        ],
        ids=["reversed", "overlap", "outside"],
    )
    def test_invalid_masks(self, passband, stopbands):
        """Test malformed masks are rejected."""
        with pytest.raises(ValidationError):
            FlatTopSpec.from_degrees("bad", passband, stopbands)

    def test_grid_points_minimum(self):
        """Test the passband needs at least two grid points."""
        with pytest.raises(ValidationError):
            FlatTopSpec.from_degrees("bad", (-10.0, 10.0), grid_points=1)

    def test_config_validation(self):
        """Test solver settings are range checked."""
        with pytest.raises(ValidationError):
            OptimizerConfig(backtrack_factor=1.0)
        with pytest.raises(ValidationError):
            OptimizerConfig(max_iterations=0)


# =============================================================================
# Optimizer Behaviour
# =============================================================================


class TestOptimizePhases:
    """Tests for optimize_phases on small instances."""

    def test_single_element_returns_start(self):
        """Test a one-element aperture has nothing to optimize."""
        start = PhaseProfile.from_phases(np.array([0.7]), Provenance.COMPOSED)
        report = optimize_phases(np.array([1.0]), start, FlatTopSpec.wide())
        assert report.iterations == 0
        assert report.converged
        assert report.phases.values[0] == pytest.approx(start.values[0])
        assert report.phases.provenance is Provenance.OPTIMIZED

    def test_ripple_not_worse(self, small_problem):
        """Test the result never has more grid ripple than the start."""
        modulus, start = small_problem
        report = optimize_phases(modulus, start, SMALL_SPEC, SMALL_CONFIG)
        assert report.final_ripple_db <= report.initial_ripple_db

    def test_trace_nonincreasing(self, small_problem):
        """Test accepted iterates never raise the objective."""
        modulus, start = small_problem
        report = optimize_phases(modulus, start, SMALL_SPEC, SMALL_CONFIG)
        assert report.objective_trace.size == report.iterations + 1
        assert np.all(np.diff(report.objective_trace) <= 1e-12 * (1.0 + np.abs(report.objective_trace[:-1])))

    def test_callback_sees_every_iterate(self, small_problem):
        """Test the callback is invoked once per accepted step with the traced value."""
        modulus, start = small_problem
        calls: list[tuple[int, np.ndarray, float]] = []
        report = optimize_phases(
            modulus, start, SMALL_SPEC, SMALL_CONFIG, callback=lambda i, phi, v: calls.append((i, phi, v))
        )
        assert [i for i, _, _ in calls] == list(range(1, report.iterations + 1))
        np.testing.assert_allclose([v for _, _, v in calls], report.objective_trace[1:])
        for _, phi, _ in calls:
            weights = modulus * np.exp(1j * phi)
            np.testing.assert_allclose(np.abs(weights), modulus, atol=1e-12)

    def test_modulus_preserved(self, small_problem):
        """Test the optimized profile is unit modulus."""
        modulus, start = small_problem
        report = optimize_phases(modulus, start, SMALL_SPEC, SMALL_CONFIG)
        np.testing.assert_allclose(np.abs(report.phases.values), 1.0, atol=1e-12)

    def test_pinned_element_keeps_phase(self, small_problem):
        """Test the largest-modulus element keeps its starting phase."""
        modulus, start = small_problem
        report = optimize_phases(modulus, start, SMALL_SPEC, SMALL_CONFIG)
        pinned = int(np.argmax(modulus))
        assert report.phases.values[pinned] == pytest.approx(start.values[pinned], abs=1e-12)

    def test_deterministic(self, small_problem):
        """Test two runs with the same inputs agree exactly."""
        modulus, start = small_problem
        first = optimize_phases(modulus, start, SMALL_SPEC, SMALL_CONFIG)
        second = optimize_phases(modulus, start, SMALL_SPEC, SMALL_CONFIG)
        np.testing.assert_array_equal(first.phases.values, second.phases.values)
        np.testing.assert_array_equal(first.objective_trace, second.objective_trace)

    def test_random_start_uses_seed(self, small_problem):
        """Test random starts repeat under a seed and differ across seeds."""
        modulus, start = small_problem

        def run(seed: int) -> OptimizationReport:
            config = SMALL_CONFIG.model_copy(update={"init_policy": InitPolicy.RANDOM, "seed": seed, "max_iterations": 5})
            return optimize_phases(modulus, start, SMALL_SPEC, config)

        np.testing.assert_array_equal(run(3).phases.values, run(3).phases.values)
        assert not np.allclose(run(3).phases.values, run(4).phases.values)

    def test_iteration_cap(self, small_problem):
        """Test max_iterations bounds the run."""
        modulus, start = small_problem
        config = SMALL_CONFIG.model_copy(update={"max_iterations": 3, "tolerance_db": 1e-12})
        report = optimize_phases(modulus, start, SMALL_SPEC, config)
        assert report.iterations <= 3

    def test_temperature_annealed(self, small_problem):
        """Test the temperature never drops below its floor."""
        modulus, start = small_problem
        config = SMALL_CONFIG.model_copy(update={"anneal_every": 1, "max_iterations": 20, "tolerance_db": 1e-12})
        report = optimize_phases(modulus, start, SMALL_SPEC, config)
        assert config.min_temperature <= report.final_temperature <= config.temperature

    def test_dense_verification(self, small_problem):
        """Test usefulness needs a flat dense pattern that the grid samples cover."""
        modulus, start = small_problem
        report = optimize_phases(modulus, start, SMALL_SPEC, SMALL_CONFIG)
        expected = report.dense_ripple_db <= 3.0 and report.dense_ripple_db - report.final_ripple_db <= 1.0
        assert report.useful == expected
        assert report.coverage_gap_db == pytest.approx(report.dense_ripple_db - report.final_ripple_db)
        assert report.metrics.passband_samples > SMALL_SPEC.grid_points

    def test_length_mismatch(self, small_problem):
        """Test modulus and start must have the same length."""
        modulus, _ = small_problem
        with pytest.raises(FlatTopValidationError):
            optimize_phases(modulus, PhaseProfile.ones(15), SMALL_SPEC)

    def test_negative_modulus(self):
        """Test a negative modulus is rejected."""
        with pytest.raises(FlatTopValidationError):
            optimize_phases(np.array([1.0, -0.5]), PhaseProfile.ones(2), SMALL_SPEC)

    def test_report_rejects_increasing_trace(self, small_problem):
        """Test reports refuse an objective trace that goes up."""
        modulus, start = small_problem
        report = optimize_phases(modulus, start, SMALL_SPEC, SMALL_CONFIG.model_copy(update={"max_iterations": 2}))
        with pytest.raises(ValidationError):
            OptimizationReport(**{**dict(report), "objective_trace": [1.0, 2.0]})


# =============================================================================
# Grid Sensitivity
# =============================================================================


class TestGridSensitivity:
    """Tests for the grid density experiment."""

    def test_runs_per_density(self, small_problem):
        """Test one run per density with otherwise identical masks."""
        modulus, start = small_problem
        report = grid_sensitivity_experiment(modulus, start, SMALL_SPEC, SMALL_CONFIG, (5, 15))
        assert report.grid_points == [5, 15]
        coarse, fine = report.run_for(5), report.run_for(15)
        assert coarse.spec.model_dump(exclude={"grid_points"}) == fine.spec.model_dump(exclude={"grid_points"})
        for run in report.runs:
            assert isinstance(run.converged, bool)
            assert run.useful == run.metrics.is_useful(grid_ripple_db=run.final_ripple_db)

    def test_unknown_density(self, small_problem):
        """Test looking up a density that was not run."""
        modulus, start = small_problem
        report = grid_sensitivity_experiment(modulus, start, SMALL_SPEC, SMALL_CONFIG, (5,))
        with pytest.raises(KeyError):
            report.run_for(15)


# =============================================================================
# Default Design (slow)
# =============================================================================


@pytest.mark.slow
class TestDefaultDesign:
    """Flat-top targets for the 40-element design."""

    def test_wide_flat_top(self, default_eigenmode: PrincipalEigenmode, default_templates: TemplateSet):
        """Test the wide mask reaches at most 1.7 dB ripple on its grid and is useful."""
        report = optimize_phases(default_eigenmode.u1_magnitude, _shaping_start(default_templates), FlatTopSpec.wide())
        assert report.final_ripple_db <= 1.7
        assert report.final_ripple_db <= report.initial_ripple_db
        assert report.useful

    def test_narrow_flat_top(self, default_eigenmode: PrincipalEigenmode, default_templates: TemplateSet):
        """Test the narrow mask reaches at most 0.8 dB ripple on its grid and is useful."""
        report = optimize_phases(default_eigenmode.u1_magnitude, _shaping_start(default_templates), FlatTopSpec.narrow())
        assert report.final_ripple_db <= 0.8
        assert report.useful

    def test_grid_sensitivity(self, default_eigenmode: PrincipalEigenmode, default_templates: TemplateSet):
        """Test 5 grid points converge to a useless beam while 15 give a useful one."""
        report = grid_sensitivity_experiment(
            default_eigenmode.u1_magnitude, _shaping_start(default_templates), FlatTopSpec.wide()
        )
        coarse, fine = report.run_for(5), report.run_for(15)
        assert coarse.converged
        assert coarse.final_ripple_db < 0.1
        assert coarse.coverage_gap_db > 1.0
        assert not coarse.useful

        assert fine.final_ripple_db <= 1.7
        assert fine.coverage_gap_db <= 1.0
        assert fine.useful

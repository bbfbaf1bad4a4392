"""
Tests for Array Layouts and Ray Geometry.

This module tests:
- Layout construction and validation
- Element positions
- Feed-to-surface ray distances and angles
- F/D and central element selection
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from pydantic import ValidationError

from flattop_ris.exceptions import FlatTopValidationError
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
from flattop_ris.models import AmafRisLayout, LinearLayout, PlanarLayout

from tests.conftest import LayoutFactory


pytestmark = [pytest.mark.geometry, pytest.mark.unit]


# =============================================================================
# Layout Models
# =============================================================================


class TestLayouts:
    """Tests for layout model construction."""

    def test_default_linear_layout(self, default_layout: AmafRisLayout):
        """Test the default 40-element RIS with a 2-element AMAF at F = 9.4."""
        assert default_layout.n_ris == 40
        assert default_layout.n_amaf == 2
        assert default_layout.focal_length == 9.4
        assert not default_layout.is_planar

    def test_planar_layout_counts(self):
        """Test square planar layouts count rows times columns."""
        layout = LayoutFactory.planar(n_ris=8, n_amaf=2)
        assert layout.is_planar
        assert layout.n_ris == 64
        assert layout.n_amaf == 4
        assert layout.ris.shape == (8, 8)

    def test_mixed_dimensionality_rejected(self):
        """Test a linear RIS cannot be fed by a planar AMAF."""
        with pytest.raises(ValidationError):
            AmafRisLayout(ris=LinearLayout(n_elements=8), amaf=PlanarLayout.square(2), focal_length=3.0)

    @pytest.mark.parametrize("field,value", [("n_elements", 0), ("spacing", 0.0), ("spacing", -1.0)])
    def test_invalid_linear_layout(self, field: str, value: float):
        """Test element count and spacing must be positive."""
        with pytest.raises(ValidationError):
            LinearLayout(**{field: value})

    def test_nonpositive_focal_length_rejected(self):
        """Test F must be positive."""
        with pytest.raises(ValidationError):
            AmafRisLayout.linear(focal_length=0.0)

    def test_layouts_are_frozen(self, default_layout: AmafRisLayout):
        """Test layouts cannot be mutated after construction."""
        with pytest.raises(ValidationError):
            default_layout.focal_length = 5.0  # type: ignore[misc]


# =============================================================================
# Positions
# =============================================================================


class TestPositions:
    """Tests for element coordinates."""

    def test_linear_positions_centered(self):
        """Test positions are centered on the origin at unit pitch."""
        x = element_positions(LinearLayout(n_elements=40))
        assert x[0] == pytest.approx(-19.5)
        assert x[-1] == pytest.approx(19.5)
        np.testing.assert_allclose(np.diff(x), 1.0)
        assert x.sum() == pytest.approx(0.0, abs=1e-12)

    def test_spacing_scales_positions(self):
        """Test positions scale with the pitch."""
        x = element_positions(LinearLayout(n_elements=3, spacing=2.5))
        np.testing.assert_allclose(x, [-2.5, 0.0, 2.5])

    def test_planar_positions_row_major(self):
        """Test flat index is row * n_cols + col with x along columns."""
        layout = PlanarLayout(rows=LinearLayout(n_elements=2), cols=LinearLayout(n_elements=3))
        xy = planar_positions(layout)
        assert xy.shape == (6, 2)
        np.testing.assert_allclose(xy[:3, 0], [-1.0, 0.0, 1.0])
        np.testing.assert_allclose(xy[:3, 1], -0.5)
        np.testing.assert_allclose(xy[3:, 1], 0.5)

    def test_planes(self, default_layout: AmafRisLayout):
        """Test the RIS sits at z = 0 and the AMAF at z = -F."""
        np.testing.assert_allclose(ris_coordinates(default_layout)[:, 2], 0.0)
        np.testing.assert_allclose(amaf_coordinates(default_layout)[:, 2], -9.4)


# =============================================================================
# Ray Geometry
# =============================================================================


class TestRayGeometry:
    """Tests for feed-to-surface rays."""

    def test_edge_ray(self, default_layout: AmafRisLayout):
        """Test the ray from AMAF element 0 to RIS element 0."""
        ray = ray_geometry(default_layout, m=0, n=0)
        assert ray.distance == pytest.approx(math.hypot(19.0, 9.4))
        assert ray.departure_angle == pytest.approx(math.atan2(19.0, 9.4))
        assert ray.arrival_angle == ray.departure_angle

    def test_on_axis_ray(self):
        """Test an element directly above the feed sees distance F and angle 0."""
        layout = LayoutFactory.linear(n_ris=1, n_amaf=1, focal_length=3.0)
        ray = ray_geometry(layout, 0, 0)
        assert ray.distance == pytest.approx(3.0)
        assert ray.arrival_angle == 0.0

    def test_ray_table_matches_single_rays(self, default_layout: AmafRisLayout):
        """Test the vectorized table agrees with per-pair rays."""
        distance, angle = ray_table(default_layout)
        assert distance.shape == (40, 2)
        for n, m in [(0, 0), (0, 1), (19, 0), (39, 1)]:
            ray = ray_geometry(default_layout, m=m, n=n)
            assert distance[n, m] == pytest.approx(ray.distance)
            assert angle[n, m] == pytest.approx(ray.arrival_angle)

    def test_distance_at_least_focal_length(self, default_layout: AmafRisLayout):
        """Test no ray is shorter than the plane separation."""
        distance, angle = ray_table(default_layout)
        assert np.all(distance >= 9.4 - 1e-12)
        assert np.all((angle >= 0.0) & (angle < math.pi / 2))

    @pytest.mark.parametrize("m,n", [(-1, 0), (2, 0), (0, -1), (0, 40)])
    def test_index_out_of_range(self, default_layout: AmafRisLayout, m: int, n: int):
        """Test out-of-range element indices are rejected."""
        with pytest.raises(FlatTopValidationError):
            ray_geometry(default_layout, m=m, n=n)


# =============================================================================
# Derived Quantities
# =============================================================================


class TestDerived:
    """Tests for F/D and central element selection."""

    def test_default_f_over_d(self, default_layout: AmafRisLayout):
        """Test F/D of the default layout is 0.235."""
        assert f_over_d(default_layout) == pytest.approx(0.235, abs=1e-12)

    def test_planar_f_over_d_uses_side(self):
        """Test a square planar layout uses its side as D."""
        assert f_over_d(LayoutFactory.planar(n_ris=40)) == pytest.approx(0.235)

    def test_central_indices_even(self):
        """Test an even linear layout has two central elements."""
        assert central_indices(LinearLayout(n_elements=40)).tolist() == [19, 20]

    def test_central_indices_odd(self):
        """Test an odd linear layout has one central element."""
        assert central_indices(LinearLayout(n_elements=5)).tolist() == [2]

    def test_central_indices_planar(self):
        """Test an even square layout has four central elements."""
        assert central_indices(PlanarLayout.square(4)).tolist() == [5, 6, 9, 10]

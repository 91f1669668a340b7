"""Tests for adversarial functions and the integral verifier."""

import numpy as np
import pytest
from pydantic import ValidationError

from drift_gauntlet.adversaries import (
    BoundaryEffect,
    ConstantAfter,
    LimitingWindows,
    PeriodicAfterMatchedMean,
    PeriodicFunction,
    gen_periodic,
    sample_function_to_profile,
    verify_function_limiting,
    verify_profile,
)
from drift_gauntlet.adversaries.limiting import (
    default_t_grid,
    integrate_piecewise,
    parse_function,
    parse_limiting_scheme,
)
from drift_gauntlet.core import (
    Chunked,
    FixedReference,
    GrowingReference,
    SlidingPair,
    union_scheme,
)
from drift_gauntlet.errors import QuadratureUnstable, RangeViolation


class TestFunctions:
    """Tests for the function families themselves."""

    def test_square_wave(self):
        f = PeriodicFunction(l=4.0)
        values = f([0.0, 1.9, 2.0, 3.9, 4.0, -1.0])
        np.testing.assert_array_equal(values, [1, 1, 0, 0, 1, 0])
        assert f.discontinuous

    def test_sine_wave_is_continuous(self):
        f = PeriodicFunction(l=2.0, shape="sine")
        assert not f.discontinuous
        assert f(0.5) == pytest.approx(1.0)

    def test_constant_after_level(self):
        f = ConstantAfter(a=4.0, head=(1.0, 0.0, 0.0, 1.0))
        assert f.level == 0.5
        np.testing.assert_array_equal(f([0.5, 1.5, 3.5, 10.0]), [1.0, 0.0, 1.0, 0.5])

    def test_constant_after_wrong_level(self):
        with pytest.raises(ValidationError, match="head mean"):
            ConstantAfter(a=2.0, head=(1.0, 0.0), c=0.25)

    def test_periodic_after_mean_mismatch(self):
        with pytest.raises(ValidationError, match="differs"):
            PeriodicAfterMatchedMean(a=2.0, l=2.0, head=(1.0, 1.0), tail=(1.0, 0.0))

    def test_breakpoints_sorted_inside_interval(self):
        f = PeriodicFunction(l=4.0, duty=0.25)
        np.testing.assert_allclose(f.breakpoints(0.5, 8.5), [1.0, 4.0, 5.0, 8.0])

    def test_parse_function(self):
        f = parse_function('{"family": "boundary_effect", "l": 3}')
        assert isinstance(f, BoundaryEffect)
        assert f.q_amplitude == 0.25

    def test_parse_function_file(self, tmp_path):
        path = tmp_path / "f.yaml"
        path.write_text("family: periodic\nl: 5\nshape: sine\n")
        f = parse_function(path)
        assert isinstance(f, PeriodicFunction)
        assert f.shape == "sine"


class TestIntegration:
    def test_square_wave_exact(self):
        f = PeriodicFunction(l=4.0)
        assert integrate_piecewise(f, 0.0, 10.0) == pytest.approx(6.0, abs=1e-9)

    def test_sine_integral(self):
        f = PeriodicFunction(l=2.0, shape="sine")
        assert integrate_piecewise(f, 0.0, 2.0) == pytest.approx(1.0, abs=1e-10)

    def test_empty_interval(self):
        assert integrate_piecewise(PeriodicFunction(l=1.0), 3.0, 3.0) == 0.0

    def test_too_few_panels(self):
        f = PeriodicFunction(l=1.0)
        with pytest.raises(QuadratureUnstable):
            integrate_piecewise(f, 0.0, 10.0, quad_points=8)


class TestVerifyFunctionLimiting:
    """Tests for verify_function_limiting."""

    def test_periodic_on_sliding(self):
        report = verify_function_limiting(PeriodicFunction(l=4.0), SlidingPair(l=4))
        assert report.max_violation <= 1e-8
        assert report.range_ok
        assert report.n_points == 50

    def test_periodic_sine_on_sliding(self):
        f = PeriodicFunction(l=3.0, shape="sine")
        assert verify_function_limiting(f, SlidingPair(l=3)).max_violation <= 1e-8

    def test_periodic_on_wrong_length(self):
        report = verify_function_limiting(PeriodicFunction(l=4.0), SlidingPair(l=3))
        assert report.max_violation > 1e-3
        assert report.worst_t is not None

    def test_constant_after_on_growing(self):
        f = ConstantAfter(a=4.0, head=(1.0, 0.0, 0.0, 1.0))
        report = verify_function_limiting(f, GrowingReference(a=4, l=2))
        assert report.max_violation <= 1e-8
        assert report.range_ok

    def test_periodic_after_on_fixed(self):
        f = PeriodicAfterMatchedMean(
            a=4.0, l=2.0, head=(1.0, 1.0, 0.0, 0.0), tail=(0.0, 1.0)
        )
        report = verify_function_limiting(f, FixedReference(a=4, l=2))
        assert report.max_violation <= 1e-8
        growing = verify_function_limiting(f, GrowingReference(a=4, l=2))
        assert growing.max_violation > 1e-3

    def test_unmatched_mean_detected(self):
        f = PeriodicAfterMatchedMean(
            a=4.0, l=2.0, head=(1.0, 1.0, 1.0, 0.0), tail=(0.0, 1.0), check_mean=False
        )
        report = verify_function_limiting(f, FixedReference(a=4, l=2))
        assert report.max_violation == pytest.approx(2.0, rel=1e-6)

    def test_boundary_effect_interior(self):
        """Test the kernel member stays in range only on a narrow grid."""
        f = BoundaryEffect(l=1.0)
        grid = np.linspace(-1, 1, 21)
        narrow = verify_function_limiting(f, SlidingPair(l=1), t_grid=grid)
        assert narrow.max_violation <= 1e-6
        assert narrow.range_ok
        wide = verify_function_limiting(f, SlidingPair(l=1))
        assert wide.max_violation <= 1e-6
        assert not wide.range_ok

    def test_union_reports_worst_member(self):
        f = PeriodicFunction(l=4.0)
        members = [SlidingPair(l=4), SlidingPair(l=3)]
        union = verify_function_limiting(f, union_scheme(members))
        worst = verify_function_limiting(f, SlidingPair(l=3))
        assert union.max_violation == pytest.approx(worst.max_violation)
        assert union.n_points == 100

    def test_chunked_filters_grid(self):
        f = PeriodicFunction(l=4.0)
        scheme = Chunked(inner=SlidingPair(l=4), c=2)
        report = verify_function_limiting(f, scheme, t_grid=[4.0, 5.0, 6.0, 7.5])
        assert report.n_points == 2

    def test_chunked_default_grid_on_multiples(self):
        f = PeriodicFunction(l=4.0)
        grid = default_t_grid(Chunked(inner=SlidingPair(l=4), c=3), f)
        assert np.allclose(np.mod(grid, 3), 0)

    def test_real_window_lengths(self):
        """Test a period of 2.5 against its own sliding length."""
        f = PeriodicFunction(l=2.5, duty=0.4)
        windows = LimitingWindows(type="sliding", l=2.5)
        report = verify_function_limiting(f, windows)
        assert report.max_violation <= 1e-8
        assert report.n_points == 50
        off = verify_function_limiting(f, LimitingWindows(type="sliding", l=2.0))
        assert off.max_violation > 1e-3

    def test_real_fixed_reference(self):
        f = PeriodicAfterMatchedMean(a=2.5, l=1.5, head=(1.0, 0.0), tail=(0.0, 1.0))
        windows = LimitingWindows(type="fixed", a=2.5, l=1.5)
        assert verify_function_limiting(f, windows).max_violation <= 1e-8
        growing = LimitingWindows(type="growing", a=2.5, l=1.5)
        assert verify_function_limiting(f, growing).max_violation > 1e-3

    def test_split_before_domain_rejected(self):
        f = ConstantAfter(a=2.0, head=(1.0, 0.0))
        with pytest.raises(ValueError, match="not admissible"):
            verify_function_limiting(f, SlidingPair(l=2), t_grid=[1.0])


class TestLimitingWindows:
    """Tests for real-valued window lengths."""

    def test_from_scheme(self):
        windows = LimitingWindows.from_scheme(FixedReference(a=4, l=2))
        assert windows == LimitingWindows(type="fixed", a=4.0, l=2.0)
        assert windows.windows(6.0) == ((0.0, 4.0), (6.0, 8.0))

    def test_reference_length_required(self):
        with pytest.raises(ValidationError):
            LimitingWindows(type="growing", l=1.0)
        with pytest.raises(ValidationError):
            LimitingWindows(type="sliding", a=1.0, l=1.0)

    def test_parse_keeps_real_lengths(self):
        windows = parse_limiting_scheme('{"type": "sliding", "l": 2.5, "stride": 3}')
        assert windows == LimitingWindows(type="sliding", l=2.5, stride=3)
        union = parse_limiting_scheme(
            {"type": "union", "members": [{"type": "sliding", "l": 2}]}
        )
        assert not isinstance(union, LimitingWindows)


class TestSampleFunctionToProfile:
    """Tests for sample_function_to_profile."""

    def test_constant(self):
        f = ConstantAfter(a=1.0, head=(0.5,))
        profile = sample_function_to_profile(f, 5, (0.0, 4.0))
        assert profile.v == (0.5,) * 5

    def test_square_wave_matches_generator(self):
        f = PeriodicFunction(l=4.0)
        profile = sample_function_to_profile(f, 12, (0.0, 11.0))
        assert profile.v == gen_periodic(4, 2, 12).v
        assert profile.provenance.name == "periodic_sampled"

    def test_sampled_constant_after_is_certified(self):
        f = ConstantAfter(a=4.0, head=(1.0, 0.0, 0.0, 1.0))
        profile = sample_function_to_profile(f, 12, (0.0, 11.0))
        check = verify_profile(profile, GrowingReference(a=4, l=2))
        assert check.exact_zero
        assert check.verdict == "adversarial"

    def test_boundary_effect_out_of_range(self):
        with pytest.raises(RangeViolation):
            sample_function_to_profile(BoundaryEffect(l=1.0), 101, (0.0, 10.0))

    def test_needs_two_samples(self):
        with pytest.raises(ValueError):
            sample_function_to_profile(PeriodicFunction(l=1.0), 1, (0.0, 1.0))

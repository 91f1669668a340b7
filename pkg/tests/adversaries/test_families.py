"""Tests for the adversarial profile families."""

import numpy as np
import pytest

from drift_gauntlet.adversaries import (
    PeriodicFamily,
    RandConstFamily,
    RandPeriodicFamily,
    gen_periodic,
    gen_rand_const,
    gen_rand_periodic,
    get_available_families,
    parse_family,
    verify_profile,
)
from drift_gauntlet.adversaries.exact import max_exact_residual
from drift_gauntlet.adversaries.rand_periodic import feasible_head_ones
from drift_gauntlet.core import (
    FixedReference,
    GrowingReference,
    SlidingPair,
    build_weight_matrix,
)
from drift_gauntlet.errors import NoFeasibleDuty, OddHead


def _rng(seed: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _residual(profile, scheme):
    return max_exact_residual(build_weight_matrix(scheme, profile.n), profile.v)


class TestGenPeriodic:
    """Tests for gen_periodic."""

    def test_small_square_wave(self):
        profile = gen_periodic(2, 1, 6)
        assert profile.v == (1.0, 0.0, 1.0, 0.0, 1.0, 0.0)
        assert profile.exact
        assert profile.provenance.name == "periodic"

    def test_experiment_profile(self):
        profile = gen_periodic(100, 50, 1000)
        v = profile.array
        assert v[:50].sum() == 50
        assert v[50:100].sum() == 0
        assert v.sum() == 500

    def test_hidden_from_targets(self):
        profile = gen_periodic(100, 50, 1000)
        assert _residual(profile, SlidingPair(l=100)) == 0
        assert _residual(profile, FixedReference(a=100, l=100)) == 0

    def test_visible_to_longer_reference(self):
        """Test a reference of 150 samples sees mean 2/3, not 1/2."""
        profile = gen_periodic(100, 50, 1000)
        assert _residual(profile, FixedReference(a=150, l=100)) > 0
        assert _residual(profile, GrowingReference(a=100, l=100)) > 0

    @pytest.mark.parametrize("l, duty, n", [(4, 0, 8), (4, 4, 8), (9, 3, 8)])
    def test_invalid_parameters(self, l, duty, n):
        with pytest.raises(ValueError):
            gen_periodic(l, duty, n)


class TestGenRandConst:
    """Tests for gen_rand_const."""

    def test_small_example(self):
        profile = gen_rand_const(4, 8, _rng(), blocks=4)
        v = profile.array
        assert v[:4].sum() == 2
        assert set(v[:4]) == {0.0, 1.0}
        assert np.all(v[4:] == 0.5)

    def test_default_blocks_are_long_runs(self):
        v = gen_rand_const(100, 1000, _rng(3)).array
        head = v[:100]
        assert head[0] != head[99]
        assert np.all(head[:50] == head[0])
        assert np.all(head[50:] == head[99])

    @pytest.mark.parametrize("seed", range(5))
    def test_hidden_from_reference_schemes(self, seed):
        profile = gen_rand_const(100, 1000, _rng(seed), blocks=10)
        assert _residual(profile, GrowingReference(a=100, l=100)) == 0
        assert _residual(profile, FixedReference(a=100, l=100)) == 0

    def test_longer_fixed_reference_still_blind(self):
        """Test fixed(150) averages head and tail to one half as well."""
        profile = gen_rand_const(100, 1000, _rng(1))
        assert _residual(profile, FixedReference(a=150, l=100)) == 0

    def test_shorter_reference_sees_head(self):
        profile = gen_rand_const(150, 1000, _rng(1))
        assert _residual(profile, FixedReference(a=100, l=100)) > 0
        assert _residual(profile, GrowingReference(a=100, l=100)) > 0

    def test_odd_head(self):
        with pytest.raises(OddHead):
            gen_rand_const(5, 10, _rng())

    def test_bad_blocks(self):
        with pytest.raises(ValueError, match="blocks"):
            gen_rand_const(10, 20, _rng(), blocks=3)

    def test_seeded(self):
        first = gen_rand_const(20, 40, _rng(9), blocks=20)
        second = gen_rand_const(20, 40, _rng(9), blocks=20)
        assert first == second

    def test_alternating_tail_is_binary(self):
        v = gen_rand_const(100, 1000, _rng(2), tail="alternating").array
        assert set(v) == {0.0, 1.0}
        assert v[100:104].tolist() == [1.0, 0.0, 1.0, 0.0]

    @pytest.mark.parametrize(
        "scheme",
        [
            FixedReference(a=100, l=100),
            FixedReference(a=150, l=100),
            GrowingReference(a=100, l=100, stride=2),
            GrowingReference(a=100, l=100, stride=10),
        ],
        ids=repr,
    )
    def test_alternating_tail_hidden_on_even_splits(self, scheme):
        profile = gen_rand_const(100, 1000, _rng(5), tail="alternating")
        assert _residual(profile, scheme) == 0

    def test_alternating_tail_seen_on_odd_splits(self):
        profile = gen_rand_const(100, 1000, _rng(5), tail="alternating")
        assert _residual(profile, GrowingReference(a=100, l=100)) > 0

    def test_unknown_tail(self):
        with pytest.raises(ValueError, match="tail"):
            gen_rand_const(10, 20, _rng(), tail="ramp")

    def test_alternating_tail_needs_even_window(self):
        with pytest.raises(ValueError, match="even window"):
            RandConstFamily(a=10, l=9, tail="alternating")


class TestGenRandPeriodic:
    """Tests for gen_rand_periodic."""

    def test_feasible_head_ones(self):
        assert feasible_head_ones(4, 2) == 2
        assert feasible_head_ones(100, 100) == 50
        assert feasible_head_ones(150, 100) == 75

    def test_no_feasible_duty(self):
        with pytest.raises(NoFeasibleDuty):
            feasible_head_ones(3, 1)
        with pytest.raises(NoFeasibleDuty):
            RandPeriodicFamily(a=3, l=1)

    def test_small_example(self):
        v = gen_rand_periodic(4, 2, 8, _rng()).array
        assert v[:4].sum() == 2
        assert v[4:6].sum() == 1
        assert np.array_equal(v[4:6], v[6:8])

    @pytest.mark.parametrize("seed", range(5))
    def test_hidden_from_fixed_reference(self, seed):
        profile = gen_rand_periodic(100, 100, 1000, _rng(seed))
        assert _residual(profile, FixedReference(a=100, l=100)) == 0

    def test_quarter_phase_blinds_longer_reference(self):
        """Test a tail phase of l/4 also hides the drift from fixed(a + l/2)."""
        for seed in range(1000):
            profile = gen_rand_periodic(100, 100, 1000, _rng(seed))
            if profile.provenance.params["phase"] in (25, 75):
                break
        else:
            pytest.fail("no draw used a quarter phase")
        assert _residual(profile, FixedReference(a=150, l=100)) == 0

    @pytest.mark.parametrize("seed", range(40))
    def test_family_stays_visible_to_longer_reference(self, seed):
        profile = RandPeriodicFamily(a=100, l=100).generate(1000, _rng(seed))
        assert profile.provenance.params["phase"] not in (25, 75)
        assert _residual(profile, FixedReference(a=100, l=100)) == 0
        assert _residual(profile, FixedReference(a=150, l=100)) > 0

    def test_visible_to_can_be_disabled(self):
        family = RandPeriodicFamily(a=100, l=100, keep_visible=False)
        phases = {
            family.generate(1000, _rng(seed)).provenance.params["phase"]
            for seed in range(1000)
        }
        assert phases & {25, 75}

    def test_visible_to_growing_reference(self):
        profile = gen_rand_periodic(100, 100, 1000, _rng(2))
        assert _residual(profile, GrowingReference(a=100, l=100)) > 0

    def test_stream_not_plainly_periodic(self):
        v = gen_rand_periodic(100, 100, 1000, _rng(4)).array
        assert not np.array_equal(v[:-100], v[100:])

    def test_provenance_params(self):
        profile = gen_rand_periodic(150, 100, 1000, _rng(0))
        params = profile.provenance.params
        assert params["k"] == 75
        assert params["m"] == 50

    def test_invalid_lengths(self):
        with pytest.raises(ValueError):
            gen_rand_periodic(10, 5, 10, _rng())
        with pytest.raises(ValueError):
            gen_rand_periodic(8, 5, 10, _rng())


class TestFamilies:
    """Tests for the family classes and their discovery."""

    @pytest.mark.parametrize(
        "family",
        [
            PeriodicFamily(l=10),
            RandConstFamily(a=10, l=10),
            RandConstFamily(a=20, l=10, blocks=4),
            RandConstFamily(a=10, l=10, tail="alternating"),
            RandPeriodicFamily(a=10, l=10),
        ],
        ids=repr,
    )
    def test_members_hide_from_targets(self, family):
        for seed in range(3):
            profile = family.generate(100, _rng(seed))
            for scheme in family.target_schemes():
                check = verify_profile(profile, scheme)
                assert check.exact_zero
                assert check.verdict == "adversarial"

    def test_labels(self):
        assert PeriodicFamily().label == "Periodic"
        assert RandConstFamily(a=150).label == "Rand.Const (150)"
        assert RandPeriodicFamily(a=100).label == "Rand.Per. (100)"

    def test_repr_lists_params(self):
        assert repr(PeriodicFamily(l=4, duty=1)) == "PeriodicFamily(l=4, duty=1)"

    def test_default_duty(self):
        assert PeriodicFamily(l=7).duty == 3

    def test_available_families(self):
        families = get_available_families()
        assert {"periodic", "rand_const", "rand_periodic"} <= set(families)

    def test_parse_family(self):
        family = parse_family("rand_const:a=50,l=25")
        assert isinstance(family, RandConstFamily)
        assert family.a == 50
        assert family.l == 25
        assert isinstance(parse_family("periodic"), PeriodicFamily)

    def test_parse_family_errors(self):
        with pytest.raises(ValueError, match="unknown family"):
            parse_family("sawtooth")
        with pytest.raises(ValueError, match="key=value"):
            parse_family("periodic:l")

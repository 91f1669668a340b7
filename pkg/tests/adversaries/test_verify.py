"""Tests for profile verification."""

import pytest

from drift_gauntlet.adversaries import verify_profile
from drift_gauntlet.core import (
    AdversarialProfile,
    Chunked,
    FixedReference,
    GrowingReference,
    SlidingPair,
    union_scheme,
)

SCHEMES = [
    SlidingPair(l=2),
    FixedReference(a=3, l=2),
    GrowingReference(a=1, l=2),
    Chunked(inner=SlidingPair(l=1), c=2),
]


class TestVerifyProfile:
    """Tests for verify_profile."""

    @pytest.mark.parametrize("scheme", SCHEMES, ids=str)
    def test_constants_are_improper(self, scheme):
        check = verify_profile([0.3] * 8, scheme)
        assert check.max_residual == 0
        assert check.exact_zero
        assert not check.is_adversarial
        assert check.verdict == "improper (no drift)"

    def test_alternating_on_sliding(self):
        check = verify_profile([1, 0, 1, 0, 1, 0], SlidingPair(l=2), n=6)
        assert check.max_residual == 0
        assert check.is_adversarial
        assert check.verdict == "adversarial"

    def test_alternating_on_fixed(self):
        check = verify_profile([1, 0, 1, 0, 1, 0], FixedReference(a=3, l=2))
        assert check.max_residual == pytest.approx(1 / 6)
        assert not check.is_adversarial
        assert check.verdict == "detectable"

    def test_accepts_profile_model(self):
        profile = AdversarialProfile(v=(1.0, 0.0, 1.0, 0.0))
        assert verify_profile(profile, SlidingPair(l=2)).n == 4

    def test_tolerance_separates_float_claims(self):
        v = [1.0, 0.0, 1.0, 1e-12, 1.0, 0.0]
        check = verify_profile(v, SlidingPair(l=2))
        assert not check.exact_zero
        assert check.is_adversarial

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="expected 5"):
            verify_profile([1, 0, 1, 0], SlidingPair(l=1), n=5)

    def test_union_residual_is_member_max(self):
        members = [SlidingPair(l=2), FixedReference(a=3, l=2)]
        v = [1, 0, 1, 0, 1, 0, 1, 0]
        union = verify_profile(v, union_scheme(members)).max_residual
        per_member = [verify_profile(v, m).max_residual for m in members]
        assert union == max(per_member)

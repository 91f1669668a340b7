"""Property-based testing for windowing and adversarial families using Hypothesis.

Validates the algebra every scheme and family must satisfy: constants are
never adversarial, family members certify exactly against their targets,
and the floating-point null space agrees with the rational one.
"""

from typing import Any

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from drift_gauntlet.adversaries import get_available_families, verify_profile
from drift_gauntlet.adversaries.exact import max_exact_residual, weight_matrix_nullspace
from drift_gauntlet.adversaries.nullspace import nullspace_basis
from drift_gauntlet.core import (
    Chunked,
    FixedReference,
    GrowingReference,
    SlidingPair,
    WeightMatrix,
    build_weight_matrix,
    enumerate_pairs,
    union_scheme,
)
from drift_gauntlet.errors import EmptyScheme


@st.composite
def base_scheme_strategy(draw: Any, max_param: int = 3) -> Any:
    """Generate sliding, fixed or growing schemes with small parameters."""
    small = st.integers(min_value=1, max_value=max_param)
    stride = draw(st.integers(min_value=1, max_value=2))
    kind = draw(st.sampled_from(["sliding", "fixed", "growing"]))
    if kind == "sliding":
        return SlidingPair(l=draw(small), stride=stride)
    if kind == "fixed":
        return FixedReference(a=draw(small), l=draw(small), stride=stride)
    return GrowingReference(a=draw(small), l=draw(small), stride=stride)


@st.composite
def scheme_strategy(draw: Any) -> Any:
    """Base schemes, optionally chunked."""
    scheme = draw(base_scheme_strategy())
    if draw(st.booleans()):
        scheme = Chunked(inner=scheme, c=draw(st.integers(min_value=1, max_value=3)))
    return scheme


def _matrix(scheme: Any, n: int) -> WeightMatrix:
    try:
        return build_weight_matrix(scheme, n)
    except EmptyScheme:
        assume(False)
        raise


@st.composite
def family_strategy(draw: Any) -> tuple[str, dict[str, int], int]:
    """Family name, constructor arguments and a stream length that fits them."""
    name = draw(st.sampled_from(sorted(AVAILABLE_FAMILIES)))
    if name == "periodic":
        l = draw(st.integers(min_value=2, max_value=8))
        kwargs = {"l": l, "duty": draw(st.integers(min_value=1, max_value=l - 1))}
        n = draw(st.integers(min_value=2 * l, max_value=40))
    elif name == "rand_const":
        a = 2 * draw(st.integers(min_value=1, max_value=6))
        kwargs = {"a": a, "l": draw(st.integers(min_value=1, max_value=5))}
        n = draw(st.integers(min_value=a + kwargs["l"] + 1, max_value=40))
    else:
        a = draw(st.integers(min_value=2, max_value=8))
        kwargs = {"a": a, "l": a * draw(st.integers(min_value=1, max_value=2))}
        n = draw(st.integers(min_value=a + kwargs["l"] + 1, max_value=40))
    return name, kwargs, n


AVAILABLE_FAMILIES = get_available_families()


class TestWindowingProperties:
    """Property-based tests for window schemes."""

    @given(scheme=scheme_strategy(), n=st.integers(min_value=2, max_value=12))
    @settings(max_examples=200, deadline=10000)
    def test_rows_annihilate_constants(self, scheme: Any, n: int) -> None:
        W = _matrix(scheme, n)
        for r in range(1, W.n_rows):
            assert sum(W.row_entries(r).values()) == 0

    @given(
        scheme=scheme_strategy(),
        n=st.integers(min_value=2, max_value=12),
        c=st.floats(min_value=0.0, max_value=1.0),
    )
    @settings(max_examples=200, deadline=10000)
    def test_constants_are_improper(self, scheme: Any, n: int, c: float) -> None:
        _matrix(scheme, n)
        check = verify_profile([c] * n, scheme)
        assert check.exact_zero
        assert not check.is_adversarial

    @given(scheme=base_scheme_strategy(), n=st.integers(min_value=2, max_value=20))
    @settings(max_examples=200, deadline=10000)
    def test_stride_subset(self, scheme: Any, n: int) -> None:
        W = _matrix(scheme, n)
        unit = scheme.model_copy(update={"stride": 1})
        assert set(W.pairs) <= set(enumerate_pairs(unit, n))

    @given(
        first=scheme_strategy(),
        second=scheme_strategy(),
        n=st.integers(min_value=4, max_value=10),
        bits=st.lists(st.integers(0, 1), min_size=10, max_size=10),
    )
    @settings(max_examples=200, deadline=10000)
    def test_union_residual_is_member_max(
        self, first: Any, second: Any, n: int, bits: list[int]
    ) -> None:
        W1, W2 = _matrix(first, n), _matrix(second, n)
        v = bits[:n]
        union = _matrix(union_scheme([first, second]), n)
        assert max_exact_residual(union, v) == max(
            max_exact_residual(W1, v), max_exact_residual(W2, v)
        )

    @given(scheme=scheme_strategy(), n=st.integers(min_value=2, max_value=10))
    @settings(max_examples=100, deadline=20000)
    def test_float_nullspace_matches_rational(self, scheme: Any, n: int) -> None:
        """Test the SVD basis spans the same space as exact elimination."""
        W = _matrix(scheme, n)
        exact = np.array(weight_matrix_nullspace(W), dtype=float)
        numeric = np.array(nullspace_basis(W).basis)
        assert numeric.shape[0] == exact.shape[0]

        D = W.difference_rows()
        assert np.abs(D @ numeric.T).max() <= 1e-9
        # every exact basis vector lies in the span of the float basis
        coeffs, *_ = np.linalg.lstsq(numeric.T, exact.T, rcond=None)
        assert np.abs(numeric.T @ coeffs - exact.T).max() <= 1e-9


class TestFamilyProperties:
    """Property-based tests for every registered profile family."""

    @given(spec=family_strategy(), seed=st.integers(min_value=0, max_value=2**31 - 1))
    @settings(max_examples=200, deadline=10000)
    def test_members_certify_against_targets(
        self, spec: tuple[str, dict[str, int], int], seed: int
    ) -> None:
        name, kwargs, n = spec
        family = AVAILABLE_FAMILIES[name](**kwargs)
        profile = family.generate(n, np.random.Generator(np.random.PCG64(seed)))
        assert profile.n == n
        assert not profile.is_constant
        for scheme in family.target_schemes():
            W = build_weight_matrix(scheme, n)
            assert max_exact_residual(W, profile.v) == 0, (
                f"{family!r} member leaks drift to {scheme!r}"
            )

    @given(spec=family_strategy(), seed=st.integers(min_value=0, max_value=2**31 - 1))
    @settings(max_examples=100, deadline=10000)
    def test_window_means_coincide(
        self, spec: tuple[str, dict[str, int], int], seed: int
    ) -> None:
        """Test both windows of every target pair carry the same mean weight."""
        name, kwargs, n = spec
        family = AVAILABLE_FAMILIES[name](**kwargs)
        v = family.generate(n, np.random.Generator(np.random.PCG64(seed))).array
        for scheme in family.target_schemes():
            for pair in enumerate_pairs(scheme, n):
                left = v[pair.s1 : pair.e1].mean()
                right = v[pair.s2 : pair.e2].mean()
                assert left == pytest.approx(right, abs=1e-12)

    @given(spec=family_strategy(), seed=st.integers(min_value=0, max_value=2**31 - 1))
    @settings(max_examples=100, deadline=10000)
    def test_deterministic_behavior(
        self, spec: tuple[str, dict[str, int], int], seed: int
    ) -> None:
        """Test that the same seed always produces the same member."""
        name, kwargs, n = spec
        family = AVAILABLE_FAMILIES[name](**kwargs)
        first = family.generate(n, np.random.Generator(np.random.PCG64(seed)))
        second = family.generate(n, np.random.Generator(np.random.PCG64(seed)))
        assert first == second

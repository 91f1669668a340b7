"""Adversariality certificates for finite profiles."""

from collections.abc import Sequence
from typing import Literal

from pydantic import BaseModel, ConfigDict

from ..core.models import AdversarialProfile, WindowScheme
from ..core.windowing import WeightMatrix, build_weight_matrix
from .exact import max_exact_residual
from .nullspace import EPS_SOLVE

Verdict = Literal["adversarial", "improper (no drift)", "detectable"]


class ProfileVerification(BaseModel):
    """Residual of a profile against a scheme's difference rows."""

    model_config = ConfigDict(frozen=True)

    n: int
    max_residual: float
    exact_zero: bool
    is_nonconstant: bool
    is_adversarial: bool

    @property
    def verdict(self) -> Verdict:
        if not self.is_nonconstant:
            return "improper (no drift)"
        return "adversarial" if self.is_adversarial else "detectable"


def verify_against_matrix(
    v: Sequence[float], W: WeightMatrix, tol: float = EPS_SOLVE
) -> ProfileVerification:
    residual = max_exact_residual(W, v)
    nonconstant = len(set(v)) > 1
    return ProfileVerification(
        n=W.n,
        max_residual=float(residual),
        exact_zero=residual == 0,
        is_nonconstant=nonconstant,
        is_adversarial=nonconstant and float(residual) <= tol,
    )


def verify_profile(
    profile: AdversarialProfile | Sequence[float],
    scheme: WindowScheme,
    n: int | None = None,
    tol: float = EPS_SOLVE,
) -> ProfileVerification:
    """Check whether ``profile`` hides its drift from ``scheme``.

    The residual is the largest ``|row · v|`` over the difference rows,
    computed exactly in rationals. A profile is adversarial when it is
    non-constant and its residual is at most ``tol``; ``exact_zero`` reports
    the rational certificate separately.
    """
    v = list(profile.v) if isinstance(profile, AdversarialProfile) else list(profile)
    n = len(v) if n is None else n
    if len(v) != n:
        raise ValueError(f"profile has length {len(v)}, expected {n}")
    return verify_against_matrix(v, build_weight_matrix(scheme, n), tol)

"""Adversarial profiles and functions, and their certificates."""

from .base import BaseFamily, get_available_families, parse_family
from .limiting import (
    AdversarialFunction,
    BoundaryEffect,
    ConstantAfter,
    LimitingWindows,
    PeriodicAfterMatchedMean,
    PeriodicFunction,
    parse_limiting_scheme,
    sample_function_to_profile,
    verify_function_limiting,
)
from .nullspace import binarize_profile, nullspace_basis, solve_nullspace
from .periodic import PeriodicFamily, gen_periodic
from .rand_const import RandConstFamily, gen_rand_const
from .rand_periodic import RandPeriodicFamily, gen_rand_periodic
from .verify import ProfileVerification, verify_profile

__all__ = [
    "AdversarialFunction",
    "BaseFamily",
    "BoundaryEffect",
    "ConstantAfter",
    "LimitingWindows",
    "PeriodicAfterMatchedMean",
    "PeriodicFamily",
    "PeriodicFunction",
    "ProfileVerification",
    "RandConstFamily",
    "RandPeriodicFamily",
    "binarize_profile",
    "gen_periodic",
    "gen_rand_const",
    "gen_rand_periodic",
    "get_available_families",
    "nullspace_basis",
    "parse_family",
    "parse_limiting_scheme",
    "sample_function_to_profile",
    "solve_nullspace",
    "verify_function_limiting",
    "verify_profile",
]

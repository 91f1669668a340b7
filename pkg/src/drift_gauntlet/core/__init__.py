"""Window schemes, kernels and the two-window detector."""

from .detector import permutation_test, run_combined, run_detector
from .kernels import kernel_matrix, mmd2_direct, mmd2_weighted
from .models import (
    AdversarialProfile,
    Chunked,
    DetectionReport,
    FixedReference,
    GrowingReference,
    KernelSpec,
    Provenance,
    SlidingPair,
    TestResult,
    UnionScheme,
    WindowPair,
    WindowScheme,
)
from .windowing import (
    WeightMatrix,
    build_weight_matrix,
    enumerate_pairs,
    parse_scheme,
    scheme_label,
    union_scheme,
)

__all__ = [
    "AdversarialProfile",
    "Chunked",
    "DetectionReport",
    "FixedReference",
    "GrowingReference",
    "KernelSpec",
    "Provenance",
    "SlidingPair",
    "TestResult",
    "UnionScheme",
    "WeightMatrix",
    "WindowPair",
    "WindowScheme",
    "build_weight_matrix",
    "enumerate_pairs",
    "kernel_matrix",
    "mmd2_direct",
    "mmd2_weighted",
    "parse_scheme",
    "permutation_test",
    "run_combined",
    "run_detector",
    "scheme_label",
    "union_scheme",
]

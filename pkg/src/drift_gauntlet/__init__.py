"""
drift_gauntlet: adversarial data streams for two-window drift detectors.

Two-window detectors compare the samples in a reference window with those
in a test window and alert when a kernel two-sample test rejects. This
package builds streams whose drift such detectors provably cannot see,
certifies them exactly, and measures how detectors fare on them.

Key Features:
- Window schemes (sliding, fixed and growing reference, chunked, unions)
- Permutation MMD detector with seeded, reproducible p-values
- Null-space construction and exact rational certificates of adversarials
- Limiting-case verifier for adversarial functions in continuous time
- Reproducible dataset x scheme experiments with quantile tables
"""

__version__ = "0.0.0"

# Version information
VERSION = __version__

from .adversaries import (  # noqa: E402
    BaseFamily,
    binarize_profile,
    solve_nullspace,
    verify_profile,
)
from .core import (  # noqa: E402
    AdversarialProfile,
    DetectionReport,
    KernelSpec,
    WindowPair,
    build_weight_matrix,
    enumerate_pairs,
    run_detector,
)

__all__ = [
    "AdversarialProfile",
    "BaseFamily",
    "DetectionReport",
    "KernelSpec",
    "WindowPair",
    "binarize_profile",
    "build_weight_matrix",
    "enumerate_pairs",
    "run_detector",
    "solve_nullspace",
    "verify_profile",
]

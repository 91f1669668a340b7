#!/usr/bin/env python3
"""Benchmark script for the two-window detector at full experiment scale.

Times one detector pass over a 1,000-sample two-squares stream with every
split time tested and 2,500 permutations per window pair.
"""

import sys
import time
from pathlib import Path

import numpy as np

# Add the source directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from drift_gauntlet.adversaries import gen_periodic
from drift_gauntlet.core import (
    FixedReference,
    GrowingReference,
    SlidingPair,
    run_detector,
)
from drift_gauntlet.core.windowing import scheme_label
from drift_gauntlet.data import sample_stream, two_squares

TARGET_SECONDS = 60.0


def benchmark_scheme(scheme, stream, permutations: int = 2500):
    """Benchmark a single detector pass.

    Returns:
        Tuple of (elapsed_time, n_pairs, min_p)
    """
    label = scheme_label(scheme)
    print(f"\nBenchmarking {label}...")

    # Warm-up run on a short prefix
    run_detector(stream.x[:300], scheme, permutations=10)

    start_time = time.time()
    report = run_detector(stream, scheme, permutations=permutations, seed=42)
    elapsed_time = time.time() - start_time

    n_pairs = len(report.results)
    print(f"  Runtime: {elapsed_time:.3f} seconds")
    print(f"  Window pairs: {n_pairs} ({n_pairs / elapsed_time:.1f} pairs/s)")
    print(f"  Minimum p: {report.min_p:.4f}")
    return elapsed_time, n_pairs, report.min_p


def main():
    """Run benchmarks for the three base schemes."""
    print("=" * 60)
    print("Detector Benchmark")
    print("=" * 60)

    n = 1000
    rng = np.random.Generator(np.random.PCG64(42))
    stream = sample_stream(gen_periodic(100, 50, n), two_squares(5.0), rng)

    schemes = [
        SlidingPair(l=100),
        FixedReference(a=100, l=100),
        GrowingReference(a=100, l=100),
    ]
    results = {}
    for scheme in schemes:
        results[scheme_label(scheme)] = benchmark_scheme(scheme, stream)

    print("\n" + "=" * 60)
    print("Summary")
    print("=" * 60)
    print(f"\n{'Scheme':<12} {'Runtime (s)':<12} {'Pairs':<8} {'Min p':<8}")
    print("-" * 40)
    for label, (elapsed, n_pairs, min_p) in results.items():
        print(f"{label:<12} {elapsed:<12.3f} {n_pairs:<8} {min_p:<8.4f}")

    total = sum(elapsed for elapsed, _, _ in results.values())
    if total <= TARGET_SECONDS:
        print(f"\n✓ Total runtime {total:.1f}s within {TARGET_SECONDS:.0f}s")
    else:
        print(f"\n✗ Total runtime {total:.1f}s exceeds {TARGET_SECONDS:.0f}s")
        sys.exit(1)


if __name__ == "__main__":
    main()

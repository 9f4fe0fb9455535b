"""Size estimators based on node repetitions (the NODE family).

Capture-recapture, unique-element maximum likelihood, and collision-count
estimators, for uniform and weighted independence samples.

Collision-based ratios use the ordered-pair collision count (twice the
unordered count) in the denominator: matching the ordered-pair numerator
sum(w_i)*sum(1/w_j) is what makes the ratio a consistent estimator of N.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .core import (NO_COLLISIONS, EstimateOutcome, EstimatorError,
                   RatioEstimate, count_collisions)
from .sampling import Sample


@dataclass(frozen=True)
class MleSolverConfig:
    """Root-solver settings for the unique-element MLE estimators."""

    tolerance: float = 1e-9
    cap: float = 1e12

    def __post_init__(self):
        if self.tolerance <= 0 or self.cap <= 1:
            raise ValueError("need tolerance > 0 and cap > 1")


def capture_recapture(s1_unique: set, s2_unique: set) -> EstimateOutcome:
    """Two-phase capture-recapture from duplicate-free node sets."""
    if not s1_unique or not s2_unique:
        raise EstimatorError("capture-recapture needs two non-empty sets")
    overlap = len(s1_unique & s2_unique)
    return RatioEstimate(len(s1_unique) * len(s2_unique), overlap).outcome()


@dataclass(frozen=True)
class CaptureSplit:
    """Diagnostics of a seeded half/half split with per-half deduplication."""

    s1_unique: frozenset
    s2_unique: frozenset
    discarded: int


def split_for_capture(s: Sample, seed: int) -> CaptureSplit:
    """Deterministically split a sample into two deduplicated halves.

    Within-half duplicates are discarded; their count is reported because
    that discard loses information the collision estimators would keep.
    """
    n = len(s)
    if n < 2:
        raise EstimatorError("need at least 2 records to split")
    order = np.random.default_rng(seed).permutation(n)
    nodes = s.nodes()
    half = n // 2
    s1 = frozenset(nodes[i] for i in order[:half])
    s2 = frozenset(nodes[i] for i in order[half:])
    return CaptureSplit(s1, s2, n - len(s1) - len(s2))


def capture_recapture_from_sample(s: Sample, seed: int) -> EstimateOutcome:
    """Capture-recapture applied to one sample via a seeded random split."""
    split = split_for_capture(s, seed)
    return capture_recapture(set(split.s1_unique), set(split.s2_unique))


def mle_unique_approx(n: int, n_unique: int,
                      cfg: MleSolverConfig = MleSolverConfig()) -> EstimateOutcome:
    """Solve n_unique = N * (1 - exp(-n/N)) for N by bisection.

    The left side approaches n from below as N grows, so n_unique == n has
    no finite root and yields the no-collisions outcome.
    """
    _check_unique_args(n, n_unique)
    if n_unique == n:
        return NO_COLLISIONS
    f = lambda N: -N * math.expm1(-n / N) - n_unique
    lo = float(n_unique)
    if f(lo) > 0.0:
        # Root below n_unique cannot occur for valid inputs; guard anyway.
        return EstimateOutcome(lo)
    hi = lo
    while f(hi) < 0.0:
        hi *= 2.0
        if hi > cfg.cap:
            return NO_COLLISIONS
    while (hi - lo) > cfg.tolerance * hi:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return EstimateOutcome(0.5 * (lo + hi))


def mle_unique_exact(n: int, n_unique: int,
                     cfg: MleSolverConfig = MleSolverConfig()) -> EstimateOutcome:
    """Smallest integer N >= n_unique where the exact MLE inequality holds.

    The predicate (N+1)/(N+1-n_unique) * (N/(N+1))^n < 1 is evaluated in log
    space and located by exponential doubling plus binary search over its
    eventually-monotone region; validated against a linear scan in tests.
    """
    _check_unique_args(n, n_unique)
    if n_unique == n:
        return NO_COLLISIONS
    pred = lambda N: _exact_mle_log(N, n, n_unique) < 0.0
    hi = max(n_unique, 1)
    while not pred(hi):
        hi *= 2
        if hi > cfg.cap:
            return NO_COLLISIONS
    lo = max(n_unique, 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid + 1
    return EstimateOutcome(float(lo))


def _exact_mle_log(N: int, n: int, n_unique: int) -> float:
    if N + 1 - n_unique <= 0:
        return math.inf
    return (math.log(N + 1) - math.log(N + 1 - n_unique)
            + n * (math.log(N) - math.log(N + 1)))


def _check_unique_args(n: int, n_unique: int) -> None:
    if n_unique < 1 or n < 1:
        raise EstimatorError("need n >= 1 and n_unique >= 1")
    if n_unique > n:
        raise EstimatorError("n_unique cannot exceed n")


def node_uis_ratio(s: Sample) -> RatioEstimate:
    """n^2 over the ordered-pair collision count."""
    n = len(s)
    return RatioEstimate(float(n * n), float(2 * count_collisions(s)))


def node_uis(s: Sample) -> EstimateOutcome:
    """Collision-count estimator for uniform samples."""
    return node_uis_ratio(s).outcome()


def node_wis_ratio(s: Sample) -> RatioEstimate:
    """sum(w) * sum(1/w) over the ordered-pair collision count.

    With unit weights this equals :func:`node_uis_ratio` exactly.  The value
    is invariant under rescaling all weights by a constant.
    """
    weights = s.weights()
    inv = []
    for w in weights:
        if w <= 0.0:
            raise EstimatorError("weights must be positive")
        inv.append(1.0 / w)
    num = math.fsum(weights) * math.fsum(inv)
    return RatioEstimate(num, float(2 * count_collisions(s)))


def node_wis(s: Sample) -> EstimateOutcome:
    """Weight-corrected collision-count estimator."""
    return node_wis_ratio(s).outcome()

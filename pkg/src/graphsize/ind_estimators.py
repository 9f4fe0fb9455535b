"""Size estimators based on induced edges (the IND family).

Route A goes through the density identity N = <k>/rho + 1; route B counts
cross-collisions between the sample and an auxiliary node (multi)set,
by default the union of the sampled nodes' neighbor snapshots.
"""

from __future__ import annotations

import math
from collections import Counter

from .core import (MODE_MULTISET, MODE_SET, EstimateOutcome, EstimatorError,
                   RatioEstimate, AuxiliarySet, build_auxiliary,
                   count_cross_collisions, count_induced_edges,
                   pairwise_inverse_weight_sum)
from .sampling import METHOD_UIS, Sample


def mean_degree_uis(s: Sample) -> float:
    """Plain average of sampled degrees."""
    if len(s) < 1:
        raise EstimatorError("empty sample")
    return math.fsum(s.degrees()) / len(s)


def density_uis(s: Sample) -> float:
    """Fraction of sample pairs that form edges."""
    n = len(s)
    if n < 2:
        raise EstimatorError("density needs at least 2 records")
    return count_induced_edges(s) / (n * (n - 1) / 2)


def inda_uis_ratio(s: Sample) -> RatioEstimate:
    if len(s) < 2:
        raise EstimatorError("need at least 2 records")
    n = len(s)
    num = (n - 1) * math.fsum(s.degrees())
    return RatioEstimate(num, float(2 * count_induced_edges(s)))


def inda_uis(s: Sample) -> EstimateOutcome:
    """Density-route estimator for uniform samples: (n-1)*sum(deg)/(2*n_ind) + 1."""
    return inda_uis_ratio(s).outcome(offset=1.0)


def _inverse(weights) -> list[float]:
    inv = []
    for w in weights:
        if w <= 0.0:
            raise EstimatorError("weights must be positive")
        inv.append(1.0 / w)
    return inv


def mean_degree_wis(s: Sample) -> float:
    """Inverse-probability-weighted mean degree: sum(deg/w) / sum(1/w)."""
    if len(s) < 1:
        raise EstimatorError("empty sample")
    inv = _inverse(s.weights())
    num = math.fsum(d * iw for d, iw in zip(s.degrees(), inv))
    return num / math.fsum(inv)


def edge_pair_inverse_weight_sum(s: Sample) -> float:
    """Sum over unordered edge-forming pairs of 1/(w_i * w_j), in linear time.

    Grouping occurrences by node turns the pair sum into a sum over adjacent
    distinct-node pairs of products of per-node inverse-weight totals.
    """
    inv_by_node: dict[int, float] = {}
    for r in s.records:
        if r.weight <= 0.0:
            raise EstimatorError("weights must be positive")
        inv_by_node[r.node] = inv_by_node.get(r.node, 0.0) + 1.0 / r.weight
    snapshot = {r.node: r.neighbors for r in s.records}
    total = 0.0
    for v, iv in inv_by_node.items():
        acc = 0.0
        for u in snapshot[v]:
            acc += inv_by_node.get(u, 0.0)
        total += iv * acc
    return 0.5 * total


def density_wis(s: Sample) -> float:
    """Two-point corrected density: edge pair terms over all pair terms."""
    if len(s) < 2:
        raise EstimatorError("density needs at least 2 records")
    return edge_pair_inverse_weight_sum(s) / pairwise_inverse_weight_sum(s)


def inda_wis_ratio(s: Sample) -> RatioEstimate:
    if len(s) < 2:
        raise EstimatorError("need at least 2 records")
    inv = _inverse(s.weights())
    deg_over_w = math.fsum(d * iw for d, iw in zip(s.degrees(), inv))
    num = deg_over_w * pairwise_inverse_weight_sum(s)
    den = math.fsum(inv) * edge_pair_inverse_weight_sum(s)
    return RatioEstimate(num, den)


def inda_wis(s: Sample) -> EstimateOutcome:
    """Weight-corrected density-route estimator; reduces to inda_uis at unit weights."""
    return inda_wis_ratio(s).outcome(offset=1.0)


def indb_uis_ratio(s: Sample, a: AuxiliarySet) -> RatioEstimate:
    if len(s) < 1 or a.cardinality < 1:
        raise EstimatorError("need a non-empty sample and auxiliary set")
    return RatioEstimate(float(a.cardinality * len(s)),
                         float(count_cross_collisions(s, a)))


def indb_uis(s: Sample, a: AuxiliarySet) -> EstimateOutcome:
    """|A| * |S| over the cross-collision count."""
    return indb_uis_ratio(s, a).outcome()


def indb_wis_ratio(s: Sample, a: AuxiliarySet) -> RatioEstimate:
    if len(s) < 1 or a.cardinality < 1:
        raise EstimatorError("need a non-empty sample and auxiliary set")
    inv = _inverse(s.weights())
    num = a.cardinality * math.fsum(inv)
    den = math.fsum(iw * a.counts.get(r.node, 0)
                    for iw, r in zip(inv, s.records))
    return RatioEstimate(num, den)


def indb_wis(s: Sample, a: AuxiliarySet) -> EstimateOutcome:
    """One-point corrected cross-collision estimator."""
    return indb_wis_ratio(s, a).outcome()


def indb_auto_ratio(s: Sample, mode: str = MODE_SET) -> RatioEstimate:
    """Cross-collision ratio with A built from the sample's own neighbor snapshots.

    Uniform samples take the unweighted path even if weights are present;
    anything else is corrected by the record weights.
    """
    a = build_auxiliary(s, mode)
    if s.method == METHOD_UIS:
        return indb_uis_ratio(s, a)
    return indb_wis_ratio(s, a)


def indb_auto(s: Sample, mode: str = MODE_SET) -> EstimateOutcome:
    """The default IND estimator (duplicates in A discarded unless asked)."""
    return indb_auto_ratio(s, mode).outcome()

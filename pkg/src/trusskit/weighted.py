"""Weighted triangle support and the weighted trussness decomposition.

Each triangle confers an integer weight derived from its edge weights
(minimum or harmonic mean, scaled by alpha and floored), and an edge's
weighted support is the sum over its triangles. Peeling then works exactly
as in the unweighted case except that removals decrement neighbors by the
triangle's weight, clamped at the current frontier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .graph import Graph, Weight
from .truss import ClusterFamily, KClassDecomposition, peel_classes
from .strong import strong_truss_family

DEFAULT_SUPPORT_CAP = 1 << 24


@dataclass(frozen=True)
class TriangleWeightSpec:
    """How a triangle's integer weight is derived from its edge weights."""

    kind: Literal["minimum", "harmonic"] = "minimum"
    alpha: Weight = 1

    def __post_init__(self):
        if self.kind not in ("minimum", "harmonic"):
            raise ValueError(f"unknown triangle weight kind {self.kind!r}")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")


def triangle_weight(spec: TriangleWeightSpec, w1: Weight, w2: Weight, w3: Weight) -> int:
    """Integer weight of one triangle: floor(alpha * min) or
    floor(alpha / (1/w1 + 1/w2 + 1/w3))."""
    if w1 <= 0 or w2 <= 0 or w3 <= 0:
        raise ValueError("edge weights must be positive")
    if spec.kind == "minimum":
        return math.floor(spec.alpha * min(w1, w2, w3))
    recip = Fraction(1, 1) / w1 + Fraction(1, 1) / w2 + Fraction(1, 1) / w3
    return math.floor(spec.alpha / recip)


@dataclass(frozen=True)
class WeightedSupportMap:
    """Sum of triangle weights per edge."""

    sup: tuple[int, ...]
    max_support: int

    def __getitem__(self, eid: int) -> int:
        return self.sup[eid]


def weighted_supports(
    graph: Graph,
    spec: TriangleWeightSpec,
    support_cap: int = DEFAULT_SUPPORT_CAP,
) -> WeightedSupportMap:
    """Weighted support per edge via the same bucketed triangle scan used
    for plain counts. Fails fast if any support exceeds support_cap, since
    the peel's level range is bounded by the maximum support."""
    from .graph import vertex_ranking

    rank = vertex_ranking(graph).rank
    weights = graph.weights
    adj = graph.adj
    buckets: list[list[tuple[int, int]]] = [[] for _ in range(graph.n)]
    for eid, (lo, hi) in enumerate(graph.edges):
        if rank[lo] < rank[hi]:
            buckets[lo].append((hi, eid))
        else:
            buckets[hi].append((lo, eid))

    sup = [0] * graph.m
    for v in range(graph.n):
        bucket = buckets[v]
        if len(bucket) < 2:
            continue
        for i in range(len(bucket) - 1):
            w1, e1 = bucket[i]
            a1 = adj[w1]
            for j in range(i + 1, len(bucket)):
                w2, e2 = bucket[j]
                e3 = a1.get(w2)
                if e3 is not None:
                    wt = triangle_weight(spec, weights[e1], weights[e2], weights[e3])
                    sup[e1] += wt
                    sup[e2] += wt
                    sup[e3] += wt
    top = max(sup, default=0)
    if top > support_cap:
        raise ValueError(
            f"maximum weighted support {top} exceeds cap {support_cap}; "
            "rescale alpha or the edge weights"
        )
    return WeightedSupportMap(sup=tuple(sup), max_support=top)


def weighted_k_classes(
    graph: Graph,
    spec: TriangleWeightSpec,
    support_cap: int = DEFAULT_SUPPORT_CAP,
) -> KClassDecomposition:
    """Weighted trussness of every edge.

    With unit weights and spec(minimum, alpha=1) this reduces exactly to the
    plain decomposition.
    """
    supports = weighted_supports(graph, spec, support_cap)
    weights = graph.weights

    def delta(e: int, e_uw: int, e_vw: int) -> int:
        return triangle_weight(spec, weights[e], weights[e_uw], weights[e_vw])

    return peel_classes(graph, supports.sup, delta)


def weighted_strong_family(
    graph: Graph, decomposition: KClassDecomposition
) -> ClusterFamily:
    """Strong weighted trusses: identical clustering mechanics, run on the
    weighted classes. Summit selection applies unchanged."""
    return strong_truss_family(graph, decomposition)

"""Planted-partition generation, NMI scoring, and the benchmark harness.

Graphs consist of l groups with dense internal Bernoulli edges (probability
p) and sparse edges between groups (probability r). Instead of r one gives
the mixing fraction mu, the expected share of a node's edges that leave its
group; recovery of the planted groups by truss clustering is scored with
normalized mutual information over node labels.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph, build_graph
from .strong import strong_truss_family, strong_trusses_at, summit_strong_trusses
from .triangles import edge_supports
from .truss import k_classes, summit_trusses, trusses_at

METHODS = ("truss", "strong", "summit", "strong-summit")


class InfeasibleModelError(ValueError):
    """The requested mixing fraction needs an inter-group probability > 1."""


def derive_inter_prob(l: int, n: int, p: float, mu: float) -> float:
    """Inter-group edge probability that realizes mixing fraction mu.

    Equates the expected inter-degree r*(n - g) to mu/(1-mu) times the
    expected intra-degree p*(g - 1), with g = n/l.
    """
    if l < 2:
        raise ValueError("need at least 2 groups")
    if not 0 <= mu < 1:
        raise ValueError("mu must lie in [0, 1)")
    g = n / l
    if n - g <= 0:
        raise ValueError("groups must leave room for inter-group pairs")
    r = (mu / (1.0 - mu)) * p * (g - 1.0) / (n - g)
    if r > 1.0:
        raise InfeasibleModelError(
            f"mixing {mu} with p={p} would need inter-group probability {r:.4f} > 1"
        )
    return max(r, 0.0)


@dataclass(frozen=True)
class PlantedModel:
    """Stochastic l-group model; sizes may be fixed or a uniform range.

    inter_prob, when given, is used directly as the between-group edge
    probability; otherwise it is derived from the mixing fraction mu.
    """

    l: int
    group_size: int | tuple[int, int]   # g, or inclusive (lo, hi) per group
    p: float
    mu: float
    seed: int = 0
    inter_prob: float | None = None

    def __post_init__(self):
        if self.l < 2:
            raise ValueError("need at least 2 groups")
        if not 0 <= self.p <= 1:
            raise ValueError("p must lie in [0, 1]")
        if not 0 <= self.mu < 1:
            raise ValueError("mu must lie in [0, 1)")
        if self.inter_prob is not None and not 0 <= self.inter_prob <= 1:
            raise ValueError("inter_prob must lie in [0, 1]")
        sizes = self.group_size
        if isinstance(sizes, tuple):
            lo, hi = sizes
            if lo < 2 or hi < lo:
                raise ValueError("size range must satisfy 2 <= lo <= hi")
        elif sizes < 2:
            raise ValueError("groups need at least 2 nodes")

    def with_seed(self, seed: int) -> "PlantedModel":
        return PlantedModel(
            self.l, self.group_size, self.p, self.mu, seed, self.inter_prob
        )


@dataclass(frozen=True)
class Partition:
    """Cluster id per vertex; a total function over the graph's vertices."""

    label: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.label)

    def blocks(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.label):
            out.setdefault(c, []).append(v)
        return out


def generate_planted(model: PlantedModel) -> tuple[Graph, Partition]:
    """Draw one graph from the model; deterministic under the model's seed.

    Isolated vertices stay in the graph so partitions always cover all
    planted nodes.
    """
    rng = np.random.default_rng(model.seed)
    if isinstance(model.group_size, tuple):
        lo, hi = model.group_size
        sizes = rng.integers(lo, hi + 1, size=model.l).tolist()
    else:
        sizes = [model.group_size] * model.l
    n = int(sum(sizes))
    group = np.empty(n, dtype=np.int64)
    offsets = []
    start = 0
    for gi, size in enumerate(sizes):
        group[start : start + size] = gi
        offsets.append(start)
        start += size

    if model.inter_prob is not None:
        r = model.inter_prob
    else:
        r = derive_inter_prob(model.l, n, model.p, model.mu)
    edges: list[tuple[int, int]] = []

    for gi, size in enumerate(sizes):
        base = offsets[gi]
        iu, ju = np.triu_indices(size, k=1)
        mask = rng.random(iu.shape[0]) < model.p
        for a, b in zip(iu[mask], ju[mask]):
            edges.append((base + int(a), base + int(b)))

    intra_pairs = sum(s * (s - 1) // 2 for s in sizes)
    inter_pairs = n * (n - 1) // 2 - intra_pairs
    if inter_pairs > 0 and r > 0:
        count = int(rng.binomial(inter_pairs, r))
        chosen: set[tuple[int, int]] = set()
        while len(chosen) < count:
            need = count - len(chosen)
            us = rng.integers(0, n, size=2 * need + 8)
            vs = rng.integers(0, n, size=2 * need + 8)
            ok = (us != vs) & (group[us] != group[vs])
            for a, b in zip(us[ok], vs[ok]):
                a, b = int(a), int(b)
                chosen.add((a, b) if a < b else (b, a))
                if len(chosen) >= count:
                    break
        edges.extend(sorted(chosen))

    graph = build_graph(n, edges)
    return graph, Partition(label=tuple(int(g) for g in group))


def clusters_to_node_partition(
    graph: Graph,
    clusters: Sequence[Iterable[int]],
    levels: Sequence[int] | None = None,
) -> Partition:
    """Assign each vertex the id of a cluster whose edges touch it.

    A vertex touched by several clusters goes to the one formed at the
    highest support level, then to the smallest cluster id; vertices outside
    every cluster become singletons.
    """
    if levels is not None and len(levels) != len(clusters):
        raise ValueError("levels length does not match clusters")
    best: dict[int, tuple[int, int]] = {}  # vertex -> (-level, cluster id)
    for ci, edge_set in enumerate(clusters):
        level = levels[ci] if levels is not None else 0
        for eid in edge_set:
            lo, hi = graph.edges[eid]
            for v in (lo, hi):
                key = (-level, ci)
                if v not in best or key < best[v]:
                    best[v] = key
    label = [0] * graph.n
    next_free = len(clusters)
    for v in range(graph.n):
        if v in best:
            label[v] = best[v][1]
        else:
            label[v] = next_free
            next_free += 1
    return Partition(label=tuple(label))


def nmi(a: Partition, b: Partition) -> float:
    """Normalized mutual information between two node partitions.

    Uses the confusion-matrix form with natural logs; 1 means either
    partition determines the other, 0 means independence.
    """
    if a.n != b.n:
        raise ValueError("partitions cover different vertex sets")
    total = a.n
    if total == 0:
        raise ValueError("empty partitions")

    counts: dict[tuple[int, int], int] = {}
    rows: dict[int, int] = {}
    cols: dict[int, int] = {}
    for la, lb in zip(a.label, b.label):
        counts[(la, lb)] = counts.get((la, lb), 0) + 1
        rows[la] = rows.get(la, 0) + 1
        cols[lb] = cols.get(lb, 0) + 1

    ha = sum(c * math.log(c / total) for c in rows.values())
    hb = sum(c * math.log(c / total) for c in cols.values())
    if ha == 0.0 and hb == 0.0:
        return 1.0   # both single-block (or single-node) partitions
    if ha == 0.0 or hb == 0.0:
        return 0.0   # one partition carries no information
    mutual = sum(
        nij * math.log(nij * total / (rows[i] * cols[j]))
        for (i, j), nij in counts.items()
    )
    # rounding can push perfect agreement a few ulp past 1
    return min(max(-2.0 * mutual / (ha + hb), 0.0), 1.0)


@dataclass(frozen=True)
class BenchmarkRow:
    """One (method, level) cell averaged over the trials."""

    method: str
    k: int | None           # None for summit methods
    mean_nmi: float
    trials: int


@dataclass(frozen=True)
class BenchmarkReport:
    model: PlantedModel
    trials: int
    mean_n: float
    mean_m: float
    seconds_per_trial: float
    rows: tuple[BenchmarkRow, ...]

    def row(self, method: str, k: int | None = None) -> BenchmarkRow:
        for row in self.rows:
            if row.method == method and row.k == k:
                return row
        raise KeyError((method, k))

    def to_tsv(self) -> str:
        lines = ["method\tk\tmean_nmi\ttrials"]
        for row in self.rows:
            kcell = "-" if row.k is None else str(row.k)
            lines.append(f"{row.method}\t{kcell}\t{row.mean_nmi:.4f}\t{row.trials}")
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        head = (
            f"l={self.model.l} size={self.model.group_size} p={self.model.p} "
            f"mu={self.model.mu} trials={self.trials} "
            f"mean_n={self.mean_n:.1f} mean_m={self.mean_m:.1f} "
            f"time/trial={self.seconds_per_trial:.3f}s"
        )
        fixed = [r for r in self.rows if r.k is not None]
        lines = [head]
        if fixed:
            lines.append("k:    " + "  ".join(f"{r.k:>5d}" for r in fixed))
            lines.append("NMI:  " + "  ".join(f"{r.mean_nmi:5.2f}" for r in fixed))
        for r in self.rows:
            if r.k is None:
                lines.append(f"{r.method}: {r.mean_nmi:.2f}")
        return "\n".join(lines) + "\n"


def run_benchmark(
    model: PlantedModel,
    method: str,
    trials: int = 20,
    k_range: Iterable[int] | None = None,
) -> BenchmarkReport:
    """Average NMI of the chosen clustering method over seeded trials.

    Trial i runs on the model reseeded with seed + i, so reports reproduce
    bit for bit. For the fixed-level methods k_range defaults to every class
    level 3..k_max seen in a trial.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    if trials < 1:
        raise ValueError("need at least one trial")
    ks = sorted(k_range) if k_range is not None else None

    sums: dict[int | None, float] = {}
    seen_counts: dict[int | None, int] = {}
    n_sum = 0
    m_sum = 0
    started = time.perf_counter()
    for i in range(trials):
        graph, truth = generate_planted(model.with_seed(model.seed + i))
        n_sum += graph.n
        m_sum += graph.m
        decomposition = k_classes(graph, edge_supports(graph))
        if method in ("truss", "strong"):
            family = (
                strong_truss_family(graph, decomposition) if method == "strong" else None
            )
            levels = ks if ks is not None else list(
                range(3, max(decomposition.k_max, 2) + 1)
            )
            for k in levels:
                if method == "truss":
                    clusters: list[frozenset[int]] = list(
                        trusses_at(decomposition, graph, k).members
                    )
                else:
                    clusters = strong_trusses_at(family, k)
                part = clusters_to_node_partition(graph, clusters)
                score = nmi(truth, part)
                sums[k] = sums.get(k, 0.0) + score
                seen_counts[k] = seen_counts.get(k, 0) + 1
        else:
            if method == "summit":
                pairs = summit_trusses(decomposition, graph)
            else:
                pairs = summit_strong_trusses(strong_truss_family(graph, decomposition))
            clusters = [edges for _, edges in pairs]
            levels_of = [level for level, _ in pairs]
            part = clusters_to_node_partition(graph, clusters, levels_of)
            score = nmi(truth, part)
            sums[None] = sums.get(None, 0.0) + score
            seen_counts[None] = seen_counts.get(None, 0) + 1
    elapsed = time.perf_counter() - started

    rows = []
    for key in sorted(sums, key=lambda x: (x is None, x if x is not None else 0)):
        rows.append(
            BenchmarkRow(
                method=method,
                k=key,
                mean_nmi=sums[key] / seen_counts[key],
                trials=seen_counts[key],
            )
        )
    return BenchmarkReport(
        model=model,
        trials=trials,
        mean_n=n_sum / trials,
        mean_m=m_sum / trials,
        seconds_per_trial=elapsed / trials,
        rows=tuple(rows),
    )

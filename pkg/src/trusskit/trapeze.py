"""Rectangle (4-cycle) support machinery and trapeze extraction.

Support counting goes through an edge-triad-periphery structure: every
admissible open triad (apex lowest or middle in the degree ranking) links
its two arm edges to the ordered pair of its outer vertices. Two triads
sharing a periphery close a rectangle, and the representation is unique, so
an edge's rectangle count is the sum of (degree - 1) over the peripheries
it reaches. Trimming alternates edge-vertex removal with periphery
re-examination until every survivor has at least k rectangles among
survivors; k may only grow across calls so one structure serves a whole
level schedule.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import Graph, VertexRanking, component_edge_sets, edge_nodes, vertex_ranking

LOW_APEX = 0
MEDIAN_APEX = 1


@dataclass(frozen=True)
class TrapezeSet:
    """Maximal (or strong) trapezes at one support level."""

    k: int
    members: tuple[frozenset[int], ...]

    def member_nodes(self, graph: Graph, index: int) -> set[int]:
        return edge_nodes(graph, self.members[index])


class ETPGraph:
    """Tripartite edge-triad-periphery bookkeeping for one graph.

    Edge vertices mirror graph edges that can sit in a 4-cycle; triads are
    stored compactly as (arm edge, arm edge, periphery index, kind); each
    periphery keeps its parent triad list, its live degree, and the last
    support value Q it reported to its ancestor edges. Mutable: trimming
    consumes the structure in place.
    """

    def __init__(self, graph: Graph, ranking: VertexRanking):
        self.graph = graph
        self.triads: list[tuple[int, int, int, int]] = []
        self.triad_alive: bytearray = bytearray()
        self.periph_key: list[tuple[int, int]] = []
        self.periph_parents: list[list[int]] = []
        self.periph_degree: list[int] = []
        self.periph_alive: bytearray = bytearray()
        self.edge_triads: list[list[int]] = [[] for _ in range(graph.m)]
        self.edge_degree: list[int] = [0] * graph.m
        self.edge_alive: bytearray = bytearray(graph.m)
        self.Q: list[int] = []
        self.S: list[int] = [0] * graph.m
        self.current_k: int = 0      # highest trim level completed
        self._initialized = False    # Q/S seeded on the first trim only

        rank = ranking.rank
        low_bin: list[list[tuple[int, int]]] = [[] for _ in range(graph.n)]
        high_bin: list[list[tuple[int, int]]] = [[] for _ in range(graph.n)]
        for eid, (lo, hi) in enumerate(graph.edges):
            if rank[lo] < rank[hi]:
                low_bin[lo].append((hi, eid))
                high_bin[hi].append((lo, eid))
            else:
                low_bin[hi].append((lo, eid))
                high_bin[lo].append((hi, eid))

        periph_index: dict[tuple[int, int], int] = {}

        def periphery(a: int, b: int) -> int:
            key = (a, b) if rank[a] < rank[b] else (b, a)
            idx = periph_index.get(key)
            if idx is None:
                idx = len(self.periph_key)
                periph_index[key] = idx
                self.periph_key.append(key)
                self.periph_parents.append([])
                self.periph_degree.append(0)
                self.periph_alive.append(1)
                self.Q.append(0)
            return idx

        def add_triad(e1: int, e2: int, p: int, kind: int) -> None:
            t = len(self.triads)
            self.triads.append((e1, e2, p, kind))
            self.triad_alive.append(1)
            self.periph_parents[p].append(t)
            self.periph_degree[p] += 1
            self.edge_triads[e1].append(t)
            self.edge_triads[e2].append(t)
            self.edge_degree[e1] += 1
            self.edge_degree[e2] += 1

        for v in range(graph.n):
            low = low_bin[v]
            # low-apex triads: both arms lead upward in rank
            for i in range(len(low) - 1):
                a, e1 = low[i]
                for j in range(i + 1, len(low)):
                    b, e2 = low[j]
                    add_triad(e1, e2, periphery(a, b), LOW_APEX)
            # median-apex triads: one arm upward, one downward
            if low:
                for b, e2 in high_bin[v]:
                    for a, e1 in low:
                        add_triad(e1, e2, periphery(a, b), MEDIAN_APEX)

        # degree-1 peripheries close no rectangles; drop them and their
        # triads up front, then drop edge vertices with nothing left
        for p in range(len(self.periph_key)):
            if self.periph_degree[p] == 1:
                t = self.periph_parents[p][0]
                e1, e2, _, _ = self.triads[t]
                self.triad_alive[t] = 0
                self.periph_degree[p] = 0
                self.periph_alive[p] = 0
                self.edge_degree[e1] -= 1
                self.edge_degree[e2] -= 1
            elif self.periph_degree[p] == 0:
                self.periph_alive[p] = 0
        for eid in range(graph.m):
            if self.edge_degree[eid] > 0:
                self.edge_alive[eid] = 1

    # -- inspection ------------------------------------------------------

    def alive_triads(self) -> list[tuple[int, int, int, int]]:
        return [t for i, t in enumerate(self.triads) if self.triad_alive[i]]

    def alive_periphery_degrees(self) -> dict[tuple[int, int], int]:
        return {
            self.periph_key[p]: self.periph_degree[p]
            for p in range(len(self.periph_key))
            if self.periph_alive[p]
        }

    def surviving_edges(self) -> list[int]:
        return [e for e in range(self.graph.m) if self.edge_alive[e]]

    def edge_peripheries(self, eid: int) -> list[int]:
        """Periphery indices of the edge's live triads (one per triad)."""
        return [
            self.triads[t][2] for t in self.edge_triads[eid] if self.triad_alive[t]
        ]


def build_etp_graph(graph: Graph, ranking: VertexRanking | None = None) -> ETPGraph:
    """Construct and prune the edge-triad-periphery structure."""
    if ranking is None:
        ranking = vertex_ranking(graph)
    return ETPGraph(graph, ranking)


def rectangle_supports(etp: ETPGraph) -> list[int]:
    """Exact 4-cycle count per graph edge: sum of (d(p) - 1) over the
    peripheries reachable from the edge. Call before trimming."""
    if etp.current_k > 0:
        raise ValueError("rectangle supports require an untrimmed structure")
    out = [0] * etp.graph.m
    for eid in range(etp.graph.m):
        for p in etp.edge_peripheries(eid):
            out[eid] += etp.periph_degree[p] - 1
    return out


class TrimPass:
    """Working state of one trim call: the kill set V and touched set U."""

    __slots__ = ("k", "kill", "slated", "touched")

    def __init__(self, etp: ETPGraph, k: int):
        self.k = k
        self.kill: list[int] = [
            e for e in range(etp.graph.m) if etp.edge_alive[e] and etp.S[e] < k
        ]
        self.slated = bytearray(etp.graph.m)
        for e in self.kill:
            self.slated[e] = 1
        self.touched: dict[int, bool] = {}

    def slate(self, etp: ETPGraph, e: int) -> None:
        if etp.S[e] < self.k and not self.slated[e] and etp.edge_alive[e]:
            self.slated[e] = 1
            self.kill.append(e)


def remove_edge_vertex(etp: ETPGraph, state: TrimPass, e: int) -> None:
    """Drop edge vertex e: each of its triads queues its periphery for
    examination and either removes the co-parent outright (when the triad
    was its last) or charges the periphery's reported support against it."""
    for t in etp.edge_triads[e]:
        if not etp.triad_alive[t]:
            continue
        e1, e2, p, _ = etp.triads[t]
        other = e2 if e1 == e else e1
        state.touched[p] = True
        if etp.edge_degree[other] == 1:
            # t was the co-parent's last triad; it goes with it
            etp.edge_alive[other] = 0
            etp.edge_degree[other] = 0
        else:
            etp.S[other] -= etp.Q[p]
            state.slate(etp, other)
            etp.edge_degree[other] -= 1
        etp.triad_alive[t] = 0
        etp.periph_degree[p] -= 1
    etp.edge_triads[e] = []
    etp.edge_degree[e] = 0
    etp.edge_alive[e] = 0


def examine_periphery(etp: ETPGraph, state: TrimPass, p: int) -> None:
    """Refresh periphery p after removals: propagate the support change to
    its ancestor edges, slating any that fall under k, and retire p (and its
    last triad) when it can close no more rectangles."""
    d = etp.periph_degree[p]
    if d == 0:
        etp.periph_alive[p] = 0
        return
    s = d - 1
    if s >= state.k:
        # every ancestor edge already holds >= k support through p alone;
        # skipping keeps Q at the last value folded into the S sums
        return
    delta = s - etp.Q[p]
    etp.Q[p] = s
    live_parents = [t for t in etp.periph_parents[p] if etp.triad_alive[t]]
    etp.periph_parents[p] = live_parents
    if delta:
        for t in live_parents:
            e1, e2, _, _ = etp.triads[t]
            for e in (e1, e2):
                etp.S[e] += delta
                state.slate(etp, e)
    if s == 0:
        t = live_parents[0]
        e1, e2, _, _ = etp.triads[t]
        etp.triad_alive[t] = 0
        etp.periph_degree[p] = 0
        etp.periph_alive[p] = 0
        for e in (e1, e2):
            if etp.edge_alive[e]:
                etp.edge_degree[e] -= 1


def trim(etp: ETPGraph, k: int, rng: random.Random | None = None) -> list[int]:
    """Remove edge vertices until all survivors have >= k rectangles.

    k must not decrease across calls on one structure; support values are
    seeded only on the first call. The optional rng scrambles the kill and
    examination processing order, which must not change the outcome (tested).
    Returns the surviving edge ids.
    """
    if k < 1:
        raise ValueError("support level must be at least 1")
    if k < etp.current_k:
        raise ValueError(
            f"trim level {k} is below the completed level {etp.current_k}; "
            "levels must not decrease"
        )
    if not etp._initialized:
        for p in range(len(etp.periph_key)):
            if etp.periph_alive[p]:
                etp.Q[p] = etp.periph_degree[p] - 1
        for e in range(etp.graph.m):
            if etp.edge_alive[e]:
                etp.S[e] = sum(etp.Q[p] for p in etp.edge_peripheries(e))
        etp._initialized = True

    state = TrimPass(etp, k)
    while state.kill:
        state.touched = {}
        if rng is not None:
            rng.shuffle(state.kill)
        while state.kill:
            e = state.kill.pop()
            state.slated[e] = 0
            if etp.edge_alive[e]:
                remove_edge_vertex(etp, state, e)
        queue = list(state.touched)
        if rng is not None:
            rng.shuffle(queue)
        for p in queue:
            if etp.periph_alive[p]:
                examine_periphery(etp, state, p)

    etp.current_k = k
    return etp.surviving_edges()


def trapezes_at(graph: Graph, etp: ETPGraph, k: int) -> TrapezeSet:
    """Maximal k-trapezes: components of the survivors of trim(k)."""
    if k < 1:
        raise ValueError("support level must be at least 1")
    if etp.current_k > k:
        raise ValueError(f"structure already trimmed past level {k}")
    if etp.current_k < k or not etp._initialized:
        trim(etp, k)
    members = tuple(
        frozenset(c) for c in component_edge_sets(graph, etp.surviving_edges())
    )
    return TrapezeSet(k=k, members=members)


def strong_trapezes_at(graph: Graph, etp: ETPGraph, k: int) -> TrapezeSet:
    """Rectangle-connected clusters among the survivors of trim(k).

    All arm edges of the triads under one live periphery are mutually
    rectangle-connected (any two of its triads close a rectangle), so a
    disjoint-set pass over peripheries recovers the components.
    """
    if k < 1:
        raise ValueError("support level must be at least 1")
    if etp.current_k > k:
        raise ValueError(f"structure already trimmed past level {k}")
    if etp.current_k < k or not etp._initialized:
        trim(etp, k)
    from .graph import DisjointSet

    ds = DisjointSet(graph.m)
    involved: set[int] = set()
    for p in range(len(etp.periph_key)):
        if not etp.periph_alive[p] or etp.periph_degree[p] < 2:
            continue
        first = -1
        for t in etp.periph_parents[p]:
            if not etp.triad_alive[t]:
                continue
            e1, e2, _, _ = etp.triads[t]
            for e in (e1, e2):
                involved.add(e)
                if first < 0:
                    first = e
                else:
                    ds.union(first, e)
    groups: dict[int, list[int]] = {}
    for e in sorted(involved):
        groups.setdefault(ds.find(e), []).append(e)
    members = tuple(
        frozenset(g) for g in sorted(groups.values(), key=lambda g: g[0]) if len(g) >= 2
    )
    return TrapezeSet(k=k, members=members)


@dataclass(frozen=True)
class LevelRun:
    """Weak and strong trapezes over an ascending schedule, plus summits."""

    schedule: tuple[int, ...]
    weak: dict[int, TrapezeSet] = field(default_factory=dict)
    strong: dict[int, TrapezeSet] = field(default_factory=dict)
    summits: tuple[tuple[int, frozenset[int]], ...] = ()


def trapeze_level_run(graph: Graph, schedule: list[int]) -> LevelRun:
    """Trim one structure through every level of the schedule.

    A member is a summit when none of its edges survives the next scheduled
    level; members at the final level are all summits.
    """
    if not schedule:
        raise ValueError("schedule must not be empty")
    if schedule[0] < 1 or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be strictly ascending with k >= 1")
    etp = build_etp_graph(graph)
    weak: dict[int, TrapezeSet] = {}
    strong: dict[int, TrapezeSet] = {}
    survivors: dict[int, set[int]] = {}
    for k in schedule:
        alive = set(trim(etp, k))
        survivors[k] = alive
        weak[k] = trapezes_at(graph, etp, k)
        strong[k] = strong_trapezes_at(graph, etp, k)
    summits: list[tuple[int, frozenset[int]]] = []
    for i, k in enumerate(schedule):
        nxt = survivors[schedule[i + 1]] if i + 1 < len(schedule) else set()
        for member in weak[k].members:
            if not (member & nxt):
                summits.append((k, member))
    return LevelRun(
        schedule=tuple(schedule), weak=weak, strong=strong, summits=tuple(summits)
    )


def brute_force_rectangles(graph: Graph) -> list[int]:
    """Testing oracle: count simple 4-cycles per edge from common-neighbor
    pairs. A cycle u-w1-v-w2 is tallied from the diagonal (u, v) holding the
    cycle's minimum vertex so each rectangle counts once. Small graphs only.
    """
    nbr = [set(a) for a in graph.adj]
    counts = [0] * graph.m
    n = graph.n
    for u in range(n):
        for v in range(u + 1, n):
            common = sorted(nbr[u] & nbr[v])
            if len(common) < 2:
                continue
            for i in range(len(common) - 1):
                w1 = common[i]
                if w1 < u:
                    continue
                for w2 in common[i + 1 :]:
                    for a, b in ((u, w1), (w1, v), (v, w2), (w2, u)):
                        counts[graph.adj[a][b]] += 1
    return counts

"""Trussness decomposition and the truss cluster family.

An edge's trussness is 2 plus the highest support level at which it still
belongs to a truss. Peeling edges in ascending residual-support order yields
the full decomposition in O(m^1.5); maximal k-trusses are then components of
the edges at class k and above, and agglomerating classes from the top down
produces the whole dendrogram in linear extra work.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .graph import DisjointSet, Graph, component_edge_sets, edge_nodes
from .triangles import SupportMap


@dataclass(frozen=True)
class KClassDecomposition:
    """Per-edge trussness phi and the classes it induces."""

    phi: tuple[int, ...]
    k_max: int
    classes: dict[int, list[int]]  # k -> edge ids with phi == k, ascending

    def edges_at_least(self, k: int) -> list[int]:
        out: list[int] = []
        for level, eids in self.classes.items():
            if level >= k:
                out.extend(eids)
        out.sort()
        return out


@dataclass(frozen=True)
class TrussSet:
    """Maximal trusses at one support level: disjoint edge sets."""

    k: int
    members: tuple[frozenset[int], ...]

    def member_nodes(self, graph: Graph, index: int) -> set[int]:
        return edge_nodes(graph, self.members[index])


def peel_classes(
    graph: Graph,
    initial: Sequence[int],
    triangle_delta: Callable[[int, int, int], int] | None = None,
) -> KClassDecomposition:
    """Shared peeling engine for plain and weighted trussness.

    Edges come off a bucket queue in (residual support, edge id) order; when
    edge (u, v) is peeled at level k, each surviving triangle (u, v, w) found
    from the lower-degree endpoint decrements s((u,w)) and s((v,w)) by the
    triangle's weight (1 when triangle_delta is None), clamped at k-2 so the
    queue never runs ahead of the current level.
    """
    m = graph.m
    edges = graph.edges
    adj = graph.adj
    deg = [len(a) for a in adj]

    cur = list(initial)
    alive = bytearray([1]) * m
    heap: list[tuple[int, int]] = [(cur[e], e) for e in range(m)]
    heapq.heapify(heap)
    pop, push = heapq.heappop, heapq.heappush

    phi = [0] * m
    remaining = m
    k = 2
    while remaining:
        frontier = k - 2
        while heap and heap[0][0] <= frontier:
            s, e = pop(heap)
            if not alive[e] or cur[e] != s:
                continue
            alive[e] = 0
            phi[e] = k
            remaining -= 1
            u, v = edges[e]
            if deg[u] > deg[v]:
                u, v = v, u
            av = adj[v]
            for w, e_uw in adj[u].items():
                if not alive[e_uw]:
                    continue
                e_vw = av.get(w)
                if e_vw is None or not alive[e_vw]:
                    continue
                d = 1 if triangle_delta is None else triangle_delta(e, e_uw, e_vw)
                if d:
                    for x in (e_uw, e_vw):
                        ns = cur[x] - d
                        if ns < frontier:
                            ns = frontier
                        if ns != cur[x]:
                            cur[x] = ns
                            push(heap, (ns, x))
        if remaining:
            while heap and (not alive[heap[0][1]] or cur[heap[0][1]] != heap[0][0]):
                pop(heap)
            # skip levels with empty classes straight to the next frontier
            k = max(k + 1, heap[0][0] + 2)

    classes: dict[int, list[int]] = {}
    for e in range(m):
        classes.setdefault(phi[e], []).append(e)
    k_max = max(classes) if classes else 0
    return KClassDecomposition(phi=tuple(phi), k_max=k_max, classes=classes)


def k_classes(graph: Graph, supports: SupportMap) -> KClassDecomposition:
    """Trussness of every edge from its triangle supports."""
    if len(supports.sup) != graph.m:
        raise ValueError("support map does not match graph")
    return peel_classes(graph, supports.sup)


def trusses_at(decomposition: KClassDecomposition, graph: Graph, k: int) -> TrussSet:
    """Maximal k-trusses: components of the edges with phi >= k."""
    if k < 2:
        raise ValueError("k must be at least 2")
    eids = decomposition.edges_at_least(k)
    members = tuple(frozenset(c) for c in component_edge_sets(graph, eids))
    return TrussSet(k=k, members=members)


def iterative_deletion_oracle(graph: Graph, k: int) -> TrussSet:
    """Definition-checking oracle: delete under-supported edges to fixpoint.

    Repeatedly removes any edge with fewer than k-2 triangles among the
    survivors, then returns the components of what remains. Small graphs
    only; the peeling path is the production route.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    nbr = [set(a) for a in graph.adj]
    alive = [True] * graph.m
    need = k - 2
    changed = True
    while changed:
        changed = False
        for eid, (lo, hi) in enumerate(graph.edges):
            if not alive[eid]:
                continue
            if len(nbr[lo] & nbr[hi]) < need:
                alive[eid] = False
                nbr[lo].discard(hi)
                nbr[hi].discard(lo)
                changed = True
    survivors = [e for e in range(graph.m) if alive[e]]
    members = tuple(frozenset(c) for c in component_edge_sets(graph, survivors))
    return TrussSet(k=k, members=members)


@dataclass(frozen=True)
class Merge:
    """One agglomeration event: absorbed cluster ids fold into the survivor."""

    level: int
    absorbed: tuple[int, ...]
    survivor: int


@dataclass(frozen=True)
class ClusterFamily:
    """Agglomerative family of edge clusters with merge levels.

    Leaves are single edges in the order they were added (descending class,
    ascending edge id within a class); cluster ids are leaf indices, and a
    merge always survives under the lowest participating id. Cutting the
    family at level k replays the merges with level >= k over the leaves of
    level >= k.
    """

    leaf_edges: tuple[int, ...]
    leaf_levels: tuple[int, ...]
    merges: tuple[Merge, ...]

    def clusters_at(self, k: int, min_size: int = 1) -> list[frozenset[int]]:
        """Edge sets of clusters alive at level k, ordered by cluster id."""
        nleaf = len(self.leaf_edges)
        ds = DisjointSet(nleaf)
        cid = list(range(nleaf))
        for merge in self.merges:
            if merge.level < k:
                break
            for a in merge.absorbed:
                root = ds.union(ds.find(merge.survivor), ds.find(a))
                cid[root] = merge.survivor
        groups: dict[int, list[int]] = {}
        for leaf in range(nleaf):
            if self.leaf_levels[leaf] >= k:
                groups.setdefault(cid[ds.find(leaf)], []).append(leaf)
        out = []
        for key in sorted(groups):
            leaves = groups[key]
            if len(leaves) >= min_size:
                out.append(frozenset(self.leaf_edges[i] for i in leaves))
        return out

    def summit_clusters(self, min_size: int = 2) -> list[tuple[int, frozenset[int]]]:
        """Clusters built purely from single edges at one level.

        A cluster qualifies while every merge in its history happened at its
        own formation level; absorbing a multi-edge cluster formed higher up
        disqualifies the result but the absorbed cluster itself is reported.
        Returns (formation level, edge set) pairs ordered by cluster id.
        """
        nleaf = len(self.leaf_edges)
        ds = DisjointSet(nleaf)
        cid = list(range(nleaf))
        members: dict[int, list[int]] = {i: [i] for i in range(nleaf)}
        pure: dict[int, bool] = {i: True for i in range(nleaf)}
        level_of: dict[int, int] = {}
        summits: dict[int, tuple[int, frozenset[int]]] = {}

        for merge in self.merges:
            parts = [merge.survivor, *merge.absorbed]
            ok = True
            for p in parts:
                if len(members[p]) > 1:
                    if not pure[p] or level_of[p] != merge.level:
                        ok = False
                        if pure[p] and level_of[p] > merge.level:
                            summits[p] = (
                                level_of[p],
                                frozenset(self.leaf_edges[i] for i in members[p]),
                            )
            merged = members[merge.survivor]
            for a in merge.absorbed:
                merged.extend(members.pop(a))
                pure.pop(a, None)
                level_of.pop(a, None)
                root = ds.union(ds.find(merge.survivor), ds.find(a))
                cid[root] = merge.survivor
            members[merge.survivor] = merged
            pure[merge.survivor] = ok
            level_of[merge.survivor] = merge.level

        for key, leaves in members.items():
            if len(leaves) >= min_size and pure[key]:
                summits[key] = (
                    level_of[key],
                    frozenset(self.leaf_edges[i] for i in leaves),
                )
        return [summits[key] for key in sorted(summits) if len(summits[key][1]) >= min_size]


def _family_by_vertex_connectivity(
    graph: Graph, order: Iterable[tuple[int, int]]
) -> ClusterFamily:
    """Single-link agglomeration: an arriving edge joins the clusters of its
    endpoints' components."""
    ds = DisjointSet(graph.n)
    cluster_of_root: dict[int, int] = {}
    leaf_edges: list[int] = []
    leaf_levels: list[int] = []
    merges: list[Merge] = []

    for level, eid in order:
        leaf = len(leaf_edges)
        leaf_edges.append(eid)
        leaf_levels.append(level)
        lo, hi = graph.edges[eid]
        ids = {leaf}
        for v in (lo, hi):
            c = cluster_of_root.get(ds.find(v))
            if c is not None:
                ids.add(c)
        root = ds.union(lo, hi)
        survivor = min(ids)
        ids.discard(survivor)
        if ids:
            merges.append(Merge(level=level, absorbed=tuple(sorted(ids)), survivor=survivor))
        cluster_of_root[ds.find(root)] = survivor

    return ClusterFamily(
        leaf_edges=tuple(leaf_edges), leaf_levels=tuple(leaf_levels), merges=tuple(merges)
    )


def class_order(decomposition: KClassDecomposition) -> list[tuple[int, int]]:
    """(level, edge id) pairs in descending class, ascending id within."""
    out: list[tuple[int, int]] = []
    for k in sorted(decomposition.classes, reverse=True):
        out.extend((k, e) for e in decomposition.classes[k])
    return out


def truss_dendrogram(decomposition: KClassDecomposition, graph: Graph) -> ClusterFamily:
    """Full dendrogram of maximal trusses by single-link agglomeration.

    Cutting at level k reproduces trusses_at(k); merge levels never increase
    along the sequence.
    """
    return _family_by_vertex_connectivity(graph, class_order(decomposition))


def summit_trusses(
    decomposition: KClassDecomposition, graph: Graph
) -> list[tuple[int, frozenset[int]]]:
    """Maximal trusses whose edges all sit exactly at the truss's own level.

    An edge belonging to a higher class would put the truss inside one of
    higher support, so such members are dropped. Results are (k, edge set)
    pairs; the union is edge-disjoint.
    """
    phi = decomposition.phi
    out: list[tuple[int, frozenset[int]]] = []
    for k in sorted(decomposition.classes):
        for member in trusses_at(decomposition, graph, k).members:
            if all(phi[e] == k for e in member):
                out.append((k, member))
    return out


def trussness_tsv(graph: Graph, decomposition: KClassDecomposition) -> str:
    """One "u<TAB>v<TAB>phi" line per edge."""
    lines = []
    for eid, (lo, hi) in enumerate(graph.edges):
        lines.append(f"{graph.labels[lo]}\t{graph.labels[hi]}\t{decomposition.phi[eid]}")
    return "\n".join(lines) + "\n"

"""Strong trusses: triangle-connected refinements of maximal trusses.

Edges are replayed from the highest class downward; whenever a new edge
closes a triangle with two edges already present, their clusters merge at
the new edge's class level. The resulting family contains every strong
truss at every level, plus the summit selection.
"""

from __future__ import annotations

from collections import deque

from .graph import DisjointSet, Graph
from .truss import ClusterFamily, KClassDecomposition, Merge, class_order


def strong_truss_family(graph: Graph, decomposition: KClassDecomposition) -> ClusterFamily:
    """Agglomerative family of strong trusses from the k-classes.

    Within a class, edges enter in ascending edge id; the lower-degree
    endpoint of each arrival is scanned for triangles closed with edges
    already present. Cluster ids follow addition order and the lowest id
    survives a merge, which pins the merge log for snapshot tests.
    """
    if len(decomposition.phi) != graph.m:
        raise ValueError("decomposition does not match graph")
    edges = graph.edges
    adj = graph.adj

    present = bytearray(graph.m)          # the membership set D
    leaf_of_edge = [0] * graph.m
    leaf_edges: list[int] = []
    leaf_levels: list[int] = []
    merges: list[Merge] = []
    ds = DisjointSet(graph.m)             # over leaf indices
    cid: list[int] = []                   # root leaf -> cluster id

    for level, eid in class_order(decomposition):
        leaf = len(leaf_edges)
        leaf_edges.append(eid)
        leaf_levels.append(level)
        leaf_of_edge[eid] = leaf
        cid.append(leaf)

        u, v = edges[eid]
        if len(adj[u]) > len(adj[v]):
            u, v = v, u
        av = adj[v]
        for w, e_uw in adj[u].items():
            if not present[e_uw]:
                continue
            e_vw = av.get(w)
            if e_vw is None or not present[e_vw]:
                continue
            ids = {
                cid[ds.find(leaf)],
                cid[ds.find(leaf_of_edge[e_uw])],
                cid[ds.find(leaf_of_edge[e_vw])],
            }
            if len(ids) > 1:
                survivor = min(ids)
                ids.discard(survivor)
                merges.append(
                    Merge(level=level, absorbed=tuple(sorted(ids)), survivor=survivor)
                )
                root = ds.find(survivor)
                for a in ids:
                    root = ds.union(root, ds.find(a))
                cid[root] = survivor
        present[eid] = 1

    return ClusterFamily(
        leaf_edges=tuple(leaf_edges), leaf_levels=tuple(leaf_levels), merges=tuple(merges)
    )


def strong_trusses_at(family: ClusterFamily, k: int) -> list[frozenset[int]]:
    """Strong k-trusses: clusters alive at level k with at least 2 edges."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return family.clusters_at(k, min_size=2)


def summit_strong_trusses(family: ClusterFamily) -> list[tuple[int, frozenset[int]]]:
    """Strong trusses whose whole history is merges of single edges.

    Absorbing a multi-edge cluster formed at a higher level means some edge
    already sits in a stronger truss, so such clusters are excluded.
    Returns (formation level, edge set) pairs.
    """
    return family.summit_clusters(min_size=2)


def triangle_connected_components(graph: Graph, edge_ids: list[int]) -> list[frozenset[int]]:
    """Oracle: breadth-first search over shared triangles, restricted to the
    given edges. Quadratic-ish; test use only."""
    eids = sorted(set(edge_ids))
    eidset = set(eids)
    seen: set[int] = set()
    components: list[frozenset[int]] = []
    for start in eids:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            e = queue.popleft()
            u, v = graph.edges[e]
            for w, e_uw in graph.adj[u].items():
                if e_uw not in eidset:
                    continue
                e_vw = graph.adj[v].get(w)
                if e_vw is None or e_vw not in eidset:
                    continue
                for nxt in (e_uw, e_vw):
                    if nxt not in seen:
                        seen.add(nxt)
                        comp.add(nxt)
                        queue.append(nxt)
        components.append(frozenset(comp))
    return components


def is_strong_truss(graph: Graph, edge_ids: frozenset[int], k: int) -> bool:
    """Direct definition check: internal support >= k-2 on every edge and
    the edge set triangle-connected within itself."""
    nbr: dict[int, set[int]] = {}
    for eid in edge_ids:
        lo, hi = graph.edges[eid]
        nbr.setdefault(lo, set()).add(hi)
        nbr.setdefault(hi, set()).add(lo)
    for eid in edge_ids:
        lo, hi = graph.edges[eid]
        if len(nbr[lo] & nbr[hi]) < k - 2:
            return False
    return len(triangle_connected_components(graph, sorted(edge_ids))) == 1

"""Immutable simple undirected graphs with canonical edges.

Vertices are dense integers 0..n-1; external string labels live in a side
table. Edges are stored once in canonical (lo, hi) form with lo < hi and an
optional positive weight. Per-vertex adjacency maps neighbor -> edge id and
doubles as the constant-time edge index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Sequence

Weight = Fraction | int


class EdgeListParseError(ValueError):
    """Malformed edge-list input; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph, immutable after construction."""

    n: int
    labels: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]          # canonical (lo, hi), lo < hi
    weights: tuple[Weight, ...]
    adj: tuple[dict[int, int], ...] = field(repr=False)  # neighbor -> edge id

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> list[int]:
        """Neighbors of v in ascending vertex order."""
        return list(self.adj[v])

    def edge_id(self, u: int, v: int) -> int | None:
        """Edge id for the pair (u, v) in either order, or None."""
        return self.adj[u].get(v) if u < self.n else None

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edge_label_pair(self, eid: int) -> tuple[str, str]:
        lo, hi = self.edges[eid]
        return self.labels[lo], self.labels[hi]


def build_graph(
    n: int,
    edges: Iterable[tuple[int, int]],
    weights: Sequence[Weight] | None = None,
    labels: Sequence[str] | None = None,
) -> Graph:
    """Assemble a Graph from already-deduplicated vertex pairs.

    Pairs are canonicalized to (lo, hi). Self loops and duplicates are
    rejected here (the edge-list loader applies its own lenient policy
    before calling this).
    """
    canon: list[tuple[int, int]] = []
    for u, v in edges:
        if u == v:
            raise ValueError(f"self loop at vertex {u}")
        canon.append((u, v) if u < v else (v, u))
    if weights is None:
        ws: tuple[Weight, ...] = (1,) * len(canon)
    else:
        if len(weights) != len(canon):
            raise ValueError("weights length does not match edges")
        for w in weights:
            if w <= 0:
                raise ValueError(f"non-positive edge weight {w}")
        ws = tuple(weights)
    if labels is None:
        label_tuple = tuple(str(i) for i in range(n))
    else:
        if len(labels) != n:
            raise ValueError("labels length does not match vertex count")
        label_tuple = tuple(labels)

    nbr: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for eid, (lo, hi) in enumerate(canon):
        if hi >= n:
            raise ValueError(f"vertex {hi} out of range for n={n}")
        nbr[lo].append((hi, eid))
        nbr[hi].append((lo, eid))
    adj: list[dict[int, int]] = []
    for v in range(n):
        nbr[v].sort()
        d = dict(nbr[v])
        if len(d) != len(nbr[v]):
            raise ValueError(f"duplicate edge at vertex {v}")
        adj.append(d)
    return Graph(n=n, labels=label_tuple, edges=tuple(canon), weights=ws, adj=tuple(adj))


def load_edge_list(stream: IO[str] | Iterable[str], weighted: bool = False) -> Graph:
    """Parse whitespace-separated "u v [w]" lines into a canonical Graph.

    Lines starting with '#' and blank lines are ignored. Self loops are
    dropped. Duplicate edges collapse to one edge keeping the maximum
    weight seen. Vertex ids are assigned by first appearance.
    """
    ids: dict[str, int] = {}
    labels: list[str] = []
    found: dict[tuple[int, int], Weight] = {}

    def vid(token: str) -> int:
        i = ids.get(token)
        if i is None:
            i = len(labels)
            ids[token] = i
            labels.append(token)
        return i

    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if weighted:
            if len(tokens) not in (2, 3):
                raise EdgeListParseError(lineno, f"expected 2 or 3 tokens, got {len(tokens)}")
        elif len(tokens) != 2:
            raise EdgeListParseError(lineno, f"expected 2 tokens, got {len(tokens)}")
        u, v = vid(tokens[0]), vid(tokens[1])
        if u == v:
            continue
        if weighted and len(tokens) == 3:
            try:
                w: Weight = Fraction(tokens[2])
            except (ValueError, ZeroDivisionError):
                raise EdgeListParseError(lineno, f"bad weight {tokens[2]!r}") from None
            if w <= 0:
                raise EdgeListParseError(lineno, f"non-positive weight {tokens[2]}")
        else:
            w = 1
        key = (u, v) if u < v else (v, u)
        prev = found.get(key)
        if prev is None or w > prev:
            found[key] = w

    pairs = list(found)
    return build_graph(len(labels), pairs, [found[p] for p in pairs], labels)


@dataclass(frozen=True)
class VertexRanking:
    """Total order over vertices by (degree, external label) ascending."""

    rank: tuple[int, ...]   # vertex id -> rank
    order: tuple[int, ...]  # rank -> vertex id

    def __getitem__(self, v: int) -> int:
        return self.rank[v]


def vertex_ranking(graph: Graph) -> VertexRanking:
    """Rank vertices by degree, breaking ties by external label.

    Using labels rather than internal ids keeps the order independent of the
    input file's line order.
    """
    order = sorted(range(graph.n), key=lambda v: (len(graph.adj[v]), graph.labels[v]))
    rank = [0] * graph.n
    for r, v in enumerate(order):
        rank[v] = r
    return VertexRanking(rank=tuple(rank), order=tuple(order))


class DisjointSet:
    """Union-find with path halving and union by size."""

    __slots__ = ("parent", "size")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> int:
        """Merge the sets of a and b; returns the surviving root."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return ra

    def together(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)


def connected_components(graph: Graph) -> list[list[int]]:
    """Partition edge ids by connected component.

    Isolated vertices carry no edges and therefore do not appear. Components
    are ordered by their smallest edge id; edge ids ascend within each.
    """
    ds = DisjointSet(graph.n)
    for lo, hi in graph.edges:
        ds.union(lo, hi)
    groups: dict[int, list[int]] = {}
    for eid, (lo, _) in enumerate(graph.edges):
        groups.setdefault(ds.find(lo), []).append(eid)
    return sorted(groups.values(), key=lambda g: g[0])


def component_edge_sets(graph: Graph, edge_ids: Iterable[int]) -> list[list[int]]:
    """Connected components of the subgraph induced by the given edges.

    Returns lists of the original edge ids, grouped by component, in the
    same deterministic order as connected_components.
    """
    eids = sorted(set(edge_ids))
    ds = DisjointSet(graph.n)
    for eid in eids:
        lo, hi = graph.edges[eid]
        ds.union(lo, hi)
    groups: dict[int, list[int]] = {}
    for eid in eids:
        groups.setdefault(ds.find(graph.edges[eid][0]), []).append(eid)
    return sorted(groups.values(), key=lambda g: g[0])


@dataclass(frozen=True)
class Subgraph:
    """Graph induced by an edge subset, with maps back to the parent."""

    graph: Graph
    vertex_of: tuple[int, ...]  # new vertex id -> original vertex id
    edge_of: tuple[int, ...]    # new edge id -> original edge id


def induced_edge_subgraph(graph: Graph, edge_ids: Iterable[int]) -> Subgraph:
    """Subgraph containing exactly the given edges and their endpoints."""
    eids = sorted(set(edge_ids))
    for eid in eids:
        if not 0 <= eid < graph.m:
            raise ValueError(f"unknown edge id {eid}")
    vmap: dict[int, int] = {}
    vertex_of: list[int] = []
    for eid in eids:
        for v in graph.edges[eid]:
            if v not in vmap:
                vmap[v] = len(vertex_of)
                vertex_of.append(v)
    pairs = [(vmap[graph.edges[e][0]], vmap[graph.edges[e][1]]) for e in eids]
    sub = build_graph(
        len(vertex_of),
        pairs,
        [graph.weights[e] for e in eids],
        [graph.labels[v] for v in vertex_of],
    )
    return Subgraph(graph=sub, vertex_of=tuple(vertex_of), edge_of=tuple(eids))


def edge_nodes(graph: Graph, edge_ids: Iterable[int]) -> set[int]:
    """Vertex set touched by the given edges."""
    nodes: set[int] = set()
    for eid in edge_ids:
        lo, hi = graph.edges[eid]
        nodes.add(lo)
        nodes.add(hi)
    return nodes

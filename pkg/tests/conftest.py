import io
import random
from pathlib import Path

import pytest

from trusskit import Graph, build_graph, load_edge_list

DATA = Path(__file__).parent / "data"


def graph_from(text: str, weighted: bool = False) -> Graph:
    return load_edge_list(io.StringIO(text), weighted=weighted)


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def er_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return build_graph(n, edges)


def random_graphs(count: int, max_n: int, seed: int, densities=(0.05, 0.2, 0.4, 0.6, 0.9)):
    """Seeded stream of (index, Graph) pairs spanning sizes and densities."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        n = rng.randint(4, max_n)
        p = rng.choice(densities)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        if not edges:
            continue
        yield made, build_graph(n, edges)
        made += 1


@pytest.fixture(scope="session")
def dolphins() -> Graph:
    with open(DATA / "dolphins.tsv", encoding="utf-8") as handle:
        return load_edge_list(handle)

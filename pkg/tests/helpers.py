from itertools import combinations

import networkx as nx

from app.models.graph import Graph
from app.services.generator_service import random_multigraph
from app.services.graph_service import is_connected_subset, is_fvs


def cycle(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def atlas_graphs(max_n: int = 5, connected_only: bool = True):
    """Every graph of the networkx atlas with 1..max_n vertices."""
    out = []
    for h in nx.graph_atlas_g():
        if not 1 <= h.number_of_nodes() <= max_n:
            continue
        if connected_only and not nx.is_connected(h):
            continue
        out.append(Graph.from_networkx(h))
    return out


def multigraph_corpus(count: int = 40, max_n: int = 7):
    graphs = []
    for seed in range(count):
        n = 2 + seed % (max_n - 1)
        graphs.append(random_multigraph(n, n + seed % 4, seed=seed))
    return graphs


def min_cfvs_size(g: Graph):
    """Exhaustive optimum, None when no connected feedback vertex set exists."""
    for size in range(g.n + 1):
        for candidate in combinations(range(g.n), size):
            if is_fvs(g, candidate) and is_connected_subset(g, candidate):
                return size
    return None

import logging
from typing import Iterable, List, Optional, Tuple

import networkx as nx
from networkx.utils import UnionFind

from app.core.exceptions import GraphFormatError
from app.models.graph import Digraph, Graph, Partition, VertexSet
from app.schemas.schemas import GraphFormat

logger = logging.getLogger(__name__)

COMMENT_PREFIXES = ("c", "#", "%")


# PARSING

def _content_lines(text: str) -> Iterable[Tuple[int, List[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0].startswith(COMMENT_PREFIXES):
            continue
        yield number, tokens


def _to_int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"expected an integer, got {token!r}", line)


def _endpoint(token: str, n: int, line: int) -> int:
    """1-indexed token -> 0-indexed vertex id."""
    value = _to_int(token, line)
    if not 1 <= value <= n:
        raise GraphFormatError(f"vertex {value} outside 1..{n}", line)
    return value - 1


def detect_format(text: str) -> GraphFormat:
    for _, tokens in _content_lines(text):
        if tokens[0] == "p" and len(tokens) >= 2:
            if tokens[1] == "tw":
                return GraphFormat.PACE_GR
            if tokens[1] in ("edge", "col"):
                return GraphFormat.DIMACS_EDGE
        return GraphFormat.EDGE_LIST
    return GraphFormat.EDGE_LIST


def parse_graph(text: str, format: Optional[GraphFormat] = None) -> Graph:
    """Parse a graph file; vertices are 1-indexed on disk and 0-indexed in memory.

    Duplicate edge lines are kept as parallel edges.
    """
    if format is None:
        format = detect_format(text)

    if format == GraphFormat.EDGE_LIST:
        pairs = []
        for number, tokens in _content_lines(text):
            if len(tokens) != 2:
                raise GraphFormatError(f"expected 'u v', got {' '.join(tokens)!r}", number)
            u, v = (_to_int(t, number) for t in tokens)
            if u < 1 or v < 1:
                raise GraphFormatError("vertices are 1-indexed", number)
            pairs.append((u - 1, v - 1))
        n = max((max(p) for p in pairs), default=-1) + 1
        return Graph(n, tuple(pairs))

    keyword = "tw" if format == GraphFormat.PACE_GR else "edge"
    n = m = None
    header_line = 0
    edges = []
    for number, tokens in _content_lines(text):
        if n is None:
            if tokens[0] != "p" or len(tokens) != 4 or tokens[1] not in (keyword, "col"):
                raise GraphFormatError(f"malformed header, expected 'p {keyword} n m'", number)
            n, m = _to_int(tokens[2], number), _to_int(tokens[3], number)
            if n < 0 or m < 0:
                raise GraphFormatError("negative counts in header", number)
            header_line = number
            continue
        if format == GraphFormat.DIMACS_EDGE:
            if tokens[0] != "e" or len(tokens) != 3:
                raise GraphFormatError(f"expected 'e u v', got {' '.join(tokens)!r}", number)
            tokens = tokens[1:]
        elif len(tokens) != 2:
            raise GraphFormatError(f"expected 'u v', got {' '.join(tokens)!r}", number)
        edges.append((_endpoint(tokens[0], n, number), _endpoint(tokens[1], n, number)))

    if n is None:
        raise GraphFormatError(f"missing 'p {keyword}' header", 1)
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}", header_line)
    return Graph(n, tuple(edges))


def serialize_graph(g: Graph) -> str:
    """PACE .gr text."""
    lines = [f"p tw {g.n} {g.m}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_vertex_line(tokens: List[str], n: int, line: int) -> VertexSet:
    return frozenset(_endpoint(t, n, line) for t in tokens)


def parse_groups(text: str, n: int) -> Tuple[VertexSet, ...]:
    """One group per line, space separated, 1-indexed."""
    return tuple(parse_vertex_line(tokens, n, number) for number, tokens in _content_lines(text))


def parse_digraph(text: str) -> Digraph:
    """`p arc n m` header followed by `a u v` (or bare `u v`) lines."""
    n = None
    arcs = []
    for number, tokens in _content_lines(text):
        if n is None:
            if tokens[0] != "p" or len(tokens) != 4 or tokens[1] != "arc":
                raise GraphFormatError("malformed header, expected 'p arc n m'", number)
            n = _to_int(tokens[2], number)
            continue
        if tokens[0] == "a":
            tokens = tokens[1:]
        if len(tokens) != 2:
            raise GraphFormatError(f"expected 'a u v', got {' '.join(tokens)!r}", number)
        arcs.append((_endpoint(tokens[0], n, number), _endpoint(tokens[1], n, number)))
    if n is None:
        raise GraphFormatError("missing 'p arc' header", 1)
    return Digraph(n, frozenset(arcs))


# STRUCTURE

def is_forest(g: Graph) -> bool:
    forest = UnionFind(g.vertices)
    for u, v in g.edges:
        if u == v or forest[u] == forest[v]:
            return False
        forest.union(u, v)
    return True


def induced_is_forest(g: Graph, s: Iterable[int]) -> bool:
    """is_forest(g[s]) without building the subgraph."""
    members = frozenset(s)
    forest = UnionFind(members)
    for u, v in g.edges:
        if u in members and v in members:
            if u == v or forest[u] == forest[v]:
                return False
            forest.union(u, v)
    return True


def is_connected_subset(g: Graph, s: Iterable[int]) -> bool:
    members = frozenset(s)
    if len(members) <= 1:
        return True
    return nx.is_connected(g.simple.subgraph(members))


def connected_components(g: Graph, s: Iterable[int]) -> Partition:
    return Partition.of(nx.connected_components(g.simple.subgraph(frozenset(s))))


def delete_vertices(g: Graph, s: Iterable[int]) -> Tuple[Graph, Tuple[int, ...]]:
    """Induced subgraph on V minus s, plus remap[new_id] == old_id."""
    removed = frozenset(s)
    remap = tuple(v for v in g.vertices if v not in removed)
    index = {old: new for new, old in enumerate(remap)}
    edges = tuple((index[u], index[v]) for u, v in g.edges if u in index and v in index)
    return Graph(len(remap), edges), remap


def is_fvs(g: Graph, s: Iterable[int]) -> bool:
    removed = frozenset(s)
    return induced_is_forest(g, (v for v in g.vertices if v not in removed))

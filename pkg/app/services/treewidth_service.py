import logging
from typing import Dict, List, Optional, Tuple

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in

from app.core.exceptions import GraphFormatError, InvalidDecompositionError
from app.models.decomposition import NiceNode, NiceTreeDecomposition, NodeKind, TreeDecomposition
from app.models.graph import Graph, VertexSet
from app.services.graph_service import COMMENT_PREFIXES

logger = logging.getLogger(__name__)


# VALIDATION

def _is_tree(td: TreeDecomposition) -> bool:
    if not td.bags or any(a not in td.bags or b not in td.bags for a, b in td.tree_edges):
        return False
    # nx.Graph collapses repeated edges
    return len(td.tree_edges) == len(td.bags) - 1 and nx.is_tree(td.tree())


def _bag_subtrees_connected(td: TreeDecomposition) -> bool:
    tree = td.tree()
    holders: Dict[int, List[int]] = {}
    for t, bag in td.bags.items():
        for v in bag:
            holders.setdefault(v, []).append(t)
    return all(nx.is_connected(tree.subgraph(nodes)) for nodes in holders.values())


def validate_td(g: Graph, td: TreeDecomposition) -> bool:
    """Coverage of vertices and edges, connected bag subtrees, and a tree shape."""
    if not _is_tree(td):
        return False
    covered = set()
    for bag in td.bags.values():
        covered |= bag
    if any(v not in covered for v in g.vertices) or any(not 0 <= v < g.n for v in covered):
        return False
    bags = list(td.bags.values())
    for u, v in g.edges:
        if not any(u in bag and v in bag for bag in bags):
            return False
    return _bag_subtrees_connected(td)


def validate_nice(ntd: NiceTreeDecomposition) -> bool:
    """Structural rules of a nice decomposition (graph-independent)."""
    if ntd.node(ntd.root).bag:
        return False
    for node in ntd.nodes:
        children = [ntd.node(c) for c in node.children]
        if node.kind == NodeKind.LEAF:
            if children:
                return False
        elif node.kind == NodeKind.JOIN:
            if len(children) != 2 or any(c.bag != node.bag for c in children):
                return False
        elif node.kind == NodeKind.INTRODUCE:
            if len(children) != 1 or node.vertex not in node.bag:
                return False
            if children[0].bag != node.bag - {node.vertex}:
                return False
        elif node.kind == NodeKind.FORGET:
            if len(children) != 1 or node.vertex in node.bag:
                return False
            if children[0].bag != node.bag | {node.vertex}:
                return False
    return True


# CONSTRUCTION

def greedy_td(g: Graph) -> TreeDecomposition:
    """Min-fill-in elimination ordering; an upper bound on treewidth, nothing more."""
    _, decomposition = treewidth_min_fill_in(g.to_simple_networkx())
    order = sorted(decomposition.nodes(), key=lambda bag: (len(bag), sorted(bag)))
    index = {bag: i for i, bag in enumerate(order)}
    bags = {i: frozenset(bag) for bag, i in index.items()}
    edges = tuple(sorted(tuple(sorted((index[a], index[b]))) for a, b in decomposition.edges()))
    td = TreeDecomposition(bags, edges)
    logger.debug(f"greedy decomposition of width {td.width} with {len(bags)} bags")
    return td


class _NiceBuilder:
    def __init__(self):
        self.nodes: List[NiceNode] = []

    def add(self, kind: NodeKind, bag: VertexSet, children: Tuple[int, ...] = (), vertex: Optional[int] = None) -> int:
        node = NiceNode(len(self.nodes), kind, frozenset(bag), children, vertex)
        self.nodes.append(node)
        return node.id

    def bag(self, i: int) -> VertexSet:
        return self.nodes[i].bag

    def morph(self, top: int, target: VertexSet) -> int:
        """Forget what target lacks, then introduce what it adds."""
        current = self.bag(top)
        for v in sorted(current - target):
            current = current - {v}
            top = self.add(NodeKind.FORGET, current, (top,), v)
        for v in sorted(target - current):
            current = current | {v}
            top = self.add(NodeKind.INTRODUCE, current, (top,), v)
        return top


def nicify(td: TreeDecomposition, root: Optional[int] = None) -> NiceTreeDecomposition:
    """Nice decomposition of the same width; leaves and root carry empty bags."""
    if not _is_tree(td) or not _bag_subtrees_connected(td):
        raise InvalidDecompositionError("input is not a valid tree decomposition")

    root = td.nodes[0] if root is None else root
    if root not in td.bags:
        raise InvalidDecompositionError(f"root {root} is not a bag of the decomposition")
    rooted = nx.bfs_tree(td.tree(), root, sort_neighbors=sorted)
    order = list(nx.topological_sort(rooted))

    builder = _NiceBuilder()
    top: Dict[int, int] = {}
    for t in reversed(order):
        bag = td.bags[t]
        children = sorted(rooted.successors(t))
        if not children:
            top[t] = builder.morph(builder.add(NodeKind.LEAF, frozenset()), bag)
            continue
        branches = [builder.morph(top[s], bag) for s in children]
        acc = branches[0]
        for branch in branches[1:]:
            acc = builder.add(NodeKind.JOIN, bag, (acc, branch))
        top[t] = acc

    final = builder.morph(top[root], frozenset())
    return NiceTreeDecomposition(tuple(builder.nodes), final)


def nice_from_graph(g: Graph) -> NiceTreeDecomposition:
    return nicify(greedy_td(g))


# PACE .td FORMAT

def parse_td(text: str) -> TreeDecomposition:
    """`s td N W+1 n`, `b i v...` bag lines and `i j` tree edges, all 1-indexed."""
    declared = None
    bags: Dict[int, VertexSet] = {}
    edges = []
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0].startswith(COMMENT_PREFIXES):
            continue
        try:
            values = [int(t) for t in tokens[2:]] if tokens[0] in ("s", "b") else [int(t) for t in tokens]
        except ValueError:
            raise GraphFormatError(f"non-integer token in {raw.strip()!r}", number)
        if tokens[0] == "s":
            if declared is not None or len(tokens) != 5 or tokens[1] != "td":
                raise GraphFormatError("malformed solution line, expected 's td N W n'", number)
            declared = values
        elif tokens[0] == "b":
            if declared is None:
                raise GraphFormatError("bag line before 's td' line", number)
            try:
                bag_id = int(tokens[1])
            except ValueError:
                raise GraphFormatError(f"bad bag id {tokens[1]!r}", number)
            if not 1 <= bag_id <= declared[0]:
                raise GraphFormatError(f"bag id {bag_id} outside 1..{declared[0]}", number)
            if any(not 1 <= v <= declared[2] for v in values):
                raise GraphFormatError(f"bag {bag_id} names a vertex outside 1..{declared[2]}", number)
            bags[bag_id - 1] = frozenset(v - 1 for v in values)
        else:
            if declared is None or len(values) != 2:
                raise GraphFormatError(f"expected a tree edge 'i j', got {raw.strip()!r}", number)
            edges.append((values[0] - 1, values[1] - 1))
    if declared is None:
        raise GraphFormatError("missing 's td' line", 1)
    for i in range(declared[0]):
        bags.setdefault(i, frozenset())
    return TreeDecomposition(bags, tuple(edges))


def serialize_td(td: TreeDecomposition, n: int) -> str:
    index = {t: i + 1 for i, t in enumerate(td.nodes)}
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for t in td.nodes:
        members = " ".join(str(v + 1) for v in sorted(td.bags[t]))
        lines.append(f"b {index[t]} {members}".rstrip())
    lines.extend(f"{index[a]} {index[b]}" for a, b in td.tree_edges)
    return "\n".join(lines) + "\n"


def serialize_nice_td(ntd: NiceTreeDecomposition, n: int) -> str:
    """PACE .td plus one `c` line per node naming its kind."""
    lines = [f"c root {ntd.root + 1}"]
    for node in ntd.nodes:
        vertex = "" if node.vertex is None else f" {node.vertex + 1}"
        lines.append(f"c node {node.id + 1} {node.kind.value}{vertex}")
    return "\n".join(lines) + "\n" + serialize_td(ntd.to_tree_decomposition(), n)

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

import networkx as nx

from app.models.graph import VertexSet


@dataclass(frozen=True)
class TreeDecomposition:
    bags: Mapping[int, VertexSet]
    tree_edges: Tuple[Tuple[int, int], ...] = ()

    @property
    def nodes(self) -> List[int]:
        return sorted(self.bags)

    @property
    def width(self) -> int:
        return max((len(bag) for bag in self.bags.values()), default=0) - 1

    def tree(self) -> nx.Graph:
        t = nx.Graph()
        t.add_nodes_from(sorted(self.bags))
        t.add_edges_from(sorted(self.tree_edges))
        return t


class NodeKind(str, Enum):
    LEAF = "leaf"
    INTRODUCE = "introduce"
    FORGET = "forget"
    JOIN = "join"


@dataclass(frozen=True)
class NiceNode:
    id: int
    kind: NodeKind
    bag: VertexSet
    children: Tuple[int, ...] = ()
    vertex: Optional[int] = None  # introduced / forgotten vertex


@dataclass(frozen=True)
class NiceTreeDecomposition:
    nodes: Tuple[NiceNode, ...]
    root: int

    @property
    def width(self) -> int:
        return max((len(node.bag) for node in self.nodes), default=0) - 1

    def __len__(self) -> int:
        return len(self.nodes)

    def node(self, i: int) -> NiceNode:
        return self.nodes[i]

    def postorder(self) -> Iterator[NiceNode]:
        """Children before parents, without recursion."""
        stack = [(self.root, False)]
        while stack:
            i, expanded = stack.pop()
            if expanded:
                yield self.nodes[i]
                continue
            stack.append((i, True))
            for child in reversed(self.nodes[i].children):
                stack.append((child, False))

    def subtree_vertices(self) -> Dict[int, VertexSet]:
        """V(G_i) for every node i."""
        below: Dict[int, VertexSet] = {}
        for node in self.postorder():
            acc = set(node.bag)
            for child in node.children:
                acc |= below[child]
            below[node.id] = frozenset(acc)
        return below

    def to_tree_decomposition(self) -> TreeDecomposition:
        edges = tuple((node.id, child) for node in self.nodes for child in node.children)
        return TreeDecomposition({node.id: node.bag for node in self.nodes}, edges)

    def kind_counts(self) -> Dict[str, int]:
        counts = defaultdict(int)
        for node in self.nodes:
            counts[node.kind.value] += 1
        return dict(counts)

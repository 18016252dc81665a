from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Iterable, Iterator, Optional, Tuple

import networkx as nx

from app.core.exceptions import InvalidInstanceError

VertexSet = FrozenSet[int]
Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph on vertices 0..n-1.

    Loops and parallel edges are kept. Edges are stored canonically as
    sorted (min, max) pairs so two graphs with the same edge multiset compare
    equal regardless of input order.
    """

    n: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise InvalidInstanceError(f"vertex count must be non-negative, got {self.n}")
        canonical = []
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInstanceError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            canonical.append((u, v) if u <= v else (v, u))
        object.__setattr__(self, "edges", tuple(sorted(canonical)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def multiplicity(self) -> Tuple[Counter, ...]:
        """Per vertex, neighbor -> number of edges; a loop counts once under v itself."""
        table = tuple(Counter() for _ in range(self.n))
        for u, v in self.edges:
            table[u][v] += 1
            if u != v:
                table[v][u] += 1
        return table

    @cached_property
    def _neighbor_sets(self) -> Tuple[VertexSet, ...]:
        return tuple(frozenset(w for w in counts if w != v) for v, counts in enumerate(self.multiplicity))

    def neighbors(self, v: int) -> VertexSet:
        return self._neighbor_sets[v]

    def has_loop(self, v: int) -> bool:
        return self.multiplicity[v][v] > 0

    def degree(self, v: int) -> int:
        counts = self.multiplicity[v]
        return sum(counts.values()) + counts[v]

    def to_networkx(self) -> nx.MultiGraph:
        h = nx.MultiGraph()
        h.add_nodes_from(self.vertices)
        h.add_edges_from(self.edges)
        return h

    def to_simple_networkx(self) -> nx.Graph:
        """Adjacency only: loops dropped, parallel edges collapsed."""
        h = nx.Graph()
        h.add_nodes_from(self.vertices)
        h.add_edges_from((u, v) for u, v in self.edges if u != v)
        return h

    @cached_property
    def simple(self) -> nx.Graph:
        """Shared simple view for connectivity queries; do not mutate."""
        return self.to_simple_networkx()

    @classmethod
    def from_networkx(cls, h: nx.Graph) -> "Graph":
        try:
            order = sorted(h.nodes())
        except TypeError:
            order = list(h.nodes())
        index = {node: i for i, node in enumerate(order)}
        return cls(len(order), tuple((index[u], index[v]) for u, v in h.edges()))


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: FrozenSet[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        arcs = frozenset(self.arcs)
        for u, v in arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInstanceError(f"arc ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
        object.__setattr__(self, "arcs", arcs)

    @cached_property
    def _out(self) -> Tuple[Tuple[int, ...], ...]:
        out = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            out[u].append(v)
        return tuple(tuple(sorted(targets)) for targets in out)

    def out_neighbors(self, v: int) -> Tuple[int, ...]:
        return self._out[v]


@dataclass(frozen=True, order=True)
class Partition:
    """Set partition in canonical form: sorted pieces ordered by their minimum."""

    pieces: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        seen = set()
        canonical = []
        for piece in self.pieces:
            members = tuple(sorted(set(piece)))
            if not members:
                raise InvalidInstanceError("partition pieces must be non-empty")
            if seen.intersection(members):
                raise InvalidInstanceError("partition pieces must be pairwise disjoint")
            seen.update(members)
            canonical.append(members)
        canonical.sort()
        object.__setattr__(self, "pieces", tuple(canonical))

    @classmethod
    def of(cls, pieces: Iterable[Iterable[int]]) -> "Partition":
        return cls(tuple(tuple(p) for p in pieces))

    @property
    def ground(self) -> VertexSet:
        return frozenset(v for piece in self.pieces for v in piece)

    def __len__(self) -> int:
        return len(self.pieces)

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        return iter(self.pieces)

    def piece_of(self, v: int) -> Optional[Tuple[int, ...]]:
        for piece in self.pieces:
            if v in piece:
                return piece
        return None

    def without(self, v: int) -> "Partition":
        """Drop v; a piece left empty disappears."""
        return Partition(tuple(rest for rest in (tuple(x for x in p if x != v) for p in self.pieces) if rest))

    def merged_with(self, v: int, touched: Iterable[Tuple[int, ...]]) -> "Partition":
        """Add v as one piece together with every piece in `touched`."""
        touched = set(touched)
        joined = [v]
        kept = []
        for piece in self.pieces:
            if piece in touched:
                joined.extend(piece)
            else:
                kept.append(piece)
        kept.append(tuple(joined))
        return Partition(tuple(kept))

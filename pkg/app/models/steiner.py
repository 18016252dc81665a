from dataclasses import dataclass
from typing import NamedTuple, Tuple

from app.core.exceptions import InvalidInstanceError
from app.models.graph import Digraph, Graph, VertexSet


@dataclass(frozen=True)
class DsotInstance:
    """Out-tree on at most p vertices, rooted at `root`, spanning `terminals`."""

    d: Digraph
    root: int
    terminals: VertexSet
    p: int

    def __post_init__(self):
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        if not 0 <= self.root < self.d.n:
            raise InvalidInstanceError(f"root {self.root} is not a vertex")
        if any(not 0 <= t < self.d.n for t in self.terminals):
            raise InvalidInstanceError("terminal outside the vertex range")
        if self.p < 1:
            raise InvalidInstanceError("p must be at least 1")


@dataclass(frozen=True)
class GstInstance:
    g: Graph
    groups: Tuple[VertexSet, ...]
    p: int

    def __post_init__(self):
        groups = tuple(frozenset(group) for group in self.groups)
        object.__setattr__(self, "groups", groups)
        if self.p < 0:
            raise InvalidInstanceError("p must be non-negative")
        seen = set()
        for i, group in enumerate(groups):
            if not group:
                raise InvalidInstanceError(f"group {i + 1} is empty")
            if any(not 0 <= v < self.g.n for v in group):
                raise InvalidInstanceError(f"group {i + 1} names a vertex outside the graph")
            if seen & group:
                raise InvalidInstanceError(f"group {i + 1} overlaps an earlier group")
            seen |= group

    @property
    def l(self) -> int:
        return len(self.groups)


class DsotReduction(NamedTuple):
    digraph: Digraph
    terminals: VertexSet
    budget: int
    root_candidates: Tuple[int, ...]

import logging
from collections import Counter, deque
from itertools import combinations, product
from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple

from app.core.exceptions import InvalidInstanceError, SolutionInvariantError
from app.models.fvs import CompactRepresentation
from app.models.graph import Graph, VertexSet
from app.services.graph_service import induced_is_forest, is_fvs

logger = logging.getLogger(__name__)


class _ReducedGraph:
    """Multigraph whose vertices stand for classes of original vertices.

    A class is a maximal run of degree-2 vertices: every cycle through one of
    them runs through all of them, so deleting any single member has the same
    effect as deleting the class vertex.
    """

    def __init__(self, adj: Dict[int, Counter], classes: Dict[int, VertexSet]):
        self.adj = adj
        self.classes = classes

    @classmethod
    def from_graph(cls, g: Graph) -> "_ReducedGraph":
        adj = {v: Counter(g.multiplicity[v]) for v in g.vertices}
        return cls(adj, {v: frozenset({v}) for v in g.vertices})

    def copy(self) -> "_ReducedGraph":
        return _ReducedGraph({v: Counter(c) for v, c in self.adj.items()}, dict(self.classes))

    def degree(self, v: int) -> int:
        counts = self.adj[v]
        return sum(counts.values()) + counts[v]

    def remove(self, v: int) -> None:
        for w in self.adj[v]:
            if w != v:
                del self.adj[w][v]
        del self.adj[v]
        del self.classes[v]

    def _contract(self, v: int, u: int) -> None:
        """Merge degree-2 vertex v into its degree-2 neighbour u."""
        self.classes[u] = self.classes[u] | self.classes[v]
        between = self.adj[v][u]
        for w, count in self.adj[v].items():
            if w in (u, v):
                continue
            self.adj[u][w] += count
            self.adj[w][u] += count
            del self.adj[w][v]
        del self.adj[u][v]
        if between > 1:
            self.adj[u][u] += between - 1
        del self.adj[v]
        del self.classes[v]

    def reduce(self) -> None:
        """Prune degree <= 1 vertices and contract adjacent loop-free degree-2 vertices."""
        changed = True
        while changed:
            changed = False
            for v in sorted(self.adj):
                if v not in self.adj:
                    continue
                degree = self.degree(v)
                if degree <= 1:
                    self.remove(v)
                    changed = True
                elif degree == 2 and not self.adj[v][v]:
                    for u in sorted(self.adj[v]):
                        if u != v and self.degree(u) == 2 and not self.adj[u][u]:
                            self._contract(v, u)
                            changed = True
                            break

    def shortest_cycle(self) -> List[int]:
        for v in sorted(self.adj):
            if self.adj[v][v]:
                return [v]
        for v in sorted(self.adj):
            for w in sorted(self.adj[v]):
                if w > v and self.adj[v][w] > 1:
                    return [v, w]

        best: Optional[List[int]] = None
        for source in sorted(self.adj):
            parent = {source: None}
            depth = {source: 0}
            queue = deque([source])
            while queue:
                x = queue.popleft()
                if best is not None and 2 * depth[x] + 1 >= len(best):
                    break
                for y in sorted(self.adj[x]):
                    if y not in depth:
                        parent[y] = x
                        depth[y] = depth[x] + 1
                        queue.append(y)
                    elif parent[x] != y and depth[y] >= depth[x]:
                        cycle = _close_cycle(parent, x, y)
                        if best is None or len(cycle) < len(best):
                            best = cycle
        if best is None:
            raise SolutionInvariantError("reduced graph has minimum degree 2 but no cycle")
        return best


def _close_cycle(parent: Dict[int, Optional[int]], x: int, y: int) -> List[int]:
    """Simple cycle formed by the BFS tree paths to x and y plus the edge xy."""
    def path(v):
        out = []
        while v is not None:
            out.append(v)
            v = parent[v]
        return out[::-1]

    px, py = path(x), path(y)
    common = 0
    while common < min(len(px), len(py)) and px[common] == py[common]:
        common += 1
    # px[common - 1] is the lowest common ancestor
    return px[common - 1:] + py[common:][::-1]


def _branch(
    state: _ReducedGraph,
    chosen: Tuple[VertexSet, ...],
    budget: int,
    forbidden: VertexSet,
    out: Set[CompactRepresentation],
) -> None:
    state.reduce()
    if not state.adj:
        out.add(CompactRepresentation.of(chosen))
        return
    if budget == 0:
        return
    # any feedback vertex set hits this cycle in exactly one class when minimal
    for c in state.shortest_cycle():
        options = state.classes[c] - forbidden
        if not options:
            continue
        nxt = state.copy()
        nxt.remove(c)
        _branch(nxt, chosen + (options,), budget - 1, forbidden, out)


def _enumerate(g: Graph, k: int, forbidden: VertexSet = frozenset()) -> List[CompactRepresentation]:
    if k < 0:
        raise InvalidInstanceError("k must be non-negative")
    found: Set[CompactRepresentation] = set()
    _branch(_ReducedGraph.from_graph(g), (), k, forbidden, found)
    reps = sorted(found, key=lambda rep: rep.sort_key)
    for rep in reps:
        if len(rep) > k or not rep.is_disjoint():
            raise SolutionInvariantError(f"emitted representation violates k-compactness: {rep.sets}")
    logger.debug(f"{len(reps)} compact representations for n={g.n}, k={k}")
    return reps


def enumerate_compact_representations(g: Graph, k: int) -> List[CompactRepresentation]:
    """k-compact representations covering every minimal feedback vertex set of size <= k.

    Every one-vertex-per-set choice is a feedback vertex set (not necessarily
    a minimal one). The empty family appears iff g is a forest.
    """
    return _enumerate(g, k)


def enumerate_minimal_fvs(g: Graph, k: int) -> List[VertexSet]:
    """Brute force; meant for small graphs only."""
    found = []
    for size in range(min(k, g.n) + 1):
        for candidate in combinations(g.vertices, size):
            if not is_fvs(g, candidate):
                continue
            if all(not is_fvs(g, set(candidate) - {v}) for v in candidate):
                found.append(frozenset(candidate))
    return found


def realize_choices(rep: CompactRepresentation) -> Iterator[VertexSet]:
    for choice in product(*rep.sets):
        yield frozenset(choice)


def is_minimal_fvs(g: Graph, s: VertexSet) -> bool:
    return is_fvs(g, s) and all(not is_fvs(g, s - {v}) for v in s)


def verify_compact_rep(g: Graph, rep: CompactRepresentation, k: int, require_minimal: bool = False) -> bool:
    """Exhaustive over all choices; oracle scale only."""
    if not rep.is_disjoint() or len(rep) > k:
        return False
    check = is_minimal_fvs if require_minimal else is_fvs
    return all(check(g, choice) for choice in realize_choices(rep))


def minimal_realizations(g: Graph, reps: Iterable[CompactRepresentation]) -> Set[VertexSet]:
    return {choice for rep in reps for choice in realize_choices(rep) if is_minimal_fvs(g, choice)}


def forest_bipartition(g: Graph, s: Iterable[int], k: int) -> Optional[VertexSet]:
    """Feedback vertex set of size <= k inside V minus s, given that g minus s is a forest."""
    avoid = frozenset(s)
    if not induced_is_forest(g, (v for v in g.vertices if v not in avoid)):
        raise InvalidInstanceError("forest bipartition requires g minus s to be acyclic")
    reps = _enumerate(g, k, forbidden=avoid)
    if not reps:
        return None
    return frozenset(min(options) for options in reps[0].sets)


def serialize_representations(reps: Iterable[CompactRepresentation]) -> str:
    blocks = []
    for index, rep in enumerate(reps, start=1):
        lines = [f"r {index} {len(rep)}"]
        lines.extend(" ".join(str(v + 1) for v in options) for options in rep.sets)
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")

import logging
import random
from itertools import combinations
from typing import Iterable, List, Optional

from sympy import nextprime

from app.core.exceptions import SteinerConsistencyError
from app.models.cfvs import SolverStats
from app.models.graph import Digraph, VertexSet
from app.models.steiner import DsotInstance, DsotReduction, GstInstance
from app.services.graph_service import delete_vertices, is_connected_subset

logger = logging.getLogger(__name__)


def random_prime(bits: int = 62, seed: int = 0) -> int:
    """Deterministic prime in [2^(bits-1), 2^bits) for the modular counting mode."""
    rng = random.Random(seed)
    start = rng.randrange(2 ** (bits - 1), 2 ** bits - 2 ** (bits - 2))
    return int(nextprime(start))


# BRANCHING WALKS

def count_branching_walks(
    d: Digraph,
    root: int,
    allowed: Iterable[int],
    max_len: int,
    modulus: Optional[int] = None,
) -> List[int]:
    """Number of branching walks from `root` of each length 0..max_len inside `allowed`.

    b_0(v) = 1 and b_j(v) = sum over s in N+(v) & allowed, j1 + j2 = j - 1 of
    b_j1(s) * b_j2(v): the first subtree hangs off s, the rest stays at v.
    """
    members = frozenset(allowed)
    order = sorted(members)
    out = {v: [s for s in d.out_neighbors(v) if s in members] for v in order}

    walks = [{v: 1 for v in order}]
    # first_child[j][v] = sum of walks of length j over the allowed out-neighbours of v
    first_child = []
    for j in range(1, max_len + 1):
        previous = walks[j - 1]
        first_child.append({v: sum(previous[s] for s in out[v]) for v in order})
        layer = {}
        for v in order:
            total = 0
            for j1 in range(j):
                head = first_child[j1][v]
                if head:
                    total += head * walks[j - 1 - j1][v]
            layer[v] = total % modulus if modulus else total
        walks.append(layer)
    return [layer[root] for layer in walks]


# DIRECTED STEINER OUT-TREE

def count_terminal_walks(
    inst: DsotInstance,
    modulus: Optional[int] = None,
    stats: Optional[SolverStats] = None,
) -> List[int]:
    """Per length j < p, the number of branching walks from the root that visit every terminal.

    For every X of the non-root terminals, walks avoiding X are counted and
    signed by (-1)^|X|; what survives are walks visiting every terminal. The
    root is on every walk, so a root terminal never enters the subset loop.
    """
    terminals = sorted(inst.terminals - {inst.root})
    max_len = inst.p - 1
    everything = frozenset(range(inst.d.n))
    signed = [0] * (max_len + 1)

    for size in range(len(terminals) + 1):
        sign = -1 if size % 2 else 1
        for excluded in combinations(terminals, size):
            counts = count_branching_walks(inst.d, inst.root, everything.difference(excluded), max_len, modulus)
            for j, c in enumerate(counts):
                signed[j] += sign * c
            if stats is not None:
                stats.subsets_evaluated += 1

    return [total % modulus for total in signed] if modulus else signed


def dsot_decide(
    inst: DsotInstance,
    modulus: Optional[int] = None,
    stats: Optional[SolverStats] = None,
) -> bool:
    """A non-zero count at some length is an out-tree; modular zeros may be false negatives."""
    return any(count_terminal_walks(inst, modulus, stats))


# GROUP STEINER TREE

def reduce_gst_to_dsot(inst: GstInstance) -> DsotReduction:
    """Bidirect every edge and give group i a fresh sink s_i fed by its members."""
    n = inst.g.n
    arcs = set()
    for u, v in inst.g.edges:
        if u != v:
            arcs.add((u, v))
            arcs.add((v, u))
    sinks = []
    for i, group in enumerate(inst.groups):
        sink = n + i
        sinks.append(sink)
        arcs.update((x, sink) for x in group)
    digraph = Digraph(n + inst.l, frozenset(arcs))
    return DsotReduction(digraph, frozenset(sinks), inst.p + inst.l, tuple(range(n)))


def gst_decide(
    inst: GstInstance,
    modulus: Optional[int] = None,
    stats: Optional[SolverStats] = None,
) -> bool:
    if not inst.groups:
        return inst.p >= 1 and inst.g.n > 0
    if inst.p < inst.l:
        # disjoint groups need a distinct vertex each
        return False

    reduction = reduce_gst_to_dsot(inst)
    # every witness tree contains a vertex of the smallest group
    smallest = min(inst.groups, key=lambda group: (len(group), min(group)))
    for root in reduction.root_candidates:
        if root not in smallest:
            continue
        dsot = DsotInstance(reduction.digraph, root, reduction.terminals, reduction.budget)
        if dsot_decide(dsot, modulus, stats):
            logger.debug(f"GST yes-instance, root {root}, l={inst.l}, p={inst.p}")
            return True
    return False


def _restrict(inst: GstInstance, keep: VertexSet):
    """The instance induced on `keep`, or None when a group vanishes."""
    sub, remap = delete_vertices(inst.g, set(inst.g.vertices) - keep)
    index = {old: new for new, old in enumerate(remap)}
    groups = []
    for group in inst.groups:
        mapped = frozenset(index[v] for v in group if v in index)
        if not mapped:
            return None
        groups.append(mapped)
    return GstInstance(sub, tuple(groups), inst.p)


def gst_extract_tree(
    inst: GstInstance,
    modulus: Optional[int] = None,
    stats: Optional[SolverStats] = None,
) -> Optional[VertexSet]:
    """Witness vertex set by self-reduction.

    Vertices are deleted in ascending order whenever the rest is still a
    yes-instance. Deletion tests run in exact mode: a modular false negative
    would leave a redundant vertex behind.
    """
    if not gst_decide(inst, modulus, stats):
        return None
    if not inst.groups:
        return frozenset({0})

    keep = set(inst.g.vertices)
    for v in inst.g.vertices:
        candidate = frozenset(keep - {v})
        sub = _restrict(inst, candidate)
        if sub is not None and gst_decide(sub, None, stats):
            keep = set(candidate)

    witness = frozenset(keep)
    if len(witness) > inst.p:
        raise SteinerConsistencyError(f"extracted {len(witness)} vertices for budget p={inst.p}")
    if not is_connected_subset(inst.g, witness):
        raise SteinerConsistencyError("extracted vertex set is not connected")
    if any(not (group & witness) for group in inst.groups):
        raise SteinerConsistencyError("extracted vertex set misses a group")
    return witness

import logging
import random
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import networkx as nx

from app.core.exceptions import InvalidInstanceError
from app.models.graph import Graph
from app.schemas.schemas import GeneratorFamily
from app.services.cfvs_service import cvc_to_cfvs

logger = logging.getLogger(__name__)


def random_gnm(n: int, m: int, seed: int = 0) -> Graph:
    if m > n * (n - 1) // 2:
        raise InvalidInstanceError(f"a simple graph on {n} vertices has at most {n * (n - 1) // 2} edges")
    return Graph.from_networkx(nx.gnm_random_graph(n, m, seed=seed))


def random_multigraph(n: int, m: int, seed: int = 0, loop_rate: float = 0.1, parallel_rate: float = 0.15) -> Graph:
    """m edges, some of them loops or copies of an earlier edge."""
    if n < 1 and m > 0:
        raise InvalidInstanceError("edges need at least one vertex")
    rng = random.Random(seed)
    edges: List[Tuple[int, int]] = []
    for _ in range(m):
        roll = rng.random()
        if roll < loop_rate or n == 1:
            v = rng.randrange(n)
            edges.append((v, v))
        elif roll < loop_rate + parallel_rate and edges:
            edges.append(rng.choice(edges))
        else:
            u, v = rng.sample(range(n), 2)
            edges.append((u, v))
    return Graph(n, tuple(edges))


def disjoint_cycles(r: int, length: int) -> Graph:
    """r vertex-disjoint cycles of the given length; length 1 is a loop, 2 a parallel pair."""
    if r < 0 or length < 1:
        raise InvalidInstanceError("disjoint-cycles needs r >= 0 and length >= 1")
    edges = []
    for c in range(r):
        base = c * length
        edges.extend((base + i, base + (i + 1) % length) for i in range(length))
    return Graph(r * length, tuple(edges))


def cvc_gadget(n: int, m: int, seed: int = 0) -> Graph:
    return cvc_to_cfvs(random_gnm(n, m, seed))


def grid(w: int, h: int) -> Graph:
    return Graph.from_networkx(nx.grid_2d_graph(w, h))


def partial_ktree(n: int, width: int, seed: int = 0, keep: float = 0.8) -> Graph:
    """Random k-tree with some edges dropped.

    The starting clique survives intact, so the treewidth stays exactly `width`
    whenever n > width.
    """
    if width < 1 or n < width + 1:
        raise InvalidInstanceError(f"partial k-tree needs width >= 1 and n >= width + 1, got n={n}, width={width}")
    rng = random.Random(seed)
    base = tuple(range(width + 1))
    edges = set(combinations(base, 2))
    cliques = [frozenset(c) for c in combinations(base, width)]
    optional = []
    for v in range(width + 1, n):
        anchor = sorted(rng.choice(cliques))
        optional.extend((u, v) for u in anchor)
        cliques.extend(frozenset(c) | {v} for c in combinations(anchor, width - 1))
    edges.update(e for e in optional if rng.random() < keep)
    return Graph(n, tuple(sorted(edges)))


def generate(
    family: GeneratorFamily,
    sizes: Sequence[int] = (),
    n: Optional[int] = None,
    m: Optional[int] = None,
    width: Optional[int] = None,
    seed: int = 0,
) -> Graph:
    """Build an instance from positional sizes and/or --n/--m/--width options."""
    sizes = list(sizes)

    def take(option: Optional[int], name: str) -> int:
        if option is not None:
            return option
        if sizes:
            return sizes.pop(0)
        raise InvalidInstanceError(f"{family.value} needs a value for {name}")

    if family == GeneratorFamily.RANDOM_GNM:
        g = random_gnm(take(n, "n"), take(m, "m"), seed)
    elif family == GeneratorFamily.RANDOM_MULTIGRAPH:
        g = random_multigraph(take(n, "n"), take(m, "m"), seed)
    elif family == GeneratorFamily.DISJOINT_CYCLES:
        g = disjoint_cycles(take(None, "r"), take(None, "length"))
    elif family == GeneratorFamily.CVC_GADGET:
        g = cvc_gadget(take(n, "n"), take(m, "m"), seed)
    elif family == GeneratorFamily.GRID:
        w = take(None, "w")
        g = grid(w, sizes.pop(0) if sizes else w)
    else:
        g = partial_ktree(take(n, "n"), take(width, "width"), seed)
    logger.info(f"generated {family.value}: n={g.n}, m={g.m}")
    return g

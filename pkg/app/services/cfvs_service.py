import logging
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import Iterable, List, Optional, Tuple

from app.core.config import settings
from app.core.exceptions import InvalidDecompositionError, SolutionInvariantError
from app.models.cfvs import CfvsInstance, CfvsOutcome, CfvsSolution, SolverStats
from app.models.decomposition import TreeDecomposition
from app.models.fvs import CompactRepresentation
from app.models.graph import Graph, VertexSet
from app.models.steiner import GstInstance
from app.schemas.schemas import Method
from app.services.dp_service import dp_solve
from app.services.fvs_enum_service import enumerate_compact_representations
from app.services.graph_service import is_connected_subset, is_forest, is_fvs
from app.services.steiner_service import gst_extract_tree
from app.services.treewidth_service import greedy_td, nice_from_graph, nicify, validate_td

logger = logging.getLogger(__name__)


# VALIDATION

def is_cfvs(g: Graph, vertices: Iterable[int]) -> bool:
    chosen = frozenset(vertices)
    return is_fvs(g, chosen) and is_connected_subset(g, chosen)


def validate_solution(g: Graph, vertices: VertexSet, k: int) -> None:
    """Re-check a solution before it leaves the solver."""
    if len(vertices) > k:
        raise SolutionInvariantError(f"solution has {len(vertices)} vertices, budget is {k}")
    if not is_fvs(g, vertices):
        raise SolutionInvariantError("solution leaves a cycle behind")
    if not is_connected_subset(g, vertices):
        raise SolutionInvariantError("solution is not connected")


def _stop(stats: SolverStats, started: float) -> None:
    stats.elapsed_ms = (time.perf_counter() - started) * 1000


def _surface(g: Graph, vertices: VertexSet, k: int, method: Method, stats: SolverStats, started: float) -> CfvsSolution:
    validate_solution(g, vertices, k)
    _stop(stats, started)
    return CfvsSolution(frozenset(vertices), method, stats)


# COMPACT REPRESENTATIONS + GROUP STEINER TREE

def _witness_for(args: Tuple[Graph, CompactRepresentation, int, Optional[int]]) -> Tuple[Optional[VertexSet], int]:
    g, rep, k, modulus = args
    local = SolverStats()
    tree = gst_extract_tree(GstInstance(g, rep.vertex_sets, k), modulus, local)
    return tree, local.subsets_evaluated


def cfvs_decide(
    inst: CfvsInstance,
    modulus: Optional[int] = None,
    threads: int = 1,
    stats: Optional[SolverStats] = None,
) -> Optional[CfvsSolution]:
    """Decide CFVS at budget k through every k-compact representation.

    A group Steiner tree on at most k vertices that meets every set contains
    a feedback vertex set, is connected, and is therefore itself a solution.
    """
    started = time.perf_counter()
    stats = stats if stats is not None else SolverStats()
    g, k = inst.g, inst.k

    if is_forest(g):
        return _surface(g, frozenset(), k, Method.COMPACT_GST, stats, started)
    if k == 0:
        _stop(stats, started)
        return None

    reps = enumerate_compact_representations(g, k)
    logger.info(f"{len(reps)} representations to try at k={k}")
    jobs = [(g, rep, k, modulus) for rep in reps]

    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            # map() yields in submission order, so the first hit matches the sequential run
            for tree, evaluated in pool.map(_witness_for, jobs):
                stats.reps_tried += 1
                stats.subsets_evaluated += evaluated
                if tree is not None:
                    pool.shutdown(wait=False, cancel_futures=True)
                    return _surface(g, tree, k, Method.COMPACT_GST, stats, started)
        _stop(stats, started)
        return None

    for job in jobs:
        tree, evaluated = _witness_for(job)
        stats.reps_tried += 1
        stats.subsets_evaluated += evaluated
        if tree is not None:
            return _surface(g, tree, k, Method.COMPACT_GST, stats, started)
    _stop(stats, started)
    return None


# ORACLES

def cfvs_bruteforce(inst: CfvsInstance, stats: Optional[SolverStats] = None) -> Optional[CfvsSolution]:
    """Minimum connected feedback vertex set of size <= k by exhaustive search."""
    started = time.perf_counter()
    g = inst.g
    if g.n > settings.bruteforce_max_n:
        logger.warning(f"brute force on n={g.n} exceeds the advised n <= {settings.bruteforce_max_n}")
    stats = stats if stats is not None else SolverStats()
    for size in range(min(inst.k, g.n) + 1):
        for candidate in combinations(g.vertices, size):
            chosen = frozenset(candidate)
            if is_cfvs(g, chosen):
                return _surface(g, chosen, inst.k, Method.BRUTE_FORCE, stats, started)
    _stop(stats, started)
    return None


def min_connected_vertex_cover(g: Graph) -> Optional[VertexSet]:
    for size in range(g.n + 1):
        for candidate in combinations(g.vertices, size):
            chosen = frozenset(candidate)
            if all(u in chosen or v in chosen for u, v in g.edges) and is_connected_subset(g, chosen):
                return chosen
    return None


# REDUCTIONS

def cvc_to_cfvs(g: Graph) -> Graph:
    """Every edge uv becomes the triangle u, v, x_uv with a fresh x_uv."""
    edges: List[Tuple[int, int]] = []
    for i, (u, v) in enumerate(g.edges):
        x = g.n + i
        edges.extend([(u, v), (u, x), (x, v)])
    return Graph(g.n + g.m, tuple(edges))


# DISPATCH

def resolve_method(g: Graph, method: Method, td: Optional[TreeDecomposition] = None) -> Tuple[Method, Optional[int]]:
    """AUTO picks the DP when the (given or greedy) width is at most the configured threshold."""
    if method != Method.AUTO:
        return method, None
    width = (td if td is not None else greedy_td(g)).width
    chosen = Method.TREEWIDTH_DP if width <= settings.dp_width_threshold else Method.COMPACT_GST
    logger.info(f"width {width}, threshold {settings.dp_width_threshold}: using {chosen.value}")
    return chosen, width


def _solve_dp(
    g: Graph,
    k: Optional[int],
    td: Optional[TreeDecomposition],
    max_width: Optional[int],
) -> CfvsOutcome:
    started = time.perf_counter()
    if td is not None and not validate_td(g, td):
        raise InvalidDecompositionError("the supplied decomposition does not fit the graph")
    ntd = nicify(td) if td is not None else nice_from_graph(g)
    stats = SolverStats()
    size, witness = dp_solve(g, ntd, k, stats, max_width)
    if size is None:
        _stop(stats, started)
        return CfvsOutcome(None, Method.TREEWIDTH_DP, stats, ntd.width)
    solution = _surface(g, witness, size if k is None else k, Method.TREEWIDTH_DP, stats, started)
    return CfvsOutcome(solution, Method.TREEWIDTH_DP, stats, ntd.width)


def cfvs_solve(
    g: Graph,
    k: int,
    method: Method = Method.AUTO,
    td: Optional[TreeDecomposition] = None,
    modulus: Optional[int] = None,
    threads: int = 1,
    max_width: Optional[int] = None,
) -> CfvsOutcome:
    method, width = resolve_method(g, method, td)
    if method == Method.TREEWIDTH_DP:
        return _solve_dp(g, k, td, max_width)
    inst = CfvsInstance(g, k)
    stats = SolverStats()
    if method == Method.BRUTE_FORCE:
        return CfvsOutcome(cfvs_bruteforce(inst, stats), method, stats, width)
    return CfvsOutcome(cfvs_decide(inst, modulus, threads, stats), method, stats, width)


def cfvs_optimize(
    g: Graph,
    method: Method = Method.AUTO,
    td: Optional[TreeDecomposition] = None,
    modulus: Optional[int] = None,
    threads: int = 1,
    max_width: Optional[int] = None,
) -> CfvsOutcome:
    """Minimum connected feedback vertex set; the solution is None when none exists.

    The DP yields the optimum in one pass; the other methods raise k from 0
    and report counters summed over every k tried.
    """
    method, width = resolve_method(g, method, td)
    if method == Method.TREEWIDTH_DP:
        return _solve_dp(g, None, td, max_width)
    total = SolverStats()
    for k in range(g.n + 1):
        outcome = cfvs_solve(g, k, method, td, modulus, threads, max_width)
        total.absorb(outcome.stats)
        if outcome.solution is not None:
            return outcome._replace(stats=total, width=width)
    return CfvsOutcome(None, method, total, width)

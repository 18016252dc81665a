import random

import pytest

from app.core.exceptions import InvalidDecompositionError, InvalidInstanceError, SolutionInvariantError
from app.models.cfvs import CfvsInstance
from app.models.decomposition import TreeDecomposition
from app.models.graph import Graph
from app.schemas.schemas import Method
from app.services.cfvs_service import (
    cfvs_bruteforce,
    cfvs_decide,
    cfvs_optimize,
    cfvs_solve,
    cvc_to_cfvs,
    is_cfvs,
    min_connected_vertex_cover,
    validate_solution,
)
from app.services.generator_service import random_gnm
from app.services.steiner_service import random_prime
from tests.helpers import atlas_graphs, cycle, min_cfvs_size, multigraph_corpus, path


def test_forest_needs_nothing():
    solution = cfvs_decide(CfvsInstance(path(5), 0))
    assert solution is not None
    assert solution.vertices == frozenset()


def test_cycle_needs_one(c5):
    assert cfvs_decide(CfvsInstance(c5, 0)) is None
    solution = cfvs_decide(CfvsInstance(c5, 1))
    assert solution.size == 1
    assert solution.method == Method.COMPACT_GST
    assert solution.stats.reps_tried == 1


def test_two_far_triangles_need_the_bridge():
    # triangles 0-1-2 and 4-5-6 joined through 3
    g = Graph(7, ((0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6)))
    assert cfvs_decide(CfvsInstance(g, 2)) is None
    solution = cfvs_decide(CfvsInstance(g, 3))
    assert solution.vertices == frozenset({2, 3, 4})


def test_disconnected_cycles_have_no_solution():
    g = Graph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)))
    assert cfvs_decide(CfvsInstance(g, 6)) is None
    assert cfvs_bruteforce(CfvsInstance(g, 6)) is None
    assert cfvs_optimize(g, Method.TREEWIDTH_DP).solution is None


def test_negative_k():
    with pytest.raises(InvalidInstanceError):
        CfvsInstance(cycle(3), -1)


def test_validate_solution(c4):
    validate_solution(c4, frozenset({0}), 1)
    with pytest.raises(SolutionInvariantError):
        validate_solution(c4, frozenset({0, 1}), 1)
    with pytest.raises(SolutionInvariantError):
        validate_solution(c4, frozenset(), 1)
    with pytest.raises(SolutionInvariantError):
        validate_solution(cycle(6), frozenset({0, 3}), 2)


def test_parallel_workers_match_sequential(bowtie):
    for k in range(4):
        sequential = cfvs_decide(CfvsInstance(bowtie, k))
        parallel = cfvs_decide(CfvsInstance(bowtie, k), threads=2)
        assert (sequential is None) == (parallel is None)
        if sequential is not None:
            assert sequential.vertices == parallel.vertices


def test_modular_counting_agrees(c4):
    prime = random_prime(62, seed=9)
    assert cfvs_decide(CfvsInstance(c4, 1), modulus=prime).size == 1


class TestDispatch:
    def test_auto_prefers_dp_on_small_width(self, c4):
        outcome = cfvs_solve(c4, 1)
        assert outcome.method == Method.TREEWIDTH_DP
        assert outcome.solution.size == 1
        assert outcome.width == 2

    def test_supplied_decomposition(self, c4):
        td = TreeDecomposition({0: frozenset({0, 1, 2}), 1: frozenset({0, 2, 3})}, ((0, 1),))
        outcome = cfvs_solve(c4, 1, Method.TREEWIDTH_DP, td=td)
        assert outcome.solution.size == 1
        assert outcome.width == 2

    def test_decomposition_that_does_not_fit(self, c4):
        td = TreeDecomposition({0: frozenset({0, 1}), 1: frozenset({2, 3})}, ((0, 1),))
        with pytest.raises(InvalidDecompositionError):
            cfvs_solve(c4, 1, Method.TREEWIDTH_DP, td=td)

    def test_counters_survive_a_no_answer(self):
        g = Graph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)))
        gst = cfvs_solve(g, 3, Method.COMPACT_GST)
        assert gst.solution is None
        assert gst.stats.reps_tried >= 1
        assert gst.stats.subsets_evaluated > 0
        dp = cfvs_solve(g, 3, Method.TREEWIDTH_DP)
        assert dp.solution is None
        assert dp.stats.dp_rows > 0

    def test_optimize_sums_counters_over_budgets(self):
        g = Graph(7, ((0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6)))
        outcome = cfvs_optimize(g, Method.COMPACT_GST)
        assert outcome.solution.size == 3
        assert outcome.stats.reps_tried > outcome.solution.stats.reps_tried
        assert outcome.stats.elapsed_ms >= outcome.solution.stats.elapsed_ms

    @pytest.mark.parametrize("method", [Method.COMPACT_GST, Method.TREEWIDTH_DP, Method.BRUTE_FORCE])
    def test_optimize(self, method, bowtie):
        outcome = cfvs_optimize(bowtie, method)
        assert outcome.solution.vertices == frozenset({2})


@pytest.mark.parametrize("graphs", [atlas_graphs(5), multigraph_corpus(40)], ids=["atlas", "multigraphs"])
def test_three_methods_agree(graphs):
    for g in graphs:
        optimum = min_cfvs_size(g)
        for k in range(g.n + 1):
            expected = optimum is not None and optimum <= k
            results = [cfvs_solve(g, k, method).solution for method in Method if method != Method.AUTO]
            for solution in results:
                assert (solution is not None) == expected, (g, k)
                if solution is not None:
                    assert is_cfvs(g, solution.vertices)
                    assert solution.size <= k
            brute = results[-1]
            if brute is not None:
                assert brute.size == optimum


def test_cvc_gadget_shape():
    g = random_gnm(5, 6, seed=7)
    gadget = cvc_to_cfvs(g)
    assert gadget.n == 11
    assert gadget.m == 18


def check_gadget(g: Graph) -> None:
    cover = min_connected_vertex_cover(g)
    gadget = cvc_to_cfvs(g)
    if cover is None:
        assert cfvs_optimize(gadget, Method.TREEWIDTH_DP).solution is None
        return
    best = cfvs_bruteforce(CfvsInstance(gadget, len(cover)))
    assert best is not None and best.size == len(cover)


def test_cvc_equivalence():
    rng = random.Random(2)
    for seed in range(25):
        n = rng.randint(2, 6)
        check_gadget(random_gnm(n, rng.randint(1, min(n * (n - 1) // 2, n + 3)), seed))


@pytest.mark.slow
def test_three_methods_agree_on_larger_corpus():
    graphs = atlas_graphs(7) + multigraph_corpus(300, max_n=10)
    for g in graphs:
        optimum = min_cfvs_size(g)
        dp = cfvs_optimize(g, Method.TREEWIDTH_DP).solution
        gst = cfvs_optimize(g, Method.COMPACT_GST).solution
        assert (dp.size if dp else None) == optimum
        assert (gst.size if gst else None) == optimum


@pytest.mark.slow
def test_cvc_equivalence_sweep():
    rng = random.Random(8)
    for seed in range(100):
        n = rng.randint(2, 8)
        check_gadget(random_gnm(n, rng.randint(1, min(n * (n - 1) // 2, n + 4)), seed))

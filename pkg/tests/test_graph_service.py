import random

import networkx as nx
import pytest

from app.core.exceptions import GraphFormatError, InvalidInstanceError
from app.models.graph import Graph, Partition
from app.schemas.schemas import GraphFormat
from app.services.generator_service import random_multigraph
from app.services.graph_service import (
    connected_components,
    delete_vertices,
    detect_format,
    induced_is_forest,
    is_connected_subset,
    is_forest,
    is_fvs,
    parse_digraph,
    parse_graph,
    parse_groups,
    serialize_graph,
)
from tests.helpers import cycle, multigraph_corpus, path


class TestGraph:
    def test_edges_are_canonical(self):
        assert Graph(3, ((2, 0), (1, 0))) == Graph(3, ((0, 1), (0, 2)))

    def test_endpoint_out_of_range(self):
        with pytest.raises(InvalidInstanceError):
            Graph(2, ((0, 2),))

    def test_loop_degree_counts_twice(self):
        g = Graph(1, ((0, 0),))
        assert g.has_loop(0)
        assert g.degree(0) == 2
        assert g.neighbors(0) == frozenset()

    def test_parallel_edges_kept(self):
        g = Graph(2, ((0, 1), (1, 0)))
        assert g.m == 2
        assert g.multiplicity[0][1] == 2


class TestPartition:
    def test_canonical_order(self):
        assert Partition(((3, 1), (0,))) == Partition(((0,), (1, 3)))

    def test_overlap_rejected(self):
        with pytest.raises(InvalidInstanceError):
            Partition(((0, 1), (1, 2)))

    def test_merge_and_without(self):
        p = Partition(((0,), (2, 3), (5,)))
        merged = p.merged_with(4, [(0,), (5,)])
        assert merged == Partition(((0, 4, 5), (2, 3)))
        assert merged.without(4).without(0) == Partition(((2, 3), (5,)))
        assert Partition(((1,),)).without(1) == Partition()


class TestParsing:
    def test_pace(self):
        g = parse_graph("c a comment\np tw 3 2\n1 2\n2 3\n")
        assert g == path(3)

    def test_dimacs(self):
        g = parse_graph("p edge 3 3\ne 1 2\ne 2 3\ne 3 1\n")
        assert g == cycle(3)

    def test_edge_list_takes_largest_id(self):
        g = parse_graph("1 4\n4 2\n")
        assert g.n == 4
        assert g.m == 2

    def test_detect_format(self):
        assert detect_format("p tw 1 0\n") == GraphFormat.PACE_GR
        assert detect_format("p edge 1 0\n") == GraphFormat.DIMACS_EDGE
        assert detect_format("# x\n1 2\n") == GraphFormat.EDGE_LIST

    def test_duplicate_lines_are_parallel_edges(self):
        g = parse_graph("p tw 2 2\n1 2\n2 1\n")
        assert not is_forest(g)

    @pytest.mark.parametrize(
        "text, line",
        [
            ("p tw 2\n1 2\n", 1),
            ("p tw 2 1\n1 3\n", 2),
            ("p tw 2 1\n1 x\n", 2),
            ("p tw 3 2\n1 2\n", 1),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(GraphFormatError) as exc:
            parse_graph(text, GraphFormat.PACE_GR)
        assert exc.value.line == line
        assert exc.value.detail.startswith(f"line {line}:")

    def test_serialize_is_a_fixed_point(self):
        for g in multigraph_corpus(10):
            text = serialize_graph(g)
            assert parse_graph(text) == g
            assert serialize_graph(parse_graph(text)) == text

    def test_groups_and_digraph(self):
        assert parse_groups("1 2\n# skip\n3\n", 3) == (frozenset({0, 1}), frozenset({2}))
        d = parse_digraph("p arc 3 2\na 1 2\n2 3\n")
        assert d.out_neighbors(0) == (1,)
        assert d.out_neighbors(1) == (2,)
        with pytest.raises(GraphFormatError):
            parse_groups("4\n", 3)


class TestStructure:
    def test_forest_and_cycles(self):
        assert is_forest(path(5))
        assert is_forest(Graph(0))
        assert not is_forest(cycle(3))
        assert not is_forest(Graph(1, ((0, 0),)))
        assert not is_forest(Graph(2, ((0, 1), (0, 1))))

    def test_fvs_matches_networkx(self):
        for g in multigraph_corpus(30):
            for v in g.vertices:
                rest = [u for u in g.vertices if u != v]
                h = g.to_networkx().subgraph(rest)
                assert is_fvs(g, {v}) == nx.is_forest(h)

    def test_deleting_a_set_leaves_a_forest_exactly_when_it_is_an_fvs(self):
        rng = random.Random(17)
        for seed in range(500):
            n = 1 + seed % 8
            g = random_multigraph(n, rng.randint(0, 2 * n), seed=seed)
            s = frozenset(v for v in g.vertices if rng.random() < 0.3)
            sub, remap = delete_vertices(g, s)
            h = g.to_networkx().subgraph(set(g.vertices) - s)
            expected = h.number_of_nodes() == 0 or nx.is_forest(h)
            assert is_forest(sub) == is_fvs(g, s) == expected, (g, s)
            assert set(remap) == set(g.vertices) - s

    def test_induced_forest(self):
        assert induced_is_forest(cycle(4), {0, 1, 2})
        assert not induced_is_forest(cycle(4), range(4))

    def test_connected_subset(self):
        g = path(4)
        assert is_connected_subset(g, set())
        assert is_connected_subset(g, {3})
        assert is_connected_subset(g, {1, 2})
        assert not is_connected_subset(g, {0, 2})

    def test_components(self):
        g = Graph(5, ((0, 1), (3, 4)))
        assert connected_components(g, range(5)) == Partition(((0, 1), (2,), (3, 4)))
        assert connected_components(g, set()) == Partition()

    def test_components_are_connected_and_separated(self):
        rng = random.Random(23)
        for g in multigraph_corpus(200, max_n=9):
            s = frozenset(v for v in g.vertices if rng.random() < 0.6)
            pieces = connected_components(g, s)
            assert pieces.ground == s
            assert all(is_connected_subset(g, piece) for piece in pieces)
            owner = {v: i for i, piece in enumerate(pieces) for v in piece}
            assert all(owner[u] == owner[v] for u, v in g.edges if u in s and v in s)
            if s:
                assert len(pieces) == nx.number_connected_components(g.to_networkx().subgraph(s))

    def test_delete_vertices_remap(self):
        sub, remap = delete_vertices(cycle(4), {1})
        assert remap == (0, 2, 3)
        assert sub.n == 3
        assert is_forest(sub)
        assert {(remap[u], remap[v]) for u, v in sub.edges} == {(0, 3), (2, 3)}

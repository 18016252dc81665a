import networkx as nx
import pytest

from app.core.exceptions import GraphFormatError, InvalidDecompositionError
from app.models.decomposition import NodeKind, TreeDecomposition
from app.models.graph import Graph
from app.services.treewidth_service import (
    greedy_td,
    nice_from_graph,
    nicify,
    parse_td,
    serialize_nice_td,
    serialize_td,
    validate_nice,
    validate_td,
)
from tests.helpers import atlas_graphs, cycle, multigraph_corpus, path

C4_TD_TEXT = "s td 2 3 4\nb 1 1 2 3\nb 2 1 3 4\n1 2\n"


def c4_td():
    return TreeDecomposition({0: frozenset({0, 1, 2}), 1: frozenset({0, 2, 3})}, ((0, 1),))


def star_td():
    # center bag {0} with three leaves {0, i}
    bags = {0: frozenset({0}), 1: frozenset({0, 1}), 2: frozenset({0, 2}), 3: frozenset({0, 3})}
    return TreeDecomposition(bags, ((0, 1), (0, 2), (0, 3)))


class TestValidate:
    def test_single_bag(self, triangle):
        assert validate_td(triangle, TreeDecomposition({0: frozenset({0, 1, 2})}))

    def test_cycle_with_two_bags(self, c4):
        assert validate_td(c4, c4_td())

    def test_missing_edge(self, c4):
        td = TreeDecomposition({0: frozenset({0, 1, 2}), 1: frozenset({1, 2, 3})}, ((0, 1),))
        assert not validate_td(c4, td)

    def test_missing_vertex(self):
        assert not validate_td(Graph(3, ((0, 1),)), TreeDecomposition({0: frozenset({0, 1})}))

    def test_disconnected_occurrences(self):
        td = TreeDecomposition({0: frozenset({0, 1}), 1: frozenset({1, 2}), 2: frozenset({0})}, ((0, 1), (1, 2)))
        assert not validate_td(path(3), td)

    def test_forest_of_bags_is_not_a_tree(self):
        td = TreeDecomposition({0: frozenset({0, 1}), 1: frozenset({2})})
        assert not validate_td(Graph(3, ((0, 1),)), td)

    def test_edge_to_unknown_bag(self):
        td = TreeDecomposition({0: frozenset({0, 1})}, ((0, 5),))
        assert not validate_td(path(2), td)

    def test_cycle_of_bags_with_a_stray_bag(self):
        bags = {t: frozenset({0, 1}) for t in range(4)}
        td = TreeDecomposition(bags, ((0, 1), (1, 2), (0, 2)))
        assert not validate_td(path(2), td)


class TestGreedy:
    @pytest.mark.parametrize(
        "g, width",
        [(path(6), 1), (cycle(6), 2), (Graph.from_networkx(nx.complete_graph(4)), 3)],
        ids=["path", "cycle", "k4"],
    )
    def test_widths(self, g, width):
        td = greedy_td(g)
        assert td.width == width
        assert validate_td(g, td)

    def test_valid_on_multigraphs(self):
        for g in multigraph_corpus(30):
            assert validate_td(g, greedy_td(g))


class TestNicify:
    def test_cycle_chain(self, c4):
        ntd = nicify(c4_td())
        assert validate_nice(ntd)
        assert validate_td(c4, ntd.to_tree_decomposition())
        assert ntd.width == 2
        assert ntd.node(ntd.root).bag == frozenset()
        assert ntd.kind_counts() == {"leaf": 1, "introduce": 4, "forget": 4}

    def test_branching_becomes_binary_joins(self):
        g = Graph(4, ((0, 1), (0, 2), (0, 3)))
        ntd = nicify(star_td())
        assert validate_nice(ntd)
        assert validate_td(g, ntd.to_tree_decomposition())
        assert ntd.kind_counts()["join"] == 2
        assert ntd.kind_counts()["leaf"] == 3
        joins = [node for node in ntd.nodes if node.kind == NodeKind.JOIN]
        assert all(node.bag == frozenset({0}) for node in joins)

    def test_every_leaf_is_empty(self):
        ntd = nicify(star_td(), root=2)
        assert all(not node.bag for node in ntd.nodes if node.kind == NodeKind.LEAF)

    def test_preserves_width_on_corpus(self):
        for g in atlas_graphs(5) + multigraph_corpus(30):
            td = greedy_td(g)
            ntd = nicify(td)
            assert validate_nice(ntd)
            assert validate_td(g, ntd.to_tree_decomposition())
            assert ntd.width == td.width

    def test_long_chain_has_no_recursion_limit(self):
        n = 3000
        td = TreeDecomposition({i: frozenset({i, i + 1}) for i in range(n - 1)}, tuple((i, i + 1) for i in range(n - 2)))
        ntd = nicify(td)
        assert validate_nice(ntd)
        assert sum(1 for _ in ntd.postorder()) == len(ntd)

    def test_rejects_invalid_input(self):
        with pytest.raises(InvalidDecompositionError):
            nicify(TreeDecomposition({0: frozenset({0}), 1: frozenset({1})}))

    def test_rejects_a_root_outside_the_tree(self):
        with pytest.raises(InvalidDecompositionError):
            nicify(c4_td(), root=7)

    def test_subtree_vertices(self, c4):
        ntd = nice_from_graph(c4)
        assert ntd.subtree_vertices()[ntd.root] == frozenset(range(4))


class TestFormat:
    def test_parse(self):
        assert parse_td(C4_TD_TEXT) == c4_td()

    def test_serialize(self):
        assert serialize_td(c4_td(), 4) == C4_TD_TEXT

    def test_missing_bags_are_empty(self):
        td = parse_td("c two bags\ns td 2 1 1\nb 1 1\n1 2\n")
        assert td.bags == {0: frozenset({0}), 1: frozenset()}

    @pytest.mark.parametrize(
        "text, line",
        [
            ("", 1),
            ("b 1 1\n", 1),
            ("s td 1 1 2\nb 2 1\n", 2),
            ("s td 1 1 2\nb 1 3\n", 2),
            ("s td 2 1 2\n1 x\n", 2),
            ("s td 2 1 2\n1 2 3\n", 2),
            ("s td 1 1\n", 1),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(GraphFormatError) as exc:
            parse_td(text)
        assert exc.value.line == line

    def test_nice_annotations(self):
        ntd = nicify(c4_td())
        text = serialize_nice_td(ntd, 4)
        assert text.startswith(f"c root {ntd.root + 1}\n")
        assert "c node 1 leaf\n" in text
        assert f"s td {len(ntd)} 3 4\n" in text
        assert validate_td(cycle(4), parse_td(text))

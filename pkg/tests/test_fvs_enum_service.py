import pytest

from app.core.exceptions import InvalidInstanceError
from app.models.fvs import CompactRepresentation
from app.models.graph import Graph
from app.services.fvs_enum_service import (
    enumerate_compact_representations,
    enumerate_minimal_fvs,
    forest_bipartition,
    is_minimal_fvs,
    minimal_realizations,
    realize_choices,
    serialize_representations,
    verify_compact_rep,
)
from app.services.generator_service import disjoint_cycles
from tests.helpers import atlas_graphs, cycle, multigraph_corpus, path


def test_forest_has_the_empty_representation():
    assert enumerate_compact_representations(path(4), 0) == [CompactRepresentation()]


def test_cycle_collapses_to_one_class(c5):
    assert enumerate_compact_representations(c5, 1) == [CompactRepresentation.of([range(5)])]
    assert enumerate_compact_representations(c5, 0) == []


def test_loop_and_parallel_pair():
    assert enumerate_compact_representations(Graph(1, ((0, 0),)), 1) == [CompactRepresentation.of([[0]])]
    assert enumerate_compact_representations(Graph(2, ((0, 1), (0, 1))), 1) == [CompactRepresentation.of([[0, 1]])]


def test_bowtie(bowtie):
    reps = enumerate_compact_representations(bowtie, 2)
    assert reps[0] == CompactRepresentation.of([[2]])
    assert all(len(rep) <= 2 and rep.is_disjoint() for rep in reps)
    assert minimal_realizations(bowtie, reps) == {
        frozenset({2}),
        frozenset({0, 3}),
        frozenset({0, 4}),
        frozenset({1, 3}),
        frozenset({1, 4}),
    }


def test_three_disjoint_squares():
    g = disjoint_cycles(3, 4)
    assert len(enumerate_minimal_fvs(g, 3)) == 64
    reps = enumerate_compact_representations(g, 3)
    assert len(reps) <= 4
    assert len(minimal_realizations(g, reps)) == 64
    assert enumerate_compact_representations(g, 2) == []


def test_negative_budget():
    with pytest.raises(InvalidInstanceError):
        enumerate_compact_representations(cycle(3), -1)


@pytest.mark.parametrize("graphs", [atlas_graphs(5), multigraph_corpus(40)], ids=["atlas", "multigraphs"])
def test_sound_and_complete(graphs):
    for g in graphs:
        for k in range(g.n + 1):
            reps = enumerate_compact_representations(g, k)
            assert reps == sorted(reps, key=lambda rep: rep.sort_key)
            assert all(verify_compact_rep(g, rep, k) for rep in reps)
            realized = {choice for rep in reps for choice in realize_choices(rep)}
            assert set(enumerate_minimal_fvs(g, k)) <= realized


def test_verify_rejects_bad_families(c4):
    assert not verify_compact_rep(c4, CompactRepresentation.of([[0, 1], [1, 2]]), 2)
    assert not verify_compact_rep(c4, CompactRepresentation.of([[0], [1]]), 1)
    assert verify_compact_rep(c4, CompactRepresentation.of([[0, 1, 2, 3]]), 1, require_minimal=True)
    assert not verify_compact_rep(c4, CompactRepresentation.of([[0], [1]]), 2, require_minimal=True)


def test_minimality_oracle(c4):
    assert is_minimal_fvs(c4, frozenset({0}))
    assert not is_minimal_fvs(c4, frozenset({0, 1}))
    assert not is_minimal_fvs(c4, frozenset())


class TestForestBipartition:
    def test_avoids_the_given_set(self, c4):
        assert forest_bipartition(c4, {0}, 1) == frozenset({1})

    def test_needs_one_vertex_per_triangle(self, bowtie):
        assert forest_bipartition(bowtie, {2}, 1) is None
        assert forest_bipartition(bowtie, {2}, 2) == frozenset({0, 3})

    def test_requires_acyclic_remainder(self, bowtie):
        with pytest.raises(InvalidInstanceError):
            forest_bipartition(bowtie, {0}, 2)


def test_serialize_representations():
    reps = [CompactRepresentation.of([[2]]), CompactRepresentation.of([[0, 1], [3, 4]])]
    assert serialize_representations(reps) == "r 1 1\n3\n\nr 2 2\n1 2\n4 5\n"
    assert serialize_representations([]) == ""

#!/usr/bin/env python3
"""
Tests for the resolution graph model
"""

import pytest
from hypothesis import given, settings, strategies as st

from graph_strategies import MINUS3_STAR_MATRIX, connected_graphs, effective_cycles, minus3_star_graph, rational_trees, single_curve
from graph_model import (
    CurveVertex,
    Cycle,
    Edge,
    IntersectionMatrix,
    ResolutionGraph,
    build_matrix,
    canonical_vector,
    intersect,
    search_star,
    star_graph,
)
from errors import DimensionMismatch, GraphError


def test_build_matrix_minus3_star():
    assert build_matrix(minus3_star_graph()).entries == MINUS3_STAR_MATRIX


def test_build_matrix_single_curve():
    assert build_matrix(single_curve(0, -1)).entries == ((-1,),)


@pytest.mark.parametrize("genus,d", [(0, 3), (1, 4), (3, 6)])
def test_star_graph_is_a_gd(genus, d):
    entries = build_matrix(star_graph(genus, d)).entries
    n = genus + 4
    assert len(entries) == n
    assert entries[0] == (-2,) + (1,) * (n - 1)
    for i in range(1, n):
        assert entries[i][i] == -d
        assert entries[i][0] == 1
        assert all(entries[i][j] == 0 for j in range(1, n) if j != i)


def test_intersect_examples():
    matrix = build_matrix(minus3_star_graph())
    z = Cycle(coefficients=(2, 1, 1, 1, 1))
    assert intersect(Cycle.zero(5), z, matrix) == 0
    assert intersect(z, Cycle.basis(5, 1), matrix) == -1
    assert intersect(z, z, matrix) == -4


def test_intersect_dimension_mismatch():
    matrix = build_matrix(minus3_star_graph())
    with pytest.raises(DimensionMismatch):
        intersect(Cycle.zero(4), Cycle.zero(5), matrix)


def test_canonical_vector_examples():
    assert canonical_vector(single_curve(0, -2)) == [0]
    assert canonical_vector(minus3_star_graph()) == [0, 1, 1, 1, 1]
    assert canonical_vector(single_curve(1, -1)) == [1]


def test_graph_rejects_duplicate_names():
    with pytest.raises(ValueError):
        ResolutionGraph(vertices=(
            CurveVertex(name="A", self_intersection=-2),
            CurveVertex(name="A", self_intersection=-3),
        ))


def test_graph_rejects_self_loop_and_unknown_endpoint():
    vertex = CurveVertex(name="A", self_intersection=-2)
    with pytest.raises(ValueError):
        Edge(u="A", v="A")
    with pytest.raises(ValueError):
        ResolutionGraph(vertices=(vertex,), edges=(Edge(u="A", v="B"),))


def test_graph_rejects_negative_genus_and_empty():
    with pytest.raises(ValueError):
        CurveVertex(name="A", genus=-1, self_intersection=-2)
    with pytest.raises(ValueError):
        ResolutionGraph(vertices=())


def test_one_edge_record_per_pair_and_merge():
    a = CurveVertex(name="A", self_intersection=-2)
    b = CurveVertex(name="B", self_intersection=-2)
    with pytest.raises(ValueError):
        ResolutionGraph(vertices=(a, b), edges=(Edge(u="A", v="B"), Edge(u="B", v="A")))
    merged = ResolutionGraph.from_parts([a, b], [Edge(u="A", v="B"), Edge(u="B", v="A")])
    assert merged.multiplicity("A", "B") == 2
    assert build_matrix(merged).entries == ((-2, 2), (2, -2))


def test_intersection_matrix_validation():
    with pytest.raises(ValueError):
        IntersectionMatrix(entries=((-2, 1), (0, -2)))
    with pytest.raises(ValueError):
        IntersectionMatrix(entries=((-2, -1), (-1, -2)))


def test_cycle_predicates():
    z = Cycle(coefficients=(0, 2, 0))
    assert z.is_effective() and z.is_nonzero()
    assert z.support() == [1]
    assert not Cycle(coefficients=(1, -1, 0)).is_effective()
    assert not Cycle.zero(3).is_nonzero()
    assert z.dominated_by(Cycle(coefficients=(0, 2, 1)))


@given(connected_graphs(max_vertices=10))
@settings(max_examples=100, deadline=None)
def test_build_matrix_symmetric(graph):
    entries = build_matrix(graph).entries
    n = len(entries)
    assert all(entries[i][j] == entries[j][i] for i in range(n) for j in range(n))


@given(st.data())
@settings(max_examples=200, deadline=None)
def test_intersect_symmetric_and_bilinear(data):
    graph = data.draw(connected_graphs())
    matrix = build_matrix(graph)
    n = graph.size
    z1, z2, w = (Cycle(coefficients=data.draw(effective_cycles(n))) for _ in range(3))
    assert intersect(z1, z2, matrix) == intersect(z2, z1, matrix)
    assert intersect(z1 + z2, w, matrix) == intersect(z1, w, matrix) + intersect(z2, w, matrix)


@given(rational_trees())
def test_canonical_vector_of_minus_two_curves_vanishes(graph):
    assert canonical_vector(graph) == [0] * graph.size


@pytest.mark.parametrize("genus", range(11))
def test_search_star_minimal_d(genus):
    result = search_star(genus, 64)
    assert result.minimal_d == (genus + 3) // 2 + 1
    assert result.minimal_d <= result.certificate_bound
    assert result.bound_negative_definite


def test_search_star_bounds():
    assert search_star(3, 2) is None
    with pytest.raises(GraphError):
        search_star(0, 0)
    with pytest.raises(GraphError):
        search_star(-1, 5)

#!/usr/bin/env python3
"""
Tests for cycle invariants: χ, the fundamental cycle, minimal ellipticity
and the geometric genus bound
"""

import itertools
import random

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from graph_strategies import FIXTURES, connected_graphs, effective_cycles, minus3_star_graph, graph_from, single_curve
from cycles import (
    chi,
    computation_sequence,
    fundamental_cycle,
    is_antinef,
    is_minimally_elliptic,
    is_rational_singularity,
    pg_lower_bound,
    proper_subcycles,
)
from errors import BoxTooLarge, Disconnected, NotContractible, PreconditionViolation
from exact_linalg import is_negative_definite
from graph_model import Cycle, build_matrix, intersect, star_graph
from formats import parse_graph

MINUS3_STAR_FUND = Cycle(coefficients=(2, 1, 1, 1, 1))


def _star_cycle(genus: int) -> Cycle:
    return Cycle(coefficients=(2,) + (1,) * (genus + 3))


def test_is_antinef_examples():
    graph = minus3_star_graph()
    assert is_antinef(MINUS3_STAR_FUND, graph)
    assert is_antinef(Cycle.zero(5), graph)
    assert not is_antinef(Cycle.reduced(5), graph)


def test_chi_examples():
    assert chi(MINUS3_STAR_FUND, minus3_star_graph()) == 0
    assert chi(Cycle(coefficients=(1,)), single_curve(0, -2)) == 1
    assert chi(Cycle(coefficients=(1,)), single_curve(1, -1)) == 0
    assert chi(Cycle.zero(5), minus3_star_graph()) == 0


def test_chi_rejects_non_effective():
    with pytest.raises(PreconditionViolation):
        chi(Cycle(coefficients=(1, -1, 0, 0, 0)), minus3_star_graph())


@pytest.mark.parametrize("genus", range(6))
def test_star_cycle_invariants(genus):
    graph = star_graph(genus, genus + 3)
    z = _star_cycle(genus)
    matrix = build_matrix(graph)
    assert chi(z, graph) == 1 - genus
    assert intersect(z, Cycle.basis(graph.size, 0), matrix) == genus - 1
    assert intersect(z, Cycle.basis(graph.size, 1), matrix) == 2 - (genus + 3)
    assert computation_sequence(z, graph) == [0]
    assert pg_lower_bound(graph, z) == genus


@pytest.mark.parametrize("genus", range(5))
def test_star_fundamental_cycle(genus):
    graph = star_graph(genus, genus + 3)
    c = (genus + 4) // 2
    z = fundamental_cycle(graph)
    assert z.coefficients == (c,) + (1,) * (genus + 3)
    m = genus + 3
    assert chi(z, graph) == c * c - c * m + m


def test_fundamental_cycle_minus3_star():
    assert fundamental_cycle(minus3_star_graph()) == MINUS3_STAR_FUND
    assert fundamental_cycle(minus3_star_graph(), order=[4, 3, 2, 1, 0]) == MINUS3_STAR_FUND


def test_fundamental_cycle_single_curves():
    assert fundamental_cycle(single_curve(0, -2)).coefficients == (1,)
    assert fundamental_cycle(single_curve(1, -1)).coefficients == (1,)


def test_fundamental_cycle_not_contractible():
    graph = parse_graph((FIXTURES / "d4_affine.graph").read_text())
    with pytest.raises(NotContractible):
        fundamental_cycle(graph)


def test_fundamental_cycle_disconnected():
    with pytest.raises(Disconnected):
        fundamental_cycle(graph_from([-2, -2], {}))


def test_fundamental_cycle_iteration_cap():
    with pytest.raises(RuntimeError):
        fundamental_cycle(minus3_star_graph(), iteration_cap=1)


def test_fundamental_cycle_bad_order():
    with pytest.raises(PreconditionViolation):
        fundamental_cycle(minus3_star_graph(), order=[0, 0, 1, 2, 3])


def test_proper_subcycles_of_minus3_star():
    graph = minus3_star_graph()
    subs = list(proper_subcycles(MINUS3_STAR_FUND))
    assert len(subs) == 3 * 2 ** 4 - 2
    assert len(set(subs)) == len(subs)
    assert all(chi(z, graph) >= 1 for z in subs)


def test_minimally_elliptic_examples():
    assert is_minimally_elliptic(minus3_star_graph())
    assert is_minimally_elliptic(single_curve(1, -1))
    assert not is_minimally_elliptic(single_curve(0, -2))
    assert not is_minimally_elliptic(star_graph(2, 5))


def test_minimally_elliptic_box_bound():
    with pytest.raises(BoxTooLarge) as info:
        is_minimally_elliptic(minus3_star_graph(), max_box=10)
    assert info.value.size == 48
    assert info.value.bound == 10


def test_rational_singularity_examples():
    assert is_rational_singularity(single_curve(0, -2))
    assert is_rational_singularity(star_graph(0, 3))
    assert not is_rational_singularity(minus3_star_graph())
    for genus in range(1, 5):
        assert not is_rational_singularity(star_graph(genus, genus + 3))


def test_pg_lower_bound_examples():
    assert pg_lower_bound(minus3_star_graph(), MINUS3_STAR_FUND) == 1
    assert pg_lower_bound(single_curve(0, -2), Cycle(coefficients=(1,))) == 0
    assert pg_lower_bound(single_curve(1, -1), Cycle(coefficients=(1,))) == 1


def test_pg_lower_bound_preconditions():
    graph = minus3_star_graph()
    with pytest.raises(PreconditionViolation):
        pg_lower_bound(graph, Cycle.zero(5))
    with pytest.raises(PreconditionViolation):
        pg_lower_bound(graph, Cycle(coefficients=(0, 1, 1, 0, 0)))
    # twice the fundamental cycle has no computation sequence
    with pytest.raises(PreconditionViolation):
        pg_lower_bound(graph, Cycle(coefficients=(4, 2, 2, 2, 2)))


def test_computation_sequence_of_fundamental_cycle():
    assert computation_sequence(MINUS3_STAR_FUND, minus3_star_graph()) == [0]
    assert computation_sequence(Cycle.reduced(5), minus3_star_graph()) == []
    assert computation_sequence(Cycle(coefficients=(0, 1, 1, 0, 0)), minus3_star_graph()) is None


negative_definite_graphs = connected_graphs(min_self=-6, max_multiplicity=1).filter(
    lambda g: is_negative_definite(build_matrix(g).entries)
)


def _brute_force_fundamental_cycle(matrix, n, top=6):
    a = np.array(matrix.entries, dtype=np.int64)
    grid = np.array(list(itertools.product(range(top + 1), repeat=n)), dtype=np.int64)
    grid = grid[grid.sum(axis=1) > 0]
    antinef = grid[((grid @ a) <= 0).all(axis=1)]
    if len(antinef) == 0:
        return None
    best = antinef[antinef.sum(axis=1).argmin()]
    assert (antinef >= best).all(axis=1).all()
    return tuple(int(x) for x in best)


@given(negative_definite_graphs, st.randoms(use_true_random=False))
@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
def test_fundamental_cycle_matches_brute_force(graph, rnd):
    z = fundamental_cycle(graph)
    assume(max(z.coefficients) <= 6)
    assert _brute_force_fundamental_cycle(build_matrix(graph), graph.size) == z.coefficients
    for _ in range(20):
        order = list(range(graph.size))
        rnd.shuffle(order)
        assert fundamental_cycle(graph, order=order) == z


@given(negative_definite_graphs)
@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
def test_fundamental_cycle_properties(graph):
    z = fundamental_cycle(graph)
    assert is_antinef(z, graph)
    assert all(c >= 1 for c in z.coefficients)
    chi_fund = chi(z, graph)
    assert chi_fund <= 1
    assert computation_sequence(z, graph) is not None
    assert pg_lower_bound(graph, z) == 1 - chi_fund


@given(negative_definite_graphs)
@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
def test_fundamental_cycle_follows_vertex_relabelling(graph):
    order = list(range(graph.size))
    random.Random(graph.size).shuffle(order)
    z = fundamental_cycle(graph)
    assert fundamental_cycle(graph.permuted(order)).coefficients == tuple(z.coefficients[i] for i in order)


@given(st.data())
@settings(max_examples=500, deadline=None)
def test_riemann_roch_additivity(data):
    graph = data.draw(connected_graphs())
    matrix = build_matrix(graph)
    z1 = Cycle(coefficients=data.draw(effective_cycles(graph.size)))
    z2 = Cycle(coefficients=data.draw(effective_cycles(graph.size)))
    assert chi(z1 + z2, graph) == chi(z1, graph) + chi(z2, graph) - intersect(z1, z2, matrix)


def test_pg_lower_bound_needs_a_contractible_graph():
    graph = parse_graph((FIXTURES / "d4_affine.graph").read_text())
    z = Cycle(coefficients=(2, 1, 1, 1, 1))
    assert chi(z, graph) == 0
    with pytest.raises(NotContractible):
        pg_lower_bound(graph, z)

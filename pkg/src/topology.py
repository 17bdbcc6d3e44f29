#!/usr/bin/env python3
"""
Topology of the dual graph.

An edge of multiplicity m stands for m intersection points, so the dual
graph is a multigraph and a double edge already closes a loop. For a
connected reduced curve C = E_1 + ... + E_n with simple normal crossings

    h¹(O_C) = Σ g_i + #(Sing C) - n + 1,

and C has h¹(O_C) = 0 exactly when it is a tree of rational curves. The link
of the singularity is a rational homology sphere exactly when the
exceptional curve is such a tree.
"""

import logging
from typing import Iterable

import networkx as nx

from errors import NotContractible
from exact_linalg import is_negative_definite
from graph_model import ResolutionGraph, build_matrix

logger = logging.getLogger(__name__)


def dual_multigraph(graph: ResolutionGraph) -> nx.MultiGraph:
    """One node per curve, one parallel edge per intersection point."""
    g = nx.MultiGraph()
    for vertex in graph.vertices:
        g.add_node(vertex.name, genus=vertex.genus, self_intersection=vertex.self_intersection)
    for edge in graph.edges:
        for _ in range(edge.multiplicity):
            g.add_edge(edge.u, edge.v)
    return g


def connected_components(graph: ResolutionGraph) -> list[list[str]]:
    """Components as vertex-name lists, each in declaration order."""
    order = graph.index
    components = nx.connected_components(dual_multigraph(graph))
    result = [sorted(c, key=order.__getitem__) for c in components]
    return sorted(result, key=lambda c: order[c[0]])


def is_connected(graph: ResolutionGraph) -> bool:
    return nx.is_connected(dual_multigraph(graph))


def is_support_connected(graph: ResolutionGraph, indices: Iterable[int]) -> bool:
    """Whether the curves with the given vertex indices form a connected curve."""
    names = [graph.vertices[i].name for i in indices]
    if not names:
        return False
    return nx.is_connected(dual_multigraph(graph).subgraph(names))


def first_betti(graph: ResolutionGraph) -> int:
    """#edges (with multiplicity) - #vertices + #components."""
    g = dual_multigraph(graph)
    return g.number_of_edges() - g.number_of_nodes() + nx.number_connected_components(g)


def h1_structure_sheaf(graph: ResolutionGraph) -> int:
    """h¹(O_C) of the reduced exceptional curve; summed over components when disconnected."""
    return sum(vertex.genus for vertex in graph.vertices) + first_betti(graph)


def is_rational_tree(graph: ResolutionGraph) -> bool:
    if any(vertex.genus != 0 for vertex in graph.vertices):
        return False
    if any(edge.multiplicity != 1 for edge in graph.edges):
        return False
    return len(graph.edges) == graph.size - 1 and is_connected(graph)


def is_qhs_link(graph: ResolutionGraph) -> bool:
    """Whether the link of the contracted singularity is a rational homology sphere."""
    if not is_negative_definite(build_matrix(graph).entries):
        raise NotContractible("Intersection matrix is not negative definite; there is no link")
    result = is_rational_tree(graph)
    logger.debug(f"QHS link check on {graph.size} curves: {result}")
    return result

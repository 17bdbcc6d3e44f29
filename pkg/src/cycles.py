#!/usr/bin/env python3
"""
Invariants of cycles supported on the exceptional curve.

The fundamental cycle is computed with Laufer's sequence: start from the
reduced cycle and keep adding a curve E_i with Z·E_i > 0 until Z is
anti-nef. The Euler characteristic of a cycle comes from adjunction,
χ(O_Z) = -(Z·Z + Z·K)/2.
"""

import itertools
import logging
import math
from typing import Iterator, Sequence

from errors import (
    BoxTooLarge,
    Disconnected,
    NotContractible,
    ParityViolation,
    PreconditionViolation,
)
from exact_linalg import is_negative_definite
from graph_model import (
    Cycle,
    IntersectionMatrix,
    ResolutionGraph,
    build_matrix,
    canonical_vector,
    intersection_numbers,
)
from settings import get_settings
from topology import is_connected, is_support_connected

logger = logging.getLogger(__name__)


def _contractible_matrix(graph: ResolutionGraph) -> IntersectionMatrix:
    matrix = build_matrix(graph)
    if not is_negative_definite(matrix.entries):
        raise NotContractible("Intersection matrix is not negative definite")
    return matrix


def _require_same_size(z: Cycle, graph: ResolutionGraph) -> None:
    if len(z) != graph.size:
        raise PreconditionViolation(f"Cycle has {len(z)} coefficients, graph has {graph.size} vertices")


def is_antinef(z: Cycle, graph: ResolutionGraph) -> bool:
    """Z·E_i <= 0 for every curve; the zero cycle passes vacuously."""
    _require_same_size(z, graph)
    return all(x <= 0 for x in intersection_numbers(z.coefficients, build_matrix(graph)))


def _chi(z: Sequence[int], matrix: IntersectionMatrix, canonical: Sequence[int]) -> int:
    products = intersection_numbers(z, matrix)
    total = sum(a * b for a, b in zip(z, products)) + sum(a * k for a, k in zip(z, canonical))
    if total % 2:
        raise ParityViolation(f"Z·Z + Z·K = {total} is odd")
    return -total // 2


def chi(z: Cycle, graph: ResolutionGraph) -> int:
    """Euler characteristic χ(O_Z) of an effective cycle."""
    _require_same_size(z, graph)
    if not z.is_effective():
        raise PreconditionViolation(f"Cycle {list(z.coefficients)} is not effective")
    return _chi(z.coefficients, build_matrix(graph), canonical_vector(graph))


def fundamental_cycle(
    graph: ResolutionGraph,
    order: Sequence[int] | None = None,
    iteration_cap: int | None = None,
) -> Cycle:
    """
    Minimal nonzero effective anti-nef cycle.

    ``order`` is the priority in which candidate curves are tried (default:
    vertex order). The result does not depend on it.
    """
    matrix = _contractible_matrix(graph)
    if not is_connected(graph):
        raise Disconnected("The fundamental cycle needs a connected graph")
    n = graph.size
    priority = list(order) if order is not None else list(range(n))
    if sorted(priority) != list(range(n)):
        raise PreconditionViolation(f"{priority} is not an ordering of the vertices")
    cap = iteration_cap if iteration_cap is not None else get_settings().laufer_iteration_cap

    z = [1] * n
    for step in range(cap):
        products = intersection_numbers(z, matrix)
        i = next((i for i in priority if products[i] > 0), None)
        if i is None:
            logger.debug(f"Laufer sequence finished after {step} steps: {z}")
            return Cycle(coefficients=tuple(z))
        logger.debug(f"Laufer step {step}: Z·{graph.vertices[i].name} = {products[i]} > 0")
        z[i] += 1
    raise RuntimeError(f"Laufer sequence did not terminate within {cap} steps")


def proper_subcycles(z: Cycle) -> Iterator[Cycle]:
    """Every cycle Z' with 0 < Z' < Z coefficient-wise."""
    top = z.coefficients
    for coefficients in itertools.product(*(range(c + 1) for c in top)):
        if any(coefficients) and coefficients != top:
            yield Cycle(coefficients=coefficients)


def is_minimally_elliptic(graph: ResolutionGraph, max_box: int | None = None) -> bool:
    """χ(Z_fund) = 0 and χ(Z') > 0 for every 0 < Z' < Z_fund."""
    z = fundamental_cycle(graph)
    matrix = build_matrix(graph)
    canonical = canonical_vector(graph)
    if _chi(z.coefficients, matrix, canonical) != 0:
        return False
    bound = max_box if max_box is not None else get_settings().max_box_size
    size = math.prod(c + 1 for c in z.coefficients)
    if size > bound:
        raise BoxTooLarge(size, bound)
    for sub in proper_subcycles(z):
        if _chi(sub.coefficients, matrix, canonical) <= 0:
            logger.debug(f"Subcycle {list(sub.coefficients)} has non-positive χ")
            return False
    return True


def is_rational_singularity(graph: ResolutionGraph) -> bool:
    """Artin's criterion χ(Z_fund) = 1."""
    return chi(fundamental_cycle(graph), graph) == 1


def computation_sequence(z: Cycle, graph: ResolutionGraph) -> list[int] | None:
    """
    Indices i_1, i_2, ... building Z from its reduced support, each added
    curve satisfying D·E_i > 0 for the partial sum D before it.

    Along such a sequence h⁰(O_D) stays 1, since every step has kernel
    O_{E_i}(-D) of negative degree. Returns None if no sequence exists or
    the support is disconnected.
    """
    _require_same_size(z, graph)
    support = z.support()
    if not z.is_effective() or not support or not is_support_connected(graph, support):
        return None
    matrix = build_matrix(graph)
    target = z.coefficients
    d = [1 if c else 0 for c in target]
    steps: list[int] = []
    while tuple(d) != target:
        products = intersection_numbers(d, matrix)
        i = next((i for i in support if d[i] < target[i] and products[i] > 0), None)
        if i is None:
            return None
        d[i] += 1
        steps.append(i)
    return steps


def pg_lower_bound(graph: ResolutionGraph, z: Cycle) -> int:
    """h¹(O_Z) = 1 - χ(O_Z), a lower bound for the geometric genus."""
    _require_same_size(z, graph)
    _contractible_matrix(graph)
    if not z.is_effective() or not z.is_nonzero():
        raise PreconditionViolation("The cycle must be effective and nonzero")
    if not is_support_connected(graph, z.support()):
        raise PreconditionViolation("The support of the cycle is disconnected, so h⁰(O_Z) = 1 fails")
    if computation_sequence(z, graph) is None:
        raise PreconditionViolation(
            f"No computation sequence reaches {list(z.coefficients)}, so h⁰(O_Z) = 1 is not established"
        )
    return max(0, 1 - chi(z, graph))

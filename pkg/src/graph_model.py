#!/usr/bin/env python3
"""
Dual resolution graph model.

A resolution graph records the exceptional curves of a resolution of a
normal surface singularity (vertices weighted by genus and
self-intersection) and how they meet (edges weighted by the number of
transverse intersection points). Vertex declaration order fixes the row and
column order of every matrix and vector derived from the graph.
"""

import logging
from typing import Iterable, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from errors import DimensionMismatch, GraphError
from exact_linalg import is_negative_definite, verify_certificate

logger = logging.getLogger(__name__)


class CurveVertex(BaseModel):
    """One exceptional curve E_i with genus g_i and self-intersection e_i."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(min_length=1)
    genus: int = Field(default=0, ge=0)
    self_intersection: int


class Edge(BaseModel):
    """Two distinct curves meeting transversally in ``multiplicity`` points."""

    model_config = ConfigDict(frozen=True)

    u: str
    v: str
    multiplicity: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _distinct_endpoints(self) -> "Edge":
        if self.u == self.v:
            raise GraphError(f"Self-loop on {self.u!r}: components must be smooth")
        return self

    @property
    def endpoints(self) -> frozenset[str]:
        return frozenset((self.u, self.v))


class ResolutionGraph(BaseModel):
    """Weighted dual graph of an exceptional curve configuration."""

    model_config = ConfigDict(frozen=True)

    vertices: tuple[CurveVertex, ...]
    edges: tuple[Edge, ...] = ()

    @model_validator(mode="after")
    def _check_invariants(self) -> "ResolutionGraph":
        if not self.vertices:
            raise GraphError("A resolution graph needs at least one vertex")
        names = [vertex.name for vertex in self.vertices]
        seen: set[str] = set()
        for name in names:
            if name in seen:
                raise GraphError(f"Duplicate vertex name {name!r}")
            seen.add(name)
        pairs: set[frozenset[str]] = set()
        for edge in self.edges:
            for end in (edge.u, edge.v):
                if end not in seen:
                    raise GraphError(f"Edge endpoint {end!r} is not a vertex")
            if edge.endpoints in pairs:
                raise GraphError(f"More than one edge record between {edge.u!r} and {edge.v!r}")
            pairs.add(edge.endpoints)
        return self

    @classmethod
    def from_parts(
        cls,
        vertices: Iterable[CurveVertex],
        edges: Iterable[Edge] = (),
    ) -> "ResolutionGraph":
        """Build a graph, merging repeated edges between the same pair into one multiplicity."""
        merged: dict[frozenset[str], Edge] = {}
        for edge in edges:
            key = edge.endpoints
            if key in merged:
                previous = merged[key]
                merged[key] = Edge(
                    u=previous.u,
                    v=previous.v,
                    multiplicity=previous.multiplicity + edge.multiplicity,
                )
            else:
                merged[key] = edge
        return cls(vertices=tuple(vertices), edges=tuple(merged.values()))

    @property
    def index(self) -> dict[str, int]:
        return {vertex.name: i for i, vertex in enumerate(self.vertices)}

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def names(self) -> list[str]:
        return [vertex.name for vertex in self.vertices]

    def vertex(self, name: str) -> CurveVertex:
        return self.vertices[self.index[name]]

    def multiplicity(self, a: str, b: str) -> int:
        for edge in self.edges:
            if edge.endpoints == frozenset((a, b)):
                return edge.multiplicity
        return 0

    def permuted(self, order: Sequence[int]) -> "ResolutionGraph":
        """Same graph with vertices listed as ``[vertices[i] for i in order]``."""
        if sorted(order) != list(range(self.size)):
            raise GraphError(f"{list(order)} is not a permutation of the vertex indices")
        return ResolutionGraph(
            vertices=tuple(self.vertices[i] for i in order),
            edges=self.edges,
        )


class IntersectionMatrix(BaseModel):
    """Symmetric integer matrix (E_i · E_j)."""

    model_config = ConfigDict(frozen=True)

    entries: tuple[tuple[int, ...], ...]

    @model_validator(mode="after")
    def _check_shape(self) -> "IntersectionMatrix":
        n = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise GraphError(f"Row {i} has length {len(row)}, expected {n}")
            for j in range(i + 1, n):
                if row[j] != self.entries[j][i]:
                    raise GraphError(f"Matrix is not symmetric at ({i}, {j})")
                if row[j] < 0:
                    raise GraphError(f"Negative off-diagonal entry at ({i}, {j})")
        return self

    @property
    def size(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def negated(self) -> list[list[int]]:
        return [[-x for x in row] for row in self.entries]


class Cycle(BaseModel):
    """Integer combination Z = sum z_i E_i, indexed by vertex order."""

    model_config = ConfigDict(frozen=True)

    coefficients: tuple[int, ...]

    @classmethod
    def zero(cls, n: int) -> "Cycle":
        return cls(coefficients=(0,) * n)

    @classmethod
    def reduced(cls, n: int) -> "Cycle":
        return cls(coefficients=(1,) * n)

    @classmethod
    def basis(cls, n: int, i: int) -> "Cycle":
        return cls(coefficients=tuple(1 if j == i else 0 for j in range(n)))

    def __len__(self) -> int:
        return len(self.coefficients)

    def __add__(self, other: "Cycle") -> "Cycle":
        _check_lengths(self.coefficients, other.coefficients)
        return Cycle(coefficients=tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def is_effective(self) -> bool:
        return all(z >= 0 for z in self.coefficients)

    def is_nonzero(self) -> bool:
        return any(z != 0 for z in self.coefficients)

    def support(self) -> list[int]:
        return [i for i, z in enumerate(self.coefficients) if z != 0]

    def dominated_by(self, other: "Cycle") -> bool:
        """Coefficient-wise self <= other."""
        _check_lengths(self.coefficients, other.coefficients)
        return all(a <= b for a, b in zip(self.coefficients, other.coefficients))


def _check_lengths(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise DimensionMismatch(f"Length {len(a)} does not match length {len(b)}")


def build_matrix(graph: ResolutionGraph) -> IntersectionMatrix:
    """Intersection matrix with self-intersections on the diagonal and edge multiplicities off it."""
    n = graph.size
    entries = [[0] * n for _ in range(n)]
    for i, vertex in enumerate(graph.vertices):
        entries[i][i] = vertex.self_intersection
    index = graph.index
    for edge in graph.edges:
        i, j = index[edge.u], index[edge.v]
        entries[i][j] = entries[j][i] = edge.multiplicity
    return IntersectionMatrix(entries=tuple(tuple(row) for row in entries))


def intersection_numbers(z: Sequence[int], matrix: IntersectionMatrix) -> list[int]:
    """Z·E_i for every vertex i."""
    _check_lengths(z, matrix.entries)
    return [sum(a * zj for a, zj in zip(row, z)) for row in matrix.entries]


def intersect(z1: Cycle, z2: Cycle, matrix: IntersectionMatrix) -> int:
    """Bilinear form Z1ᵀ·A·Z2."""
    _check_lengths(z1.coefficients, z2.coefficients)
    products = intersection_numbers(z2.coefficients, matrix)
    return sum(a * b for a, b in zip(z1.coefficients, products))


def canonical_vector(graph: ResolutionGraph) -> list[int]:
    """K·E_i = -e_i + 2g_i - 2 for every vertex (adjunction)."""
    return [-v.self_intersection + 2 * v.genus - 2 for v in graph.vertices]


def star_graph(genus: int, d: int) -> ResolutionGraph:
    """Star with a rational (-2)-curve C0 meeting genus+3 rational (-d)-curves C1..C{genus+3}."""
    if genus < 0:
        raise GraphError(f"genus must be non-negative, got {genus}")
    leaves = genus + 3
    vertices = [CurveVertex(name="C0", genus=0, self_intersection=-2)]
    vertices += [CurveVertex(name=f"C{i}", genus=0, self_intersection=-d) for i in range(1, leaves + 1)]
    edges = [Edge(u="C0", v=f"C{i}") for i in range(1, leaves + 1)]
    logger.debug(f"Built star graph for genus={genus}, d={d} with {leaves} leaves")
    return ResolutionGraph(vertices=tuple(vertices), edges=tuple(edges))


class StarSearchResult(BaseModel):
    genus: int
    minimal_d: int
    certificate_bound: int
    certificate: list[int]
    certificate_valid_at_minimal_d: bool
    bound_negative_definite: bool


def search_star(genus: int, max_d: int) -> StarSearchResult | None:
    """Smallest d in [1, max_d] for which the genus-g star is negative definite."""
    if genus < 0 or max_d < 1:
        raise GraphError(f"Need genus >= 0 and max_d >= 1, got {genus}, {max_d}")
    bound = genus + 3
    certificate = [genus + 2] + [1] * (genus + 3)
    for d in range(1, max_d + 1):
        matrix = build_matrix(star_graph(genus, d))
        if is_negative_definite(matrix.entries):
            logger.info(f"Star for genus {genus} becomes negative definite at d = {d}")
            return StarSearchResult(
                genus=genus,
                minimal_d=d,
                certificate_bound=bound,
                certificate=certificate,
                certificate_valid_at_minimal_d=verify_certificate(matrix.negated(), certificate),
                bound_negative_definite=is_negative_definite(build_matrix(star_graph(genus, bound)).entries),
            )
    return None

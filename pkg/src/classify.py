#!/usr/bin/env python3
"""
Discrepancies and the singularity report.

Writing K_Y = f*K_X + Σ a_i E_i and intersecting with each E_j kills the
pull-back term, so the discrepancies solve A·a = k with k_j = K·E_j. They
are taken with respect to the given graph as it stands: (-1)-curves are
not contracted first.
"""

import logging
from enum import Enum
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, field_serializer, model_validator

from cycles import (
    chi,
    fundamental_cycle,
    is_minimally_elliptic,
    pg_lower_bound,
)
from errors import BoxTooLarge, GraphError, NotContractible
from exact_linalg import (
    Singular,
    determinant,
    find_certificate,
    is_negative_definite,
    negate,
    solve_linear,
)
from graph_model import ResolutionGraph, build_matrix, canonical_vector
from topology import (
    first_betti,
    h1_structure_sheaf,
    is_connected,
    is_qhs_link,
    is_rational_tree,
)

logger = logging.getLogger(__name__)


def _fractions_to_strings(values):
    return [str(v) for v in values] if values is not None else None


class DiscrepancyVector(BaseModel):
    """a_i = a(E_i, X) in vertex order."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: tuple[Fraction, ...]

    @field_serializer("values")
    def _serialize_values(self, values: tuple[Fraction, ...]) -> list[str]:
        return _fractions_to_strings(values)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def minimum(self) -> Fraction:
        return min(self.values)


class DiscrepancyClass(str, Enum):
    CANONICAL = "Canonical"
    LOG_TERMINAL = "LogTerminal"
    LOG_CANONICAL = "LogCanonical"
    NOT_LOG_CANONICAL = "NotLogCanonical"


class Classification(BaseModel):
    """Strongest label plus every flag; terminal is never claimed."""

    model_config = ConfigDict(frozen=True)

    label: DiscrepancyClass
    canonical: bool
    log_terminal: bool
    log_canonical: bool

    @model_validator(mode="after")
    def _consistent(self) -> "Classification":
        if (self.canonical and not self.log_terminal) or (self.log_terminal and not self.log_canonical):
            raise GraphError("Inconsistent classification flags")
        return self


class ClassificationFlags(BaseModel):
    rational: bool | None = None
    minimally_elliptic: bool | None = None
    log_terminal: bool
    log_canonical: bool
    canonical: bool
    numerically_gorenstein: bool


class LinkReport(BaseModel):
    rational_tree: bool
    first_betti: int
    h1_structure_sheaf: int
    qhs_link: bool | None = None
    h1_bound: int | None = None


class SingularityReport(BaseModel):
    """Everything known about one graph; contractibility-dependent fields stay None otherwise."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    vertices: list[str]
    matrix: list[list[int]]
    negative_definite: bool
    determinant: int
    certificate: list[Fraction] | None = None
    fundamental_cycle: list[int] | None = None
    chi_fund: int | None = None
    discrepancies: list[Fraction] | None = None
    min_discrepancy: Fraction | None = None
    classification: DiscrepancyClass | None = None
    flags: ClassificationFlags | None = None
    link: LinkReport
    warnings: list[str] = []

    @field_serializer("certificate", "discrepancies")
    def _serialize_vectors(self, values: list[Fraction] | None) -> list[str] | None:
        return _fractions_to_strings(values)

    @field_serializer("min_discrepancy")
    def _serialize_minimum(self, value: Fraction | None) -> str | None:
        return str(value) if value is not None else None


def discrepancies(graph: ResolutionGraph) -> DiscrepancyVector:
    """Unique rational solution of A·a = k."""
    matrix = build_matrix(graph)
    if not is_negative_definite(matrix.entries):
        raise NotContractible("Discrepancies need a negative definite intersection matrix")
    solution = solve_linear(matrix.entries, canonical_vector(graph))
    if isinstance(solution, Singular):
        raise NotContractible("Intersection matrix is singular")
    return DiscrepancyVector(values=tuple(solution))


def classify_discrepancies(a: DiscrepancyVector) -> Classification:
    low = a.minimum
    canonical = low >= 0
    log_terminal = low > -1
    log_canonical = low >= -1
    if canonical:
        label = DiscrepancyClass.CANONICAL
    elif log_terminal:
        label = DiscrepancyClass.LOG_TERMINAL
    elif log_canonical:
        label = DiscrepancyClass.LOG_CANONICAL
    else:
        label = DiscrepancyClass.NOT_LOG_CANONICAL
    return Classification(
        label=label,
        canonical=canonical,
        log_terminal=log_terminal,
        log_canonical=log_canonical,
    )


def is_numerically_gorenstein(a: DiscrepancyVector) -> bool:
    return all(value.denominator == 1 for value in a.values)


def has_non_minimal_curve(graph: ResolutionGraph) -> bool:
    """A rational (-1)-curve could be contracted, so the resolution is not minimal."""
    return any(v.genus == 0 and v.self_intersection == -1 for v in graph.vertices)


def full_report(graph: ResolutionGraph, max_box: int | None = None) -> SingularityReport:
    matrix = build_matrix(graph)
    negative_definite = is_negative_definite(matrix.entries)
    warnings: list[str] = []
    if has_non_minimal_curve(graph):
        warnings.append("non_minimal_resolution")

    link = LinkReport(
        rational_tree=is_rational_tree(graph),
        first_betti=first_betti(graph),
        h1_structure_sheaf=h1_structure_sheaf(graph),
    )
    report = SingularityReport(
        vertices=graph.names,
        matrix=matrix.rows(),
        negative_definite=negative_definite,
        determinant=int(determinant(negate(matrix.entries))),
        link=link,
        warnings=warnings,
    )
    if not negative_definite:
        logger.info(f"Graph with {graph.size} curves is not contractible")
        return report

    certificate = find_certificate(negate(matrix.entries))
    a = discrepancies(graph)
    classification = classify_discrepancies(a)

    fund = None
    chi_fund = None
    rational = None
    minimally_elliptic = None
    if is_connected(graph):
        fund = fundamental_cycle(graph)
        chi_fund = chi(fund, graph)
        rational = chi_fund == 1
        try:
            minimally_elliptic = is_minimally_elliptic(graph, max_box=max_box)
        except BoxTooLarge as e:
            logger.warning(f"Skipping minimal ellipticity check: {e}")
            warnings.append("box_too_large")
        link = link.model_copy(update={
            "qhs_link": is_qhs_link(graph),
            "h1_bound": pg_lower_bound(graph, fund),
        })
    else:
        warnings.append("disconnected")
        link = link.model_copy(update={"qhs_link": is_qhs_link(graph)})

    report = report.model_copy(update={
        "certificate": certificate if isinstance(certificate, list) else None,
        "fundamental_cycle": list(fund.coefficients) if fund is not None else None,
        "chi_fund": chi_fund,
        "discrepancies": list(a.values),
        "min_discrepancy": a.minimum,
        "classification": classification.label,
        "flags": ClassificationFlags(
            rational=rational,
            minimally_elliptic=minimally_elliptic,
            log_terminal=classification.log_terminal,
            log_canonical=classification.log_canonical,
            canonical=classification.canonical,
            numerically_gorenstein=is_numerically_gorenstein(a),
        ),
        "link": link,
        "warnings": warnings,
    })
    logger.info(f"Analysed graph with {graph.size} curves: {classification.label.value}")
    return report

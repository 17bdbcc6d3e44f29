#!/usr/bin/env python3
"""
Text formats: graph files, blowup scripts, DOT export and report rendering.

Graph file::

    # comment
    vertex <name> genus=<int> self=<int>
    edge <name> <name> [mult=<int>]

Blowup script::

    start <name> g=<int> e=<int>
    blowup_on <curve> -> <name>
    blowup_at <c1> <c2> -> <name>
    select <name> <name> ...
"""

import json
import logging
from fractions import Fraction
from typing import Any, Iterable, Sequence

from blowup import BlowupAt, BlowupOn, BlowupScript, Select, Start
from classify import SingularityReport
from errors import ParseError
from graph_model import CurveVertex, Cycle, Edge, ResolutionGraph

logger = logging.getLogger(__name__)


def _lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            yield number, content.split()


def _options(number: int, tokens: Sequence[str], allowed: set[str]) -> dict[str, int]:
    options: dict[str, int] = {}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep or key not in allowed:
            raise ParseError(number, f"unexpected token {token!r}")
        if key in options:
            raise ParseError(number, f"{key} given twice")
        try:
            options[key] = int(value)
        except ValueError:
            raise ParseError(number, f"{key} must be an integer, got {value!r}") from None
    return options


def parse_graph(text: str) -> ResolutionGraph:
    """Parse a graph file; repeated edges between the same pair add up their multiplicities."""
    vertices: list[CurveVertex] = []
    edges: list[Edge] = []
    declared: set[str] = set()
    for number, tokens in _lines(text):
        keyword = tokens[0]
        if keyword == "vertex":
            if len(tokens) < 2:
                raise ParseError(number, "vertex needs a name")
            name = tokens[1]
            if name in declared:
                raise ParseError(number, f"duplicate vertex {name!r}")
            options = _options(number, tokens[2:], {"genus", "self"})
            if "self" not in options:
                raise ParseError(number, f"vertex {name!r} needs self=<int>")
            if options.get("genus", 0) < 0:
                raise ParseError(number, "genus must be non-negative")
            vertices.append(CurveVertex(name=name, genus=options.get("genus", 0), self_intersection=options["self"]))
            declared.add(name)
        elif keyword == "edge":
            if len(tokens) < 3:
                raise ParseError(number, "edge needs two vertex names")
            u, v = tokens[1], tokens[2]
            for end in (u, v):
                if end not in declared:
                    raise ParseError(number, f"edge endpoint {end!r} is not a declared vertex")
            if u == v:
                raise ParseError(number, f"self-loop on {u!r}")
            options = _options(number, tokens[3:], {"mult"})
            mult = options.get("mult", 1)
            if mult < 1:
                raise ParseError(number, "mult must be at least 1")
            edges.append(Edge(u=u, v=v, multiplicity=mult))
        else:
            raise ParseError(number, f"unknown keyword {keyword!r}")
    if not vertices:
        raise ParseError(max(1, len(text.splitlines())), "no vertices declared")
    graph = ResolutionGraph.from_parts(vertices, edges)
    logger.debug(f"Parsed graph with {graph.size} vertices and {len(graph.edges)} edges")
    return graph


def serialize_graph(graph: ResolutionGraph) -> str:
    lines = [
        f"vertex {v.name} genus={v.genus} self={v.self_intersection}"
        for v in graph.vertices
    ]
    for edge in graph.edges:
        suffix = f" mult={edge.multiplicity}" if edge.multiplicity != 1 else ""
        lines.append(f"edge {edge.u} {edge.v}{suffix}")
    return "\n".join(lines) + "\n"


def _arrow_target(number: int, tokens: Sequence[str], sources: int) -> tuple[list[str], str]:
    if len(tokens) != sources + 3 or tokens[-2] != "->":
        raise ParseError(number, f"expected {tokens[0]} {' '.join(['<curve>'] * sources)} -> <name>")
    return list(tokens[1:1 + sources]), tokens[-1]


def parse_script(text: str) -> BlowupScript:
    instructions = []
    for number, tokens in _lines(text):
        keyword = tokens[0]
        if keyword == "start":
            if len(tokens) < 2:
                raise ParseError(number, "start needs a name")
            options = _options(number, tokens[2:], {"g", "e"})
            if "e" not in options:
                raise ParseError(number, "start needs e=<int>")
            if options.get("g", 0) < 0:
                raise ParseError(number, "genus must be non-negative")
            instructions.append(Start(name=tokens[1], genus=options.get("g", 0), self_intersection=options["e"]))
        elif keyword == "blowup_on":
            (curve,), new = _arrow_target(number, tokens, 1)
            instructions.append(BlowupOn(curve=curve, new_name=new))
        elif keyword == "blowup_at":
            (c1, c2), new = _arrow_target(number, tokens, 2)
            instructions.append(BlowupAt(c1=c1, c2=c2, new_name=new))
        elif keyword == "select":
            instructions.append(Select(names=tuple(tokens[1:])))
        else:
            raise ParseError(number, f"unknown instruction {keyword!r}")
    return BlowupScript(instructions=tuple(instructions))


def serialize_script(script: BlowupScript) -> str:
    lines = []
    for step in script.instructions:
        if isinstance(step, Start):
            lines.append(f"start {step.name} g={step.genus} e={step.self_intersection}")
        elif isinstance(step, BlowupOn):
            lines.append(f"blowup_on {step.curve} -> {step.new_name}")
        elif isinstance(step, BlowupAt):
            lines.append(f"blowup_at {step.c1} {step.c2} -> {step.new_name}")
        else:
            lines.append(" ".join(("select", *step.names)))
    return "\n".join(lines) + "\n"


def to_dot(graph: ResolutionGraph) -> str:
    lines = ["graph resolution {"]
    for v in graph.vertices:
        lines.append(f'  "{v.name}" [label="{v.name}\\ng={v.genus} e={v.self_intersection}"];')
    for edge in graph.edges:
        attrs = f' [label="{edge.multiplicity}"]' if edge.multiplicity != 1 else ""
        lines.append(f'  "{edge.u}" -- "{edge.v}"{attrs};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_cycle(text: str, size: int) -> Cycle:
    """Comma separated coefficients in vertex order."""
    try:
        coefficients = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ParseError(1, f"cycle must be comma separated integers, got {text!r}") from None
    if len(coefficients) != size:
        raise ParseError(1, f"cycle has {len(coefficients)} coefficients, graph has {size} vertices")
    return Cycle(coefficients=coefficients)


def format_cycle(coefficients: Sequence[int], names: Sequence[str]) -> str:
    terms = []
    for c, name in zip(coefficients, names):
        if c == 0:
            continue
        terms.append(name if c == 1 else f"{c} {name}")
    return " + ".join(terms) if terms else "0"


def format_rationals(values: Sequence[Fraction]) -> str:
    return ", ".join(str(v) for v in values)


def report_to_json(report: SingularityReport) -> dict[str, Any]:
    return report.model_dump(mode="json", exclude_none=True)


def dump_json(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


def _yes(value: bool | None) -> str:
    if value is None:
        return "n/a"
    return "yes" if value else "no"


def report_to_text(report: SingularityReport) -> str:
    names = report.vertices
    lines = [
        f"curves: {' '.join(names)}",
        f"negative definite: {_yes(report.negative_definite)} (det(-A) = {report.determinant})",
    ]
    if report.certificate is not None:
        lines.append(f"certificate: ({format_rationals(report.certificate)})")
    if report.fundamental_cycle is not None:
        lines.append(f"fundamental cycle: {format_cycle(report.fundamental_cycle, names)}")
        lines.append(f"chi(Z_fund): {report.chi_fund}")
    if report.discrepancies is not None:
        pairs = ", ".join(f"{n}={a}" for n, a in zip(names, report.discrepancies))
        lines.append(f"discrepancies: {pairs}")
        lines.append(f"classification: {report.classification.value}")
    if report.flags is not None:
        flags = report.flags
        lines.append(
            "flags: "
            f"rational={_yes(flags.rational)} "
            f"minimally_elliptic={_yes(flags.minimally_elliptic)} "
            f"canonical={_yes(flags.canonical)} "
            f"log_terminal={_yes(flags.log_terminal)} "
            f"log_canonical={_yes(flags.log_canonical)} "
            f"numerically_gorenstein={_yes(flags.numerically_gorenstein)}"
        )
    link = report.link
    link_line = (
        f"link: rational_tree={_yes(link.rational_tree)} b1={link.first_betti} "
        f"h1(O_E)={link.h1_structure_sheaf} qhs={_yes(link.qhs_link)}"
    )
    if link.h1_bound is not None:
        link_line += f" h1_bound={link.h1_bound}"
    lines.append(link_line)
    if report.warnings:
        lines.append(f"warnings: {', '.join(report.warnings)}")
    return "\n".join(lines) + "\n"

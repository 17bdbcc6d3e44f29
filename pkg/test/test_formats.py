#!/usr/bin/env python3
"""
Tests for graph files, blowup scripts and report rendering
"""

import pytest
from hypothesis import given, settings

from graph_strategies import FIXTURES, MINUS3_STAR_MATRIX, connected_graphs, minus3_star_graph
from blowup import star_script
from classify import full_report
from errors import ParseError
from formats import (
    format_cycle,
    parse_cycle,
    parse_graph,
    parse_script,
    report_to_text,
    serialize_graph,
    serialize_script,
    to_dot,
)
from graph_model import build_matrix


def test_parse_minus3_star_fixture():
    graph = parse_graph((FIXTURES / "star_four_minus3.graph").read_text())
    assert graph == minus3_star_graph()
    assert build_matrix(graph).entries == MINUS3_STAR_MATRIX


def test_parse_defaults_and_repeated_edges():
    graph = parse_graph("vertex A self=-3\nvertex B genus=1 self=-2\nedge A B\nedge B A mult=2\n")
    assert graph.vertex("A").genus == 0
    assert graph.multiplicity("A", "B") == 3


@pytest.mark.parametrize(
    "text,line",
    [
        ("", 1),
        ("# only a comment\n", 1),
        ("vertex A self=-2\nedge A B\n", 2),
        ("vertex A self=-2\nvertex A self=-3\n", 2),
        ("vertex A genus=0\n", 1),
        ("vertex A self=x\n", 1),
        ("vertex A self=-2 colour=red\n", 1),
        ("vertex A self=-2\nvertex B self=-2\nedge A B mult=0\n", 3),
        ("vertex A self=-2\nedge A A\n", 2),
        ("curve A\n", 1),
    ],
)
def test_parse_graph_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.line == line


@given(connected_graphs(max_vertices=8))
@settings(max_examples=100, deadline=None)
def test_serialize_graph_parses_back(graph):
    assert parse_graph(serialize_graph(graph)) == graph


def test_script_text_round_trip():
    script = star_script(1, 3)
    assert parse_script(serialize_script(script)) == script


def test_parse_script_blowup_at():
    script = parse_script("start A g=0 e=0\nstart B e=0\nblowup_at A B -> E\nselect A B E\n")
    assert script.instructions[1].genus == 0
    assert script.instructions[2].c2 == "B"
    assert script.instructions[3].names == ("A", "B", "E")


@pytest.mark.parametrize(
    "text,line",
    [
        ("start A g=0\n", 1),
        ("start A e=1\nblowup_on A E\n", 2),
        ("start A e=1\nblowup_at A -> E\n", 2),
        ("start A g=-1 e=1\n", 1),
        ("explode A\n", 1),
    ],
)
def test_parse_script_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_script(text)
    assert info.value.line == line


def test_cycles_text():
    assert parse_cycle("2,1,1,1,1", 5).coefficients == (2, 1, 1, 1, 1)
    with pytest.raises(ParseError):
        parse_cycle("2,1", 5)
    with pytest.raises(ParseError):
        parse_cycle("2,a", 2)
    assert format_cycle((2, 1, 0), ["C0", "C1", "C2"]) == "2 C0 + C1"
    assert format_cycle((0, 0), ["A", "B"]) == "0"


def test_to_dot():
    dot = to_dot(parse_graph("vertex A self=-3\nvertex B genus=1 self=-1\nedge A B mult=2\n"))
    assert dot.startswith("graph resolution {")
    assert '"A" -- "B" [label="2"];' in dot
    assert "g=1 e=-1" in dot


def test_report_to_text():
    text = report_to_text(full_report(minus3_star_graph()))
    assert "fundamental cycle: 2 C0 + C1 + C2 + C3 + C4" in text
    assert "classification: NotLogCanonical" in text
    assert "h1_bound=1" in text

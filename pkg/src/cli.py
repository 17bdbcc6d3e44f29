#!/usr/bin/env python3
"""
resgraph command line

Analyse dual resolution graphs of normal surface singularities.

Exit codes: 0 success, 1 usage or parse error, 2 matrix not negative definite.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from blowup import execute, star_script
from classify import classify_discrepancies, discrepancies, full_report, is_numerically_gorenstein
from cycles import chi, computation_sequence, fundamental_cycle, pg_lower_bound
from errors import NotContractible
from exact_linalg import (
    find_certificate,
    is_negative_definite,
    leading_principal_minors,
    negate,
    verify_certificate,
)
from formats import (
    dump_json,
    format_cycle,
    format_rationals,
    parse_cycle,
    parse_graph,
    parse_script,
    report_to_json,
    report_to_text,
    serialize_graph,
    serialize_script,
    to_dot,
)
from graph_model import ResolutionGraph, build_matrix, search_star, star_graph
from settings import get_settings
from topology import first_betti, h1_structure_sheaf, is_qhs_link, is_rational_tree

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_DEFINITE = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit code 2 is reserved for non-definite input
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load_graph(path: str) -> ResolutionGraph:
    return parse_graph(_read(path))


def _emit(args: argparse.Namespace, data: dict[str, Any], text: str) -> None:
    print(dump_json(data) if args.format == "json" else text.rstrip("\n"))


def cmd_analyze(args: argparse.Namespace) -> int:
    code = EXIT_OK
    outputs: dict[str, Any] = {}
    texts: list[str] = []
    for path in args.files:
        report = full_report(_load_graph(path), max_box=args.max_box)
        if not report.negative_definite:
            code = EXIT_NOT_DEFINITE
        outputs[path] = report_to_json(report)
        header = f"== {path}\n" if len(args.files) > 1 else ""
        texts.append(header + report_to_text(report))
    if args.format == "json":
        print(dump_json(outputs[args.files[0]] if len(args.files) == 1 else outputs))
    else:
        print("\n".join(t.rstrip("\n") for t in texts))
    return code


def cmd_check_definite(args: argparse.Namespace) -> int:
    graph = _load_graph(args.file)
    matrix = build_matrix(graph)
    negative = is_negative_definite(matrix.entries)
    minors = leading_principal_minors(negate(matrix.entries))
    data: dict[str, Any] = {
        "negative_definite": negative,
        "leading_minors": [str(m) for m in minors],
    }
    text = f"negative definite: {'yes' if negative else 'no'}\nleading minors of -A: {format_rationals(minors)}"
    if args.certificate:
        found = find_certificate(negate(matrix.entries))
        if isinstance(found, list):
            data["certificate"] = [str(x) for x in found]
            data["certificate_valid"] = verify_certificate(negate(matrix.entries), found)
            text += f"\ncertificate: ({format_rationals(found)})"
        else:
            data["certificate_error"] = found.reason.value
            text += f"\ncertificate: not found ({found.reason.value})"
    _emit(args, data, text)
    return EXIT_OK if negative else EXIT_NOT_DEFINITE


def cmd_fundamental_cycle(args: argparse.Namespace) -> int:
    graph = _load_graph(args.file)
    z = fundamental_cycle(graph)
    _emit(args, {"fundamental_cycle": list(z.coefficients)}, format_cycle(z.coefficients, graph.names))
    return EXIT_OK


def cmd_chi(args: argparse.Namespace) -> int:
    graph = _load_graph(args.file)
    z = parse_cycle(args.cycle, graph.size)
    value = chi(z, graph)
    data: dict[str, Any] = {"cycle": list(z.coefficients), "chi": value}
    text = f"chi({format_cycle(z.coefficients, graph.names)}) = {value}"
    if not is_negative_definite(build_matrix(graph).entries):
        data["negative_definite"] = False
        _emit(args, data, text + "\nnot negative definite: no p_g bound")
        return EXIT_NOT_DEFINITE
    if z.is_nonzero() and computation_sequence(z, graph) is not None:
        bound = pg_lower_bound(graph, z)
        data["h1_lower_bound"] = bound
        text += f"\nh1(O_Z) = {bound} (lower bound for p_g)"
    _emit(args, data, text)
    return EXIT_OK


def cmd_discrepancies(args: argparse.Namespace) -> int:
    graph = _load_graph(args.file)
    a = discrepancies(graph)
    data = {
        "discrepancies": [str(x) for x in a.values],
        "numerically_gorenstein": is_numerically_gorenstein(a),
    }
    text = ", ".join(f"{n}={x}" for n, x in zip(graph.names, a.values))
    _emit(args, data, text)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    graph = _load_graph(args.file)
    a = discrepancies(graph)
    result = classify_discrepancies(a)
    data = result.model_dump(mode="json")
    data["min_discrepancy"] = str(a.minimum)
    data["numerically_gorenstein"] = is_numerically_gorenstein(a)
    _emit(args, data, f"{result.label.value} (min discrepancy {a.minimum})")
    return EXIT_OK


def cmd_link(args: argparse.Namespace) -> int:
    graph = _load_graph(args.file)
    data: dict[str, Any] = {
        "rational_tree": is_rational_tree(graph),
        "first_betti": first_betti(graph),
        "h1_structure_sheaf": h1_structure_sheaf(graph),
    }
    code = EXIT_OK
    try:
        data["qhs_link"] = is_qhs_link(graph)
    except NotContractible:
        code = EXIT_NOT_DEFINITE
    text = "\n".join(f"{key}: {value}" for key, value in data.items())
    _emit(args, data, text)
    return code


def cmd_blowup(args: argparse.Namespace) -> int:
    config, graph = execute(parse_script(_read(args.script)))
    if args.emit_graph:
        print(serialize_graph(graph).rstrip("\n"))
        return EXIT_OK
    matrix = build_matrix(graph)
    data = {
        "curves": [c.model_dump() for c in config.curves],
        "selected": graph.names,
        "matrix": matrix.rows(),
    }
    text = "\n".join(
        [f"{c.name}: g={c.genus} e={c.self_intersection}" for c in config.curves]
        + [f"selected: {' '.join(graph.names)}"]
        + [" ".join(f"{x:>3}" for x in row) for row in matrix.rows()]
    )
    _emit(args, data, text)
    return EXIT_OK


def cmd_search_star(args: argparse.Namespace) -> int:
    max_d = args.max_d if args.max_d is not None else get_settings().search_star_max_d
    result = search_star(args.genus, max_d)
    if result is None:
        data = {"genus": args.genus, "max_d": max_d, "found": False}
        _emit(args, data, f"no d <= {max_d} makes the genus {args.genus} star negative definite")
        return EXIT_NOT_DEFINITE
    text = (
        f"genus {result.genus}: minimal d = {result.minimal_d}, certificate bound d = {result.certificate_bound}\n"
        f"certificate v = ({', '.join(map(str, result.certificate))}) "
        f"{'passes' if result.certificate_valid_at_minimal_d else 'fails'} at d = {result.minimal_d}\n"
        f"negative definite at d = {result.certificate_bound}: {'yes' if result.bound_negative_definite else 'no'}"
    )
    _emit(args, result.model_dump(), text)
    return EXIT_OK


def cmd_gen_star(args: argparse.Namespace) -> int:
    if args.script:
        print(serialize_script(star_script(args.genus, args.d)).rstrip("\n"))
    else:
        print(serialize_graph(star_graph(args.genus, args.d)).rstrip("\n"))
    return EXIT_OK


def cmd_dot(args: argparse.Namespace) -> int:
    print(to_dot(_load_graph(args.file)).rstrip("\n"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=None)

    parser = _Parser(prog="resgraph", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("--format", dest="global_format", choices=("text", "json"), default=None, help="output format")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, handler: Callable[[argparse.Namespace], int], help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("analyze", cmd_analyze, "full singularity report")
    p.add_argument("files", nargs="+")
    p.add_argument("--max-box", type=int, default=None, help="bound for the minimal ellipticity enumeration")

    p = add("check-definite", cmd_check_definite, "negative definiteness of the intersection matrix")
    p.add_argument("file")
    p.add_argument("--certificate", action="store_true", help="also compute a positive certificate vector")

    p = add("fundamental-cycle", cmd_fundamental_cycle, "Laufer's fundamental cycle")
    p.add_argument("file")

    p = add("chi", cmd_chi, "Euler characteristic of a cycle")
    p.add_argument("file")
    p.add_argument("--cycle", required=True, help="comma separated coefficients in vertex order")

    p = add("discrepancies", cmd_discrepancies, "discrepancies of the exceptional curves")
    p.add_argument("file")

    p = add("classify", cmd_classify, "canonical / log terminal / log canonical")
    p.add_argument("file")

    p = add("link", cmd_link, "dual graph topology and the link")
    p.add_argument("file")

    p = add("blowup", cmd_blowup, "run a blowup script")
    p.add_argument("script")
    p.add_argument("--emit-graph", action="store_true", help="print the selected curves as a graph file")

    p = add("search-star", cmd_search_star, "smallest d making the genus-g star negative definite")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--max-d", type=int, default=None)

    p = add("gen-star", cmd_gen_star, "print the genus-g, degree-d star graph")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--script", action="store_true", help="print the blowup script instead")

    p = add("dot", cmd_dot, "Graphviz export")
    p.add_argument("file")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    # subcommand position wins over the global one
    args.format = args.format or args.global_format or "text"

    try:
        level = logging.DEBUG if args.verbose else getattr(logging, get_settings().log_level, logging.WARNING)
        logging.basicConfig(level=level)
        return args.handler(args)
    except NotContractible as e:
        print(f"not negative definite: {e}", file=sys.stderr)
        return EXIT_NOT_DEFINITE
    except (UsageError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

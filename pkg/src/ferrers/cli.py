"""Command line front end: one verb per toolkit operation.

Graphs are read from a file argument or stdin in the neighborhood-list text
format; a "biadj" first line or the --biadj flag switches to 0/1 matrix rows.
Every verb honors --format json|csv|plain.  Exit codes: 0 on success, 1 when
a theorem check fails (only reachable through --fault-inject), 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from fractions import Fraction

from .errors import FerrersError, IdentityViolation, TheoremViolation
from .graphs import (
    PartitionSpec,
    enumerate_connected,
    ferrers_from_partition,
    is_ferrers,
    parse_graph,
    write_graph,
)
from .linalg import rat_str
from .spectral import majorization_report, overlap_defect, overlap_trace, report_dict
from .trees import ferrers_invariant, tau_matrix_tree
from .verify import (
    corollary_check,
    record_dict,
    summary_dict,
    verify_graph,
    verify_range,
)


def _plain_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return rat_str(value)
    if isinstance(value, (list, tuple)):
        return " ".join(_plain_value(v) for v in value)
    return str(value)


def _json_value(value):
    if isinstance(value, Fraction):
        return rat_str(value)
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value


def _csv_value(value) -> str:
    if isinstance(value, (list, tuple)):
        return ";".join(_csv_value(v) for v in value)
    return _plain_value(value)


def emit(payload: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        print(json.dumps({k: _json_value(v) for k, v in payload.items()}), file=out)
    elif fmt == "csv":
        writer = csv.writer(out)
        writer.writerow(payload.keys())
        writer.writerow([_csv_value(v) for v in payload.values()])
    else:
        if len(payload) == 1:
            print(_plain_value(next(iter(payload.values()))), file=out)
        else:
            for key, value in payload.items():
                print(f"{key}: {_plain_value(value)}", file=out)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_graph(args):
    return parse_graph(_read_text(args.path), biadj=args.biadj)


def _parse_subset(spec: str) -> int:
    subset = 0
    for field in spec.split(","):
        field = field.strip()
        if not field:
            raise ValueError(f"empty index in subset {spec!r}")
        subset |= 1 << int(field)
    return subset


def _cmd_tau(args) -> int:
    emit({"tau": tau_matrix_tree(_load_graph(args))}, args.format)
    return 0


def _cmd_invariant(args) -> int:
    emit({"F": ferrers_invariant(_load_graph(args))}, args.format)
    return 0


def _cmd_check(args) -> int:
    rec = verify_graph(_load_graph(args), args.tol, fault_inject=args.fault_inject)
    emit(record_dict(rec), args.format)
    consistent = (
        rec.inequality_ok
        and rec.equality == rec.ferrers
        and rec.reduction_ok
        and rec.majorizes
    )
    return 0 if consistent else 1


def _cmd_spectral(args) -> int:
    report = majorization_report(_load_graph(args), args.tol)
    emit(report_dict(report), args.format)
    return 0


def _cmd_overlap(args) -> int:
    I = _parse_subset(args.I)
    T = _parse_subset(args.T)
    trace = overlap_trace(I, T, args.m, verify=True)
    emit({"trace": trace, "defect": overlap_defect(I, T)}, args.format)
    return 0


def _cmd_ferrers_gen(args) -> int:
    heights = tuple(int(h) for h in args.heights.split(","))
    g = ferrers_from_partition(PartitionSpec(heights))
    emit({"graph": write_graph(g)}, args.format)
    return 0


def _cmd_ferrers_detect(args) -> int:
    emit({"ferrers": is_ferrers(_load_graph(args))}, args.format)
    return 0


def _cmd_enumerate(args) -> int:
    for g in enumerate_connected(args.m, args.n, cap=args.cap, dedupe=args.dedupe):
        emit({"graph": write_graph(g)}, args.format)
    return 0


def _cmd_verify(args) -> int:
    stream = None
    if args.format == "json":

        def stream(rec):
            print(json.dumps(rec))

    summary = verify_range(
        args.m_max,
        args.n_max,
        cap=args.cap,
        tol=args.tol,
        workers=args.workers,
        fault_inject=args.fault_inject,
        emit=stream,
    )
    emit(summary_dict(summary), args.format)
    return 0


def _cmd_corollary(args) -> int:
    lines = _read_text(args.path).splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if len(lines) < 2:
        raise ValueError("expected a graph followed by one line of weights")
    weights = [Fraction(field) for field in lines[-1].split()]
    g = parse_graph("\n".join(lines[:-1]) + "\n", biadj=args.biadj)
    ok = corollary_check(g, weights, cap=args.cap)
    emit({"ok": ok}, args.format)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "csv", "plain"), default="json", help="output format"
    )
    common.add_argument("--tol", type=float, default=1e-9, help="floating comparison tolerance")
    common.add_argument("--cap", type=int, default=None, help="enumeration / brute-force cap")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
    common.add_argument(
        "--fault-inject",
        action="store_true",
        help="corrupt the computed tree count by one (testing only)",
    )

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("path", nargs="?", default="-", help="graph file, or - for stdin")
    graph_in.add_argument(
        "--biadj", action="store_true", help="read headerless 0/1 matrix rows"
    )

    parser = argparse.ArgumentParser(
        prog="ferrers",
        description="Exact spanning-tree counts and degree-product bounds for bipartite graphs.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    sub.add_parser("tau", parents=[common, graph_in], help="spanning-tree count").set_defaults(
        handler=_cmd_tau
    )
    sub.add_parser(
        "invariant", parents=[common, graph_in], help="degree product over m*n"
    ).set_defaults(handler=_cmd_invariant)
    sub.add_parser(
        "check", parents=[common, graph_in], help="full verification record for one graph"
    ).set_defaults(handler=_cmd_check)
    sub.add_parser(
        "spectrum", parents=[common, graph_in], help="eigenvalues and majorization report of M"
    ).set_defaults(handler=_cmd_spectral)
    sub.add_parser(
        "majorize", parents=[common, graph_in], help="majorization report of M"
    ).set_defaults(handler=_cmd_spectral)

    overlap = sub.add_parser(
        "overlap", parents=[common], help="projection overlap trace and defect"
    )
    overlap.add_argument("I", help="comma-separated x-indices, e.g. 0,1")
    overlap.add_argument("T", help="comma-separated x-indices, e.g. 1,2")
    overlap.add_argument("m", type=int, help="size of the ground set X")
    overlap.set_defaults(handler=_cmd_overlap)

    gen = sub.add_parser(
        "ferrers-gen", parents=[common], help="staircase graph from column heights"
    )
    gen.add_argument("heights", help="weakly decreasing heights, e.g. 3,2,1")
    gen.set_defaults(handler=_cmd_ferrers_gen)

    sub.add_parser(
        "ferrers-detect", parents=[common, graph_in], help="test the nested-neighborhood shape"
    ).set_defaults(handler=_cmd_ferrers_detect)

    enum = sub.add_parser(
        "enumerate", parents=[common], help="stream all connected graphs on labeled parts"
    )
    enum.add_argument("m", type=int)
    enum.add_argument("n", type=int)
    enum.add_argument(
        "--dedupe", action="store_true", help="one representative per permutation class"
    )
    enum.set_defaults(handler=_cmd_enumerate)

    ver = sub.add_parser(
        "verify", parents=[common], help="exhaustive campaign over a rectangle of part sizes"
    )
    ver.add_argument("m_max", type=int)
    ver.add_argument("n_max", type=int)
    ver.add_argument("--workers", type=int, default=None, help="worker processes")
    ver.set_defaults(handler=_cmd_verify)

    sub.add_parser(
        "corollary",
        parents=[common, graph_in],
        help="weighted bound at the weights on the last input line",
    ).set_defaults(handler=_cmd_corollary)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    if args.seed is not None:
        random.seed(args.seed)
    try:
        return args.handler(args)
    except (TheoremViolation, IdentityViolation) as exc:
        print(f"theorem check failed: {exc}", file=sys.stderr)
        return 1
    except (FerrersError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line surface: ``compute``, ``family``, ``scan`` and ``verify``.

Exit codes: 0 when everything passes, 1 when a counterexample (or a closed
form mismatch) is found, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Iterator, Sequence

from . import families
from .enumeration import (
    MAX_BUILTIN_N,
    EnumerationError,
    Graph6StreamError,
    GraphFilter,
    ScanError,
    builtin_enumerate,
    iter_graph6_records,
    scan,
)
from .graph_core import (
    DisconnectedGraphError,
    EdgeListError,
    Graph,
    Graph6Error,
    encode_graph6,
    parse_edge_list,
    parse_graph6,
)
from .invariants import eta, eta_star_q4, full_report
from .verifier import FAIL, REGISTRY, UnknownCheckError, get_check

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="szeged-wiener", description="Exact Szeged-Wiener difference engine and theorem checker.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_io(p, with_out=True):
        p.add_argument("--in", dest="source", default="-", help="input file, '-' for stdin (default)")
        p.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
        if with_out:
            p.add_argument("--out", choices=("json", "csv"), default="json")

    p = sub.add_parser("compute", help="invariant report per input graph")
    add_io(p)

    p = sub.add_parser("family", help="build a family member, optionally with its closed-form prediction")
    p.add_argument("spec", help="knt:n,t | cycle:k | ctrees:k:s1,...,sk | complete:n")
    p.add_argument("--predict", action="store_true", help="report predicted and measured eta / 4*eta*")

    p = sub.add_parser("scan", help="run a check over a graph stream")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", help=f"builtin enumeration order N or range A..B (N <= {MAX_BUILTIN_N})")
    src.add_argument("--in", dest="source", help="graph6 file, '-' for stdin")
    p.add_argument("--check", required=True)
    p.add_argument("--filter", default="", help="comma list: connected,2connected,bipartite,noncomplete,girth>=K")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--chunk-size", type=int, default=2000)
    p.add_argument("--expected-count", type=int, default=None)
    p.add_argument("--lenient", action="store_true", help="skip malformed graph6 lines instead of aborting")
    p.add_argument("--relaxed", action="store_true", help="conjecture4: drop the n >= 10 clause")
    p.add_argument("--out", choices=("json", "csv"), default="json")
    p.add_argument("--progress", action="store_true")

    p = sub.add_parser("verify", help="per-graph check outcomes")
    p.add_argument("--check", required=True)
    add_io(p)
    p.add_argument("--relaxed", action="store_true")
    return parser


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    with open(source) as fh:
        return fh.read()


def _read_graphs(source: str, fmt: str) -> Iterator[tuple[str, Graph]]:
    if fmt == "edgelist":
        g = parse_edge_list(_read_text(source))
        yield encode_graph6(g).decode("ascii"), g
        return
    lines = sys.stdin.buffer if source == "-" else source
    for lineno, record in iter_graph6_records(lines):
        try:
            yield record.decode("ascii"), parse_graph6(record)
        except Graph6Error as exc:
            raise Graph6StreamError(lineno, exc) from exc


def _orders(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..")
        orders = list(range(int(lo), int(hi) + 1))
    else:
        orders = [int(text)]
    if not orders or orders[0] < 1 or orders[-1] > MAX_BUILTIN_N:
        raise EnumerationError(f"--n must lie in 1..{MAX_BUILTIN_N}; use --in with an external stream beyond")
    return orders


def _emit_csv(rows: list[dict], columns: Sequence[str], out) -> None:
    writer = csv.DictWriter(out, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def _cmd_compute(args, out) -> int:
    rows = []
    for label, g in _read_graphs(args.source, args.format):
        record = {"graph6": label, **full_report(g).to_dict()}
        rows.append(record)
        if args.out == "json":
            print(json.dumps(record), file=out)
    if args.out == "csv":
        _emit_csv(rows, ("graph6", "n", "m", "W", "Sz", "Sz4", "eta", "eta4"), out)
    return EXIT_OK


def predict(spec: families.FamilySpec) -> dict:
    """Closed-form eta and 4*eta* for a family member, where one is known."""
    kind, p = spec.kind, spec.params
    if kind == "complete":
        return {"eta": 0}
    if kind == "knt":
        n, t = p
        if n >= 4 and t in (2, n - 2):
            return {"eta": families.eta_knt_special(n, t)}
        return {}
    sizes = spec.sizes if kind == "ctrees" else (1,) * p[0]
    k = len(sizes)
    if k == 5:
        return {"eta": families.eta_c5_trees(sizes)}
    if k == 4:
        value = families.eta_c4_trees(sizes)
        # bipartite: eta* = eta
        return {"eta": value, "eta4": 4 * value}
    if k == 3:
        return {"eta": 0, "eta4": families.eta_star_c3_trees_q4(sizes)}
    return {}


def _cmd_family(args, out) -> int:
    spec = families.FamilySpec.parse(args.spec)
    g = families.build(spec)
    record: dict = {"spec": str(spec), "graph6": encode_graph6(g).decode("ascii"), "n": g.n, "m": g.m}
    status = EXIT_OK
    if args.predict:
        predicted = predict(spec)
        measured = {"eta": eta(g), "eta4": eta_star_q4(g)}
        record["predicted"] = predicted or None
        record["measured"] = measured
        agree = all(measured[k] == v for k, v in predicted.items())
        record["agree"] = agree if predicted else None
        if not agree:
            status = EXIT_COUNTEREXAMPLE
    print(record["graph6"], file=out)
    print(json.dumps(record), file=out)
    return status


def _resolve_check(args) -> str:
    """``--relaxed`` selects the relaxed registry entry of conjecture4."""
    if not args.relaxed:
        return args.check
    if args.check not in ("conjecture4", "conjecture4_relaxed"):
        raise _UsageError("--relaxed only applies to --check conjecture4")
    return "conjecture4_relaxed"


def _cmd_scan(args, out) -> int:
    args.check = _resolve_check(args)
    get_check(args.check)
    options: dict = {}
    if args.n is not None:
        graph_filter = GraphFilter.parse(args.filter, connected=True)
        stream = (g for n in _orders(args.n) for g in builtin_enumerate(n, graph_filter))
    else:
        graph_filter = GraphFilter.parse(args.filter) if args.filter else None
        source = sys.stdin.buffer if args.source == "-" else args.source
        if graph_filter is not None:
            stream = (g for _, g in _filtered(source, graph_filter, args.lenient))
        else:
            stream = source
    report = scan(
        stream,
        args.check,
        workers=args.workers,
        chunk_size=args.chunk_size,
        lenient=args.lenient,
        expected_count=args.expected_count,
        options=options,
        progress=args.progress,
    )
    if args.progress:
        print(file=sys.stderr)
    if args.out == "json":
        print(json.dumps(report.to_dict(), sort_keys=True), file=out)
    else:
        rows = [
            {"graph6": g6, "check": args.check, "status": FAIL, "eta": obs.get("eta"), "bound": obs.get("bound")}
            for g6, obs in report.counterexamples
        ]
        _emit_csv(rows, ("graph6", "check", "status", "eta", "bound"), out)
    if report.count_verified is False:
        print(
            f"error: stream holds {report.total + report.skipped} records, expected {report.expected_count}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    return EXIT_COUNTEREXAMPLE if report.failures else EXIT_OK


def _filtered(source, graph_filter: GraphFilter, lenient: bool):
    for lineno, record in iter_graph6_records(source):
        try:
            g = parse_graph6(record)
        except Graph6Error as exc:
            if lenient:
                continue
            raise Graph6StreamError(lineno, exc) from exc
        if graph_filter(g):
            yield lineno, g


def _cmd_verify(args, out) -> int:
    check = get_check(_resolve_check(args))
    rows = []
    failed = False
    for label, g in _read_graphs(args.source, args.format):
        outcome = check(g)
        failed |= outcome.status == FAIL
        record = {"graph6": label, **outcome.to_dict()}
        rows.append({**record, "eta": outcome.observed.get("eta"), "bound": outcome.observed.get("bound")})
        if args.out == "json":
            print(json.dumps(record), file=out)
    if args.out == "csv":
        _emit_csv(rows, ("graph6", "check", "status", "eta", "bound"), out)
    return EXIT_COUNTEREXAMPLE if failed else EXIT_OK


_COMMANDS = {"compute": _cmd_compute, "family": _cmd_family, "scan": _cmd_scan, "verify": _cmd_verify}


def run_cli(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args, out)
    except UnknownCheckError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except (
        _UsageError,
        Graph6Error,
        Graph6StreamError,
        EdgeListError,
        EnumerationError,
        families.FamilySpecError,
        DisconnectedGraphError,
        ScanError,
        OSError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())


__all__ = ["run_cli", "main", "predict", "REGISTRY"]

"""Command-line surface.

Graph arguments accept inline graph6, ``@path`` for a file (graph6 or the
edge-list format, detected by content), or ``-`` for standard input.  Every
command writes one JSON document to stdout; ``--csv PATH`` additionally
writes the tabular form where one exists.  Exit codes: 0 success, 1 usage or
validation error, 2 internal-consistency error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .blowup import blow_up, exponent_r
from .cache import cache_lookup_or_compute, default_store_path
from .embeddings import contains_copy, count_copies
from .errors import InternalConsistencyError, TuranTreeError, ValidationError
from .extremal import brute_force_ex, growth_report, lower_bound_construction
from .graphs import Graph, parse_graph, serialize_graph
from .pipeline import run_pipeline
from .proof import ProcedureConfig
from .reports import report_emit, to_jsonable


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _load_graph(spec: str) -> Graph:
    if spec == "-":
        text = sys.stdin.read()
    elif spec.startswith("@"):
        try:
            with open(spec[1:]) as fh:
                text = fh.read()
        except OSError as exc:
            raise ValidationError(f"cannot read {spec[1:]!r}: {exc}")
    else:
        text = spec
    stripped = text.strip()
    if "\n" in stripped or " " in stripped or stripped.startswith("n="):
        return parse_graph(text, "edge-list")
    return parse_graph(stripped, "graph6")


def _int_list(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    return [int(x) for x in text.replace(",", " ").split()]


def _emit(doc, csv_path: Optional[str]) -> None:
    sys.stdout.write(report_emit(doc, "json"))
    if csv_path:
        csv_text = report_emit(doc, "csv")
        if csv_path == "-":
            sys.stdout.write(csv_text)
        else:
            with open(csv_path, "w") as fh:
                fh.write(csv_text)


def _config_from_args(args, h: int, e: int, t: int) -> ProcedureConfig:
    if args.mode == "paper":
        return ProcedureConfig.paper_scale(h, e, t)
    constants = tuple(_int_list(args.constants)) if args.constants else \
        tuple(range(2, 2 + e))
    return ProcedureConfig(constants=constants, t=t, mode="desk-scale")


def _build_parser() -> _Parser:
    p = _Parser(prog="turantree",
                description="Growth exponents and extremal constructions for "
                            "copy counting under a forbidden tree.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("exponent", help="compute the growth exponent r(H,T)")
    sp.add_argument("--H", required=True)
    sp.add_argument("--T", required=True)

    sp = sub.add_parser("blowup", help="build a (U,t)-blow-up of H")
    sp.add_argument("--H", required=True)
    sp.add_argument("--U", default="", help="comma-separated vertex list")
    sp.add_argument("--t", type=int, required=True)

    sp = sub.add_parser("count", help="count pattern copies in a host")
    sp.add_argument("--G", required=True)
    sp.add_argument("--H", required=True)

    sp = sub.add_parser("contains", help="test containment and show one embedding")
    sp.add_argument("--G", required=True)
    sp.add_argument("--H", required=True)

    sp = sub.add_parser("construct", help="build the extremal construction at n")
    sp.add_argument("--H", required=True)
    sp.add_argument("--T", required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser("brute-force", help="exact maximum over all n-vertex graphs")
    sp.add_argument("--H", required=True)
    sp.add_argument("--T", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--source", choices=["internal", "stream"], default="internal")

    sp = sub.add_parser("growth", help="construction counts and slopes across sizes")
    sp.add_argument("--H", required=True)
    sp.add_argument("--T", required=True)
    sp.add_argument("--ns", required=True, help="comma-separated sizes")
    sp.add_argument("--csv")

    sp = sub.add_parser("pipeline", help="run the refinement analysis on a host")
    sp.add_argument("--G", required=True)
    sp.add_argument("--H", required=True)
    sp.add_argument("--T", required=True)
    sp.add_argument("--mode", choices=["paper", "desk"], default="paper")
    sp.add_argument("--constants", help="comma-separated desk-scale constants")
    sp.add_argument("--trace", help="write the refinement trace as JSON lines")

    sp = sub.add_parser("cache", help="cached exponent lookup (computes on miss)")
    sp.add_argument("--H", required=True)
    sp.add_argument("--T", required=True)
    sp.add_argument("--store", default=None,
                    help=f"JSON-lines store (default {default_store_path()})")
    return p


def cli_dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "exponent":
            _emit(exponent_r(_load_graph(args.H), _load_graph(args.T)), None)
        elif args.command == "blowup":
            _emit(blow_up(_load_graph(args.H), _int_list(args.U), args.t), None)
        elif args.command == "count":
            c = count_copies(_load_graph(args.G), _load_graph(args.H))
            _emit({"copies": str(c)}, None)
        elif args.command == "contains":
            emb = contains_copy(_load_graph(args.G), _load_graph(args.H))
            _emit({"contains": emb is not None,
                   "embedding": None if emb is None else list(emb.map)}, None)
        elif args.command == "construct":
            H, T = _load_graph(args.H), _load_graph(args.T)
            g = lower_bound_construction(H, T, args.n)
            _emit({"graph6": serialize_graph(g), "n": g.n,
                   "count": str(count_copies(g, H)),
                   "t_free": contains_copy(g, T) is None}, None)
        elif args.command == "brute-force":
            stream = sys.stdin if args.source == "stream" else None
            _emit(brute_force_ex(args.n, _load_graph(args.H), _load_graph(args.T),
                                 source=args.source, stream=stream), None)
        elif args.command == "growth":
            _emit(growth_report(_load_graph(args.H), _load_graph(args.T),
                                _int_list(args.ns)), args.csv)
        elif args.command == "pipeline":
            G, H, T = _load_graph(args.G), _load_graph(args.H), _load_graph(args.T)
            config = _config_from_args(args, H.n, H.edge_count, T.n)
            report = run_pipeline(G, H, T, config)
            if args.trace:
                with open(args.trace, "w") as fh:
                    import json as _json
                    for step in report.trace:
                        fh.write(_json.dumps(to_jsonable(step), sort_keys=True) + "\n")
            _emit(report, None)
        elif args.command == "cache":
            profile = cache_lookup_or_compute(_load_graph(args.H),
                                              _load_graph(args.T), args.store)
            _emit(profile, None)
        else:
            raise ValidationError(f"unknown command {args.command!r}")
    except InternalConsistencyError as exc:
        print(f"internal-consistency error: {exc}", file=sys.stderr)
        return 2
    except TuranTreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    raise SystemExit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()

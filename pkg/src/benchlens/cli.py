"""Command-line front door: parse result files, convert plans, compare runs,
and launch the API service.

Exit codes: 0 success, 1 input/parse/IO failure, 2 usage error.  Every
failure prints one line to stderr with the machine-greppable prefix
``error: <Code>:``.  JSON written here uses the same schemas as the HTTP
API, so scripts and the dashboard consume one format.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .analytics import build_comparison
from .errors import BenchlensError, MetricUnavailable
from .explain import Dialect, parse_plan
from .normalize import (
    PlanMetric,
    Terminology,
    hierarchy_dict,
    metric_percentages,
    normalize,
    render_terminology,
)
from .session import Session
from .server import make_server
from .sysbench import parse_sysbench
from .tpch import parse_tpch

ENV_PORT = "BENCHLENS_PORT"
ENV_SNAPSHOT = "BENCHLENS_SNAPSHOT"
DEFAULT_PORT = 8328


def _fail(code: str, message: str) -> int:
    print(f"error: {code}: {message}", file=sys.stderr)
    return 1


def _read_file(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(doc: object, out: str | None) -> None:
    text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_parse(args: argparse.Namespace) -> int:
    try:
        text = _read_file(args.input)
        run = parse_sysbench(text) if args.kind == "sysbench" else parse_tpch(text)
        _emit(run.to_dict(), args.out)
        return 0
    except OSError as exc:
        return _fail("IOError", str(exc))
    except BenchlensError as exc:
        return _fail(exc.code, str(exc))


def cmd_plan(args: argparse.Namespace) -> int:
    try:
        text = _read_file(args.input)
        dialect = None if args.dialect == "auto" else Dialect(args.dialect)
        raw, dialect = parse_plan(text, dialect)
        tree = render_terminology(normalize(raw, dialect), Terminology(args.terminology))
        try:
            percentages = [
                {"label": label, "pct": pct}
                for label, pct in metric_percentages(tree, PlanMetric(args.metric))
            ]
        except MetricUnavailable:
            percentages = None
        _emit({"tree": hierarchy_dict(tree), "percentages": percentages}, args.out)
        return 0
    except OSError as exc:
        return _fail("IOError", str(exc))
    except BenchlensError as exc:
        return _fail(exc.code, str(exc))


def cmd_compare(args: argparse.Namespace) -> int:
    try:
        runs = []
        for path in args.inputs:
            runs.append((Path(path).stem, parse_tpch(_read_file(path))))
        _emit(build_comparison(runs).to_dict(), args.out)
        return 0
    except OSError as exc:
        return _fail("IOError", str(exc))
    except BenchlensError as exc:
        return _fail(exc.code, str(exc))


def cmd_serve(args: argparse.Namespace) -> int:
    session = Session()
    snapshot = args.snapshot or os.environ.get(ENV_SNAPSHOT)
    if snapshot:
        try:
            loaded = session.load_snapshot(snapshot)
            if loaded:
                print(f"restored {loaded} run(s) from {snapshot}", file=sys.stderr)
        except (OSError, ValueError, KeyError) as exc:
            return _fail("IOError", f"cannot load snapshot {snapshot}: {exc}")

    port = args.port if args.port is not None else int(os.environ.get(ENV_PORT, DEFAULT_PORT))
    try:
        server = make_server(port, session, args.static, host=args.host)
    except OSError as exc:
        return _fail("IOError", f"cannot bind port {port}: {exc}")

    print(f"serving on http://{args.host}:{server.server_address[1]}/", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
        if snapshot:
            session.save_snapshot(snapshot)
            print(f"snapshot saved to {snapshot}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="benchlens",
        description="Parse DBMS benchmark results and EXPLAIN plans; serve the exploration API.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a sysbench or TPC-H result file to JSON")
    p.add_argument("--kind", choices=["sysbench", "tpch"], required=True)
    p.add_argument("input")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("plan", help="convert an EXPLAIN capture to the hierarchy format")
    p.add_argument("input")
    p.add_argument("--dialect", choices=["auto", "postgres", "mysql", "mariadb"], default="auto")
    p.add_argument(
        "--terminology", choices=["canonical", "postgres", "mysql", "mariadb"], default="canonical"
    )
    p.add_argument("--metric", choices=["cost", "rows"], default="cost")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("compare", help="align per-query durations across TPC-H result files")
    p.add_argument("--kind", choices=["tpch"], default="tpch")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("serve", help="serve the v1 API (and the dashboard with --static)")
    p.add_argument("--port", type=int, default=None, help=f"listen port (env {ENV_PORT}, default {DEFAULT_PORT})")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--snapshot", default=None, help=f"registry snapshot path (env {ENV_SNAPSHOT})")
    p.add_argument("--static", default=None, help="directory with the dashboard bundle, served at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

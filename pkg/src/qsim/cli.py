"""Command line interface.

A data workspace directory (default ./qsim-data) holds one CSV per table;
every invocation boots an engine and loads whatever the workspace contains.
`load` validates a CSV through the engine and then copies it into the
workspace so later invocations and the server see it.

Exit codes: 0 success, 1 usage or environment problem, 2 query error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from .engine import ESTIMATORS, Engine
from .errors import QsimError, QueryError


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; this CLI reserves 2 for query errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="qsim",
                             description="Relational query engine simulator.")
    parser.add_argument("--data", default="./qsim-data", metavar="DIR",
                        help="workspace directory of CSV tables (default %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p_load = sub.add_parser("load", help="validate a CSV file and add it to the workspace")
    p_load.add_argument("file", help="path to a CSV file with name:type headers")
    p_load.add_argument("--name", help="table name (default: file stem)")
    p_load.add_argument("--replace", action="store_true",
                        help="overwrite an existing table of the same name")
    p_load.set_defaults(func=cmd_load)

    p_query = sub.add_parser("query", help="run one query against the workspace")
    p_query.add_argument("sql", help="query text")
    p_query.add_argument("--rules", metavar="LIST",
                         help="comma-separated rule names (default: all registered rules)")
    p_query.add_argument("--no-rules", action="store_true",
                         help="skip optimization entirely")
    p_query.add_argument("--estimator", default="builtin", choices=ESTIMATORS,
                         help="cost estimator (default %(default)s)")
    p_query.add_argument("--format", default="table", choices=("table", "json"),
                         dest="fmt", help="output format (default %(default)s)")
    p_query.add_argument("--plans", action="store_true",
                         help="also print the initial and optimized plan trees")
    p_query.set_defaults(func=cmd_query)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--ui", metavar="DIR",
                         help="directory of web UI files to serve at / "
                              "(default: bundled UI if present)")
    p_serve.set_defaults(func=cmd_serve)

    p_repl = sub.add_parser("repl", help="interactive query loop")
    p_repl.set_defaults(func=cmd_repl)

    return parser


def _boot(args) -> Engine:
    engine = Engine()
    data_dir = Path(args.data)
    if data_dir.is_dir():
        for path in sorted(data_dir.glob("*.csv")):
            engine.load_table(path.stem.lower(), path.read_text(), replace=True)
    return engine


def cmd_load(args) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        print(f"qsim: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return 1
    engine = _boot(args)
    name = (args.name or Path(args.file).stem).lower()
    info = engine.load_table(name, text, replace=args.replace)
    data_dir = Path(args.data)
    data_dir.mkdir(parents=True, exist_ok=True)
    (data_dir / f"{name}.csv").write_text(text)
    cols = ", ".join(f"{c['name']}:{c['type']}" for c in info["columns"])
    print(f"loaded {info['name']} ({info['rows']} rows; {cols})")
    return 0


def _rule_names(args, engine: Engine) -> list[str]:
    if args.no_rules:
        return []
    if args.rules is not None:
        return [r.strip() for r in args.rules.split(",") if r.strip()]
    return engine.default_rule_names()


def cmd_query(args) -> int:
    engine = _boot(args)
    result = engine.run_query(args.sql, rules=_rule_names(args, engine),
                              estimator=args.estimator)
    if args.fmt == "json":
        print(json.dumps(result, indent=2))
        return 0
    print(format_table(result["columns"], result["rows"]))
    print(f"{len(result['rows'])} rows in {result['elapsed_ms']} ms; "
          f"cost {result['cost_initial']} -> {result['cost_optimized']} "
          f"({len(result['applied_rules'])} rewrites)")
    if result.get("warning"):
        print(f"warning: {result['warning']}")
    if args.plans:
        print("\ninitial plan:")
        print(format_plan(result["initial_plan"]))
        print("\noptimized plan:")
        print(format_plan(result["optimized_plan"]))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(_boot(args), static_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def cmd_repl(args) -> int:
    engine = _boot(args)
    rules = engine.default_rule_names()
    print("qsim repl; :help for commands, :q to leave")
    while True:
        try:
            line = input("qsim> ").strip()
        except EOFError:
            print()
            return 0
        if not line:
            continue
        if line.startswith(":"):
            done = _repl_meta(line, engine, rules)
            if done:
                return 0
            continue
        try:
            result = engine.run_query(line, rules=rules)
        except QueryError as exc:
            print(f"{exc.stage} error: {exc.message}")
            continue
        print(format_table(result["columns"], result["rows"]))
        print(f"{len(result['rows'])} rows; cost {result['cost_initial']} "
              f"-> {result['cost_optimized']}")


def _repl_meta(line: str, engine: Engine, rules: list[str]) -> bool:
    cmd, _, rest = line.partition(" ")
    if cmd in (":q", ":quit", ":exit"):
        return True
    if cmd == ":help":
        print(":tables            list loaded tables\n"
              ":rules [a,b,...]   show or set the rule list\n"
              ":norules           clear the rule list\n"
              ":q                 leave")
    elif cmd == ":tables":
        for info in engine.datasets():
            cols = ", ".join(f"{c['name']}:{c['type']}" for c in info["columns"])
            print(f"{info['name']} ({info['rows']} rows; {cols})")
    elif cmd == ":rules":
        if rest.strip():
            wanted = [r.strip() for r in rest.split(",") if r.strip()]
            try:
                engine.profile.resolve_rules(wanted)
            except QsimError as exc:
                print(f"error: {exc.message}")
                return False
            rules[:] = wanted
        print("rules: " + (", ".join(rules) or "(none)"))
    elif cmd == ":norules":
        rules[:] = []
        print("rules: (none)")
    else:
        print(f"unknown command {cmd!r}; :help lists commands")
    return False


def format_table(columns: list[str], rows: list[list[Any]]) -> str:
    if not rows:
        return "(no rows)"
    cells = [[_cell(v) for v in row] for row in rows]
    widths = [max(len(col), *(len(r[i]) for r in cells))
              for i, col in enumerate(columns)]
    lines = [
        "  ".join(col.ljust(w) for col, w in zip(columns, widths)),
        "  ".join("-" * w for w in widths),
    ]
    lines.extend("  ".join(v.ljust(w) for v, w in zip(row, widths))
                 for row in cells)
    return "\n".join(lines)


def _cell(value: Any) -> str:
    return str(value)


def format_plan(doc: dict[str, Any], indent: int = 0) -> str:
    est = ""
    if doc["estimated_rows"] is not None:
        est = f"  [rows={doc['estimated_rows']:g} cost={doc['estimated_cost']:g}]"
    lines = ["  " * indent + doc["label"] + est]
    lines.extend(format_plan(child, indent + 1) for child in doc["children"])
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QueryError as exc:
        position = f" (at {exc.position})" if exc.position is not None else ""
        print(f"qsim: {exc.stage} error: {exc.message}{position}", file=sys.stderr)
        return 2
    except QsimError as exc:
        print(f"qsim: error: {exc.message}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

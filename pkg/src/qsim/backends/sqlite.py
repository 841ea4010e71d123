"""SQLite-backed cost estimates.

Loads the bundle's schema and data into an in-memory database, compiles the
query with EXPLAIN, and prices it at the number of virtual-machine opcodes in
the compiled program.  The query itself never runs.
"""
import json
import sqlite3
import sys


def main() -> int:
    payload = json.load(sys.stdin)
    try:
        conn = sqlite3.connect(":memory:")
        for stmt in payload["ddl"]:
            conn.execute(stmt)
        for stmt in payload["inserts"]:
            conn.execute(stmt)
        conn.commit()
        opcodes = conn.execute("EXPLAIN " + payload["query"]).fetchall()
    except (sqlite3.Error, KeyError, TypeError) as exc:
        print(f"sqlite backend: {exc}", file=sys.stderr)
        return 1
    json.dump({"cost": float(len(opcodes))}, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())

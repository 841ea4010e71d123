"""Fixed-function backend for exercising the external estimation protocol.

Prices a query at its character count.  Deterministic, schema-agnostic, and
obviously not a real optimizer; useful for round-trip tests and as the
reference for writing real backends.
"""
import json
import sys


def main() -> int:
    payload = json.load(sys.stdin)
    ddl = payload["ddl"]
    inserts = payload["inserts"]
    query = payload["query"]
    if not isinstance(ddl, list) or not isinstance(inserts, list) \
            or not isinstance(query, str) or not query:
        print("malformed payload", file=sys.stderr)
        return 1
    json.dump({"cost": float(len(query))}, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())

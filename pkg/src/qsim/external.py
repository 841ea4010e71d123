"""Approximate SQL translation and external cost backends.

A plan flattens into one SELECT statement: scans become FROM entries,
equi-joins become INNER JOIN ... ON, every filter predicate is lifted into
the WHERE conjunction (sound, since all joins here are inner), and extension
nodes contribute whatever their registered SQL approximation hook returns.
Extension operators outside such a hook have no SQL form and raise
UntranslatableNode.

Backends run as subprocesses speaking one JSON document each way:
{ddl, inserts, query} on stdin, {"cost": <positive float>} on stdout.
Any failure (bad name, crash, timeout, garbage output) raises BackendError;
callers degrade to the built-in estimate.
"""
from __future__ import annotations

import json
import math
import subprocess
import sys
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .data import FLOAT, INT, STR
from .errors import BackendError, UntranslatableNode
from .plan import (
    BoundBinary,
    BoundColumn,
    BoundLiteral,
    BoundExpr,
    CrossProduct,
    EquiJoin,
    ExtNode,
    Filter,
    PlanNode,
    Project,
    Scan,
    conjuncts_of,
)

if TYPE_CHECKING:
    from .catalog import Catalog
    from .registry import KernelProfile

BACKENDS = {
    "stub": "qsim.backends.stub",
    "sqlite": "qsim.backends.sqlite",
}

_SQL_TYPES = {"int": "INTEGER", "float": "REAL", "str": "TEXT"}

_INSERT_CHUNK = 200


@dataclass(frozen=True)
class SqlBundle:
    ddl: tuple[str, ...]
    inserts: tuple[str, ...]
    query: str

    def to_payload(self) -> dict:
        return {"ddl": list(self.ddl), "inserts": list(self.inserts),
                "query": self.query}


def _quote_ident(name: str) -> str:
    parts = name.split(".")
    return ".".join('"' + p.replace('"', '""') + '"' for p in parts)


def _quote_alias(name: str) -> str:
    # output aliases are single identifiers even when named after a
    # qualified column, so dots must not split here
    return '"' + name.replace('"', '""') + '"'


def _quote_str(value: str) -> str:
    return "'" + value.replace("'", "''") + "'"


def _sql_literal(value, dtype, profile) -> str:
    if dtype == STR:
        return _quote_str(value)
    if dtype in (INT, FLOAT):
        return repr(value)
    registered = profile.data_types.get(dtype.name)
    if registered is None:
        raise UntranslatableNode(f"no SQL rendering for type {dtype}")
    return _quote_str(registered.spec.render(value))


def _sql_expr(expr: BoundExpr, profile) -> str:
    if isinstance(expr, BoundColumn):
        return _quote_ident(expr.name)
    if isinstance(expr, BoundLiteral):
        return _sql_literal(expr.value, expr.dtype, profile)
    assert isinstance(expr, BoundBinary)
    if expr.op not in ("AND", "OR", "=", "!=", "<", "<=", ">", ">="):
        raise UntranslatableNode(f"operator {expr.op} has no SQL form")
    left = _sql_expr(expr.left, profile)
    right = _sql_expr(expr.right, profile)
    if isinstance(expr.left, BoundBinary):
        left = f"({left})"
    if isinstance(expr.right, BoundBinary):
        right = f"({right})"
    return f"{left} {expr.op} {right}"


def translate_to_sql(plan: PlanNode, catalog: Catalog, profile) -> SqlBundle:
    """Flatten a plan into DDL, inserts and one SELECT statement."""
    if not isinstance(plan, Project):
        raise UntranslatableNode("plan root must be a projection")

    where: list[str] = []
    tables: list[Scan] = []

    def from_clause(node: PlanNode) -> str:
        if isinstance(node, Scan):
            tables.append(node)
            frag = _quote_ident(node.table)
            if node.alias != node.table:
                frag += f" AS {_quote_alias(node.alias)}"
            return frag
        if isinstance(node, CrossProduct):
            return f"{from_clause(node.left)} CROSS JOIN {from_clause(node.right)}"
        if isinstance(node, EquiJoin):
            left = from_clause(node.left)
            right = from_clause(node.right)
            on = " AND ".join(
                f"{_quote_ident(l)} = {_quote_ident(r)}"
                for l, r in node.pair_names())
            return f"{left} INNER JOIN {right} ON {on}"
        if isinstance(node, Filter):
            inner = from_clause(node.child)
            where.extend(_sql_expr(c, profile)
                         for c in conjuncts_of(node.predicate))
            return inner
        if isinstance(node, ExtNode):
            hook = profile.sql_approximation_hooks.get(node.kind)
            if hook is None:
                raise UntranslatableNode(
                    f"no SQL approximation for {node.kind}")
            if len(node.children) != 1:
                raise UntranslatableNode(
                    f"{node.kind} is not a single-input node")
            inner = from_clause(node.children[0])
            where.append(hook.spec(node))
            return inner
        raise UntranslatableNode(f"cannot translate {node.kind} node")

    from_sql = from_clause(plan.child)
    select = ", ".join(
        f"{_sql_expr(expr, profile)} AS {_quote_alias(name)}"
        for expr, name in plan.exprs)
    query = f"SELECT {select} FROM {from_sql}"
    if where:
        query += " WHERE " + " AND ".join(where)

    ddl: list[str] = []
    inserts: list[str] = []
    for table in sorted({scan.table for scan in tables}):
        rel = catalog.get_table(table)
        cols = ", ".join(
            f"{_quote_ident(c.name)} {_SQL_TYPES.get(c.dtype.name, 'TEXT')}"
            for c in rel.schema.columns)
        ddl.append(f"CREATE TABLE {_quote_ident(table)} ({cols})")
        for start in range(0, len(rel.rows), _INSERT_CHUNK):
            chunk = rel.rows[start:start + _INSERT_CHUNK]
            values = ", ".join(
                "(" + ", ".join(
                    _sql_literal(cell, col.dtype, profile)
                    for cell, col in zip(row, rel.schema.columns)) + ")"
                for row in chunk)
            inserts.append(f"INSERT INTO {_quote_ident(table)} VALUES {values}")
    return SqlBundle(tuple(ddl), tuple(inserts), query)


def external_cost(bundle: SqlBundle, backend: str, timeout: float = 30.0) -> float:
    """Ask a backend subprocess to price the bundle's query."""
    module = BACKENDS.get(backend)
    if module is None:
        raise BackendError(f"unknown backend {backend!r}")
    try:
        proc = subprocess.run(
            [sys.executable, "-m", module],
            input=json.dumps(bundle.to_payload()),
            capture_output=True, text=True, timeout=timeout)
    except subprocess.TimeoutExpired:
        raise BackendError(f"backend {backend!r} timed out after {timeout}s")
    except OSError as exc:
        raise BackendError(f"backend {backend!r} failed to start: {exc}")
    if proc.returncode != 0:
        detail = proc.stderr.strip().splitlines()
        raise BackendError(
            f"backend {backend!r} exited with {proc.returncode}"
            + (f": {detail[-1]}" if detail else ""))
    try:
        reply = json.loads(proc.stdout)
    except ValueError:
        raise BackendError(f"backend {backend!r} produced unparseable output")
    cost = reply.get("cost") if isinstance(reply, dict) else None
    if (not isinstance(cost, (int, float)) or isinstance(cost, bool)
            or not math.isfinite(cost) or cost <= 0):
        raise BackendError(f"backend {backend!r} returned a bad cost: {cost!r}")
    return float(cost)

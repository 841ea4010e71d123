"""Pull-based physical execution.

Compilation maps each logical node to a physical operator with the classic
open / next / close contract; next returns one row tuple or None when
exhausted.  Row order is pinned down so golden tests stay stable: scans emit
storage order, cross products iterate left-major with the right side
materialized, and the hash join probes in probe order emitting matches in
build insertion order.

The hash join builds on whichever input the estimator thinks is smaller
(ties build left).  Output column layout is always left columns then right
columns, independent of the build side.
"""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from . import cost as cost_mod
from .data import Schema
from .errors import NoTranslator, RuntimeTypeError
from .plan import (
    BoundBinary,
    BoundColumn,
    BoundExpr,
    BoundLiteral,
    CrossProduct,
    EquiJoin,
    ExtNode,
    Filter,
    PlanNode,
    Project,
    Scan,
)

if TYPE_CHECKING:
    from .catalog import Catalog
    from .data import Relation


@dataclass
class ExecContext:
    """Shared mutable state for one execution: extension counters and the
    operator table for evaluating registered infix operators."""

    ops: dict[str, Any] = field(default_factory=dict)
    counters: Counter = field(default_factory=Counter)


def evaluate(expr: BoundExpr, row: tuple, ctx: ExecContext) -> Any:
    """Evaluate a bound expression against one input row."""
    if isinstance(expr, BoundColumn):
        return row[expr.index]
    if isinstance(expr, BoundLiteral):
        return expr.value
    assert isinstance(expr, BoundBinary)
    op = expr.op
    if op == "AND":
        return bool(evaluate(expr.left, row, ctx)) and bool(evaluate(expr.right, row, ctx))
    if op == "OR":
        return bool(evaluate(expr.left, row, ctx)) or bool(evaluate(expr.right, row, ctx))
    left = evaluate(expr.left, row, ctx)
    right = evaluate(expr.right, row, ctx)
    if op in ("=", "!=", "<", "<=", ">", ">="):
        if type(left) is not type(right):
            raise RuntimeTypeError(
                f"comparing {type(left).__name__} with {type(right).__name__} at runtime")
        if op == "=":
            return left == right
        if op == "!=":
            return left != right
        if op == "<":
            return left < right
        if op == "<=":
            return left <= right
        if op == ">":
            return left > right
        return left >= right
    spec = ctx.ops.get(op)
    if spec is None:
        raise RuntimeTypeError(f"no evaluator for operator {op!r}")
    if spec.counter:
        ctx.counters[spec.counter] += 1
    return spec.evaluator(left, right)


# --- operators -----------------------------------------------------------------

class PhysicalOp:
    """Base operator: subclasses implement _open/_next/_close."""

    kind = "?"

    def __init__(self, children: list[PhysicalOp]):
        self.children = children
        self.rows_emitted = 0

    def open(self) -> None:
        for child in self.children:
            child.open()
        self._open()

    def next(self) -> tuple | None:
        row = self._next()
        if row is not None:
            self.rows_emitted += 1
        return row

    def close(self) -> None:
        self._close()
        for child in self.children:
            child.close()

    def _open(self) -> None: ...
    def _close(self) -> None: ...

    def _next(self) -> tuple | None:
        raise NotImplementedError


class ScanExec(PhysicalOp):
    kind = "Scan"

    def __init__(self, relation: Relation):
        super().__init__([])
        self.relation = relation

    def _open(self):
        self._pos = 0

    def _next(self):
        if self._pos >= len(self.relation.rows):
            return None
        row = self.relation.rows[self._pos]
        self._pos += 1
        return row


class FilterExec(PhysicalOp):
    kind = "Filter"

    def __init__(self, child: PhysicalOp, predicate: BoundExpr, ctx: ExecContext):
        super().__init__([child])
        self.predicate = predicate
        self.ctx = ctx

    def _next(self):
        child = self.children[0]
        while True:
            row = child.next()
            if row is None:
                return None
            if evaluate(self.predicate, row, self.ctx):
                return row


class ProjectExec(PhysicalOp):
    kind = "Project"

    def __init__(self, child: PhysicalOp, exprs, ctx: ExecContext):
        super().__init__([child])
        self.exprs = exprs
        self.ctx = ctx

    def _next(self):
        row = self.children[0].next()
        if row is None:
            return None
        return tuple(evaluate(expr, row, self.ctx) for expr, _name in self.exprs)


class CrossExec(PhysicalOp):
    """Nested loop cross product, left-major, right side materialized."""

    kind = "CrossProduct"

    def _open(self):
        right = self.children[1]
        self._right_rows = []
        while True:
            row = right.next()
            if row is None:
                break
            self._right_rows.append(row)
        self._left_row = None
        self._right_pos = 0

    def _next(self):
        left = self.children[0]
        while True:
            if self._left_row is None:
                self._left_row = left.next()
                if self._left_row is None:
                    return None
                self._right_pos = 0
            if self._right_pos < len(self._right_rows):
                row = self._left_row + self._right_rows[self._right_pos]
                self._right_pos += 1
                return row
            self._left_row = None


class HashJoinExec(PhysicalOp):
    kind = "EquiJoin"

    def __init__(self, left: PhysicalOp, right: PhysicalOp,
                 pairs: tuple[tuple[int, int], ...], build_side: str):
        super().__init__([left, right])
        self.pairs = pairs
        self.build_side = build_side   # "left" or "right"

    def _open(self):
        build = self.children[0] if self.build_side == "left" else self.children[1]
        key_idx = ([l for l, _ in self.pairs] if self.build_side == "left"
                   else [r for _, r in self.pairs])
        self._table: dict[tuple, list[tuple]] = {}
        while True:
            row = build.next()
            if row is None:
                break
            key = tuple(row[i] for i in key_idx)
            self._table.setdefault(key, []).append(row)
        self._probe_key_idx = ([r for _, r in self.pairs] if self.build_side == "left"
                               else [l for l, _ in self.pairs])
        self._probe_row = None
        self._matches: list[tuple] = []
        self._match_pos = 0

    def _next(self):
        probe = self.children[1] if self.build_side == "left" else self.children[0]
        while True:
            if self._match_pos < len(self._matches):
                build_row = self._matches[self._match_pos]
                self._match_pos += 1
                if self.build_side == "left":
                    return build_row + self._probe_row
                return self._probe_row + build_row
            self._probe_row = probe.next()
            if self._probe_row is None:
                return None
            key = tuple(self._probe_row[i] for i in self._probe_key_idx)
            self._matches = self._table.get(key, [])
            self._match_pos = 0


# --- compilation and execution ----------------------------------------------------

@dataclass
class PhysicalPlan:
    root: PhysicalOp
    schema: Schema
    ctx: ExecContext


@dataclass
class ResultSet:
    schema: Schema
    rows: list[tuple]
    elapsed: float              # seconds spent executing, compile excluded
    stats: dict[str, Any]


def compile_plan(plan: PlanNode, catalog: Catalog, profile=None) -> PhysicalPlan:
    """Translate a validated logical plan into an operator tree.

    A registered physical translator wins over the core translation for its
    node kind, which is how extensions both add nodes and re-map core ones.
    """
    ops = profile.operator_specs() if profile is not None else {}
    translators = profile.physical_translators if profile is not None else {}
    ctx = ExecContext(ops=ops)
    report = cost_mod.estimate(plan, catalog, ops)

    def build(node: PlanNode, path: tuple[int, ...]) -> PhysicalOp:
        children = [build(c, path + (i,)) for i, c in enumerate(node.children)]
        registered = translators.get(node.kind)
        if registered is not None:
            return registered.spec(node, children, ctx)
        if isinstance(node, Scan):
            return ScanExec(catalog.get_table(node.table))
        if isinstance(node, Filter):
            return FilterExec(children[0], node.predicate, ctx)
        if isinstance(node, Project):
            return ProjectExec(children[0], node.exprs, ctx)
        if isinstance(node, CrossProduct):
            return CrossExec(children)
        if isinstance(node, EquiJoin):
            left_rows = report.get(path + (0,)).rows
            right_rows = report.get(path + (1,)).rows
            side = "right" if right_rows < left_rows else "left"
            return HashJoinExec(children[0], children[1], node.pairs, side)
        if isinstance(node, ExtNode):
            raise NoTranslator(f"no physical translator for {node.kind!r}")
        raise NoTranslator(f"cannot compile node {type(node).__name__}")

    return PhysicalPlan(build(plan, ()), plan.schema, ctx)


def execute(physical: PhysicalPlan) -> ResultSet:
    """Drain the operator tree and time it (wall clock, compile excluded)."""
    root = physical.root
    started = time.perf_counter()
    root.open()
    rows = []
    while True:
        row = root.next()
        if row is None:
            break
        rows.append(row)
    root.close()
    elapsed = time.perf_counter() - started

    operators = []

    def collect(op: PhysicalOp):
        operators.append({"kind": op.kind, "rows_emitted": op.rows_emitted})
        for child in op.children:
            collect(child)

    collect(root)
    stats: dict[str, Any] = {"rows_emitted": root.rows_emitted, "operators": operators}
    stats.update(physical.ctx.counters)
    return ResultSet(physical.schema, rows, elapsed, stats)


def run_plan(plan: PlanNode, catalog: Catalog, profile=None) -> ResultSet:
    """Compile then execute; the common path for tests."""
    return execute(compile_plan(plan, catalog, profile))

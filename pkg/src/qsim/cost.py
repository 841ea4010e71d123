"""Built-in cardinality and cost estimation.

Fixed selectivities make estimates deterministic and easy to reason about:

    column = literal   0.1        range comparison   0.3
    column = column    0.05       !=                 0.9
    AND multiplies, OR adds (capped at 1), extension predicates supply their own.

Cardinality: Scan |T|; Filter ceil(sel * in); Project in; CrossProduct |L|*|R|;
EquiJoin applies the 0.05 equality factor per key pair with the same ceiling a
filter would use, so rewriting Filter(a=b) over a cross into a join never
changes the row estimate.

Per-node cost: Scan emits its rows; Filter charges input rows times predicate
cost (comparisons cost 1, AND/OR add up, extension operators declare theirs);
Project passes through; CrossProduct pays |L|*|R|; EquiJoin pays build plus
probe plus emit (|L| + |R| + out).  The plan's total cost is the sum over all
nodes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import InvalidPlan
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

EQUALITY_LITERAL_SEL = 0.1
EQUALITY_COLUMNS_SEL = 0.05
RANGE_SEL = 0.3
INEQUALITY_SEL = 0.9
RANGE_OPS = ("<", "<=", ">", ">=")


def selectivity(pred: BoundExpr, ops: dict | None = None) -> float:
    """Fraction of input rows the predicate is assumed to keep."""
    if isinstance(pred, BoundBinary):
        op = pred.op
        if op == "AND":
            return selectivity(pred.left, ops) * selectivity(pred.right, ops)
        if op == "OR":
            return min(1.0, selectivity(pred.left, ops) + selectivity(pred.right, ops))
        if op == "=":
            if isinstance(pred.left, BoundColumn) and isinstance(pred.right, BoundColumn):
                return EQUALITY_COLUMNS_SEL
            return EQUALITY_LITERAL_SEL
        if op == "!=":
            return INEQUALITY_SEL
        if op in RANGE_OPS:
            return RANGE_SEL
        if ops is not None and op in ops and ops[op].selectivity is not None:
            return ops[op].selectivity
    # A predicate shape we have no estimate for keeps everything.
    return 1.0


def pcost(expr: BoundExpr, ops: dict | None = None) -> float:
    """Per-row evaluation cost of an expression."""
    if isinstance(expr, (BoundColumn, BoundLiteral)):
        return 0.0
    assert isinstance(expr, BoundBinary)
    operands = pcost(expr.left, ops) + pcost(expr.right, ops)
    if expr.op in ("AND", "OR"):
        return operands
    if expr.op in ("=", "!=") or expr.op in RANGE_OPS:
        return 1.0 + operands
    if ops is not None and expr.op in ops:
        return ops[expr.op].pcost(expr) + operands
    return 1.0 + operands


@dataclass(frozen=True)
class NodeEstimate:
    rows: float
    cost: float


@dataclass(frozen=True)
class CostReport:
    """Per-node estimates keyed by tree path, plus the plan total."""

    nodes: dict[tuple[int, ...], NodeEstimate]
    total_cost: float

    def get(self, path: tuple[int, ...]) -> NodeEstimate | None:
        return self.nodes.get(path)

    @property
    def root(self) -> NodeEstimate:
        return self.nodes[()]


def join_rows(left_rows: float, right_rows: float, n_pairs: int) -> float:
    """Equi-join cardinality: one 0.05 equality factor per key pair, applied
    with the same ceiling as a filter so the cross-to-join rewrite is
    estimate-neutral."""
    rows = left_rows * right_rows
    for _ in range(n_pairs):
        rows = math.ceil(EQUALITY_COLUMNS_SEL * rows)
    return rows


def estimate(plan: PlanNode, catalog: Catalog, ops: dict | None = None) -> CostReport:
    """Annotate every node with estimated rows and cost; total them up."""
    nodes: dict[tuple[int, ...], NodeEstimate] = {}

    def walk(node: PlanNode, path: tuple[int, ...]) -> float:
        child_rows = [walk(c, path + (i,)) for i, c in enumerate(node.children)]
        if isinstance(node, Scan):
            rows = float(catalog.get_table(node.table).row_count)
            cost = rows
        elif isinstance(node, Filter):
            rows = float(math.ceil(selectivity(node.predicate, ops) * child_rows[0]))
            cost = child_rows[0] * pcost(node.predicate, ops)
        elif isinstance(node, Project):
            rows = child_rows[0]
            cost = child_rows[0]
        elif isinstance(node, CrossProduct):
            rows = child_rows[0] * child_rows[1]
            cost = child_rows[0] * child_rows[1]
        elif isinstance(node, EquiJoin):
            rows = float(join_rows(child_rows[0], child_rows[1], len(node.pairs)))
            cost = child_rows[0] + child_rows[1] + rows
        elif isinstance(node, ExtNode):
            rows = float(node.estimate_rows(child_rows))
            cost = float(node.estimate_cost(child_rows))
        else:
            raise InvalidPlan(f"cannot estimate node {type(node).__name__}")
        nodes[path] = NodeEstimate(rows, cost)
        return rows

    walk(plan, ())
    return CostReport(nodes, sum(e.cost for e in nodes.values()))

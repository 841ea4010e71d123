"""Heuristic rule-based optimizer.

Rules are pure tree-to-tree functions.  One iteration of the driver walks the
rule list in order; for each rule it traverses the plan top-down in pre-order
and applies the rule at every matching node.  After a replacement the driver
continues into the replacement's children, never the replacement root itself,
which guarantees progress inside a single pass.  Iterations repeat until one
makes zero applications or `max_iterations` is hit, so adversarial rule pairs
terminate with bounded work.

Rule order is observable: the same rule set in a different order may settle
on a different (and differently priced) plan.  That is the point of the
simulator, not a defect.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from .data import BOOL
from .errors import InvalidPlan, RuleViolation
from .plan import (
    BoundBinary,
    BoundColumn,
    CrossProduct,
    EquiJoin,
    Filter,
    PlanNode,
    Project,
    and_together,
    conjuncts_of,
    expr_columns,
    rebase_expr,
    render_expr,
    validate_plan,
)

DEFAULT_MAX_ITERATIONS = 10


class Rule:
    """A named rewrite.  `apply` returns a replacement node or None."""

    name: str = "?"
    origin: str = "core"
    description: str = ""

    def apply(self, node: PlanNode) -> PlanNode | None:
        raise NotImplementedError


@dataclass(frozen=True)
class TraceEntry:
    iteration: int
    rule: str
    path: tuple[int, ...]
    summary: str

    @property
    def path_text(self) -> str:
        return ".".join(str(i) for i in self.path) or "root"


@dataclass
class OptimizeTrace:
    """What the driver did: one entry per rule application plus totals."""

    entries: list[TraceEntry] = field(default_factory=list)
    iterations: int = 0

    @property
    def rule_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for entry in self.entries:
            counts[entry.rule] = counts.get(entry.rule, 0) + 1
        return counts

    def __len__(self) -> int:
        return len(self.entries)


def _apply_at(node: PlanNode, rule: Rule, path: tuple[int, ...],
              iteration: int, trace: OptimizeTrace) -> tuple[PlanNode, int]:
    """Apply `rule` at this node and (pre-order) below it; return new node and count."""
    count = 0
    replacement = rule.apply(node)
    if replacement is not None and replacement is not node:
        if replacement.schema != node.schema:
            raise RuleViolation(rule.name, "rewrite changed the output schema")
        trace.entries.append(TraceEntry(
            iteration, rule.name, path, f"{node.kind} -> {replacement.kind}"))
        count += 1
        node = replacement
        # fall through: traverse the replacement's children, not the root
    new_children = []
    changed = False
    for i, child in enumerate(node.children):
        new_child, n = _apply_at(child, rule, path + (i,), iteration, trace)
        count += n
        changed = changed or (new_child is not child)
        new_children.append(new_child)
    if changed:
        node = node.replace_children(tuple(new_children))
    return node, count


def optimize(plan: PlanNode, rules: list[Rule],
             max_iterations: int = DEFAULT_MAX_ITERATIONS,
             ops: dict | None = None) -> tuple[PlanNode, OptimizeTrace]:
    """Run the rule list to a fixpoint (or the iteration cap).

    Every application is schema-checked immediately; the final tree is fully
    re-validated.  A rule that breaks either check aborts the run with
    RuleViolation.
    """
    trace = OptimizeTrace()
    for iteration in range(1, max_iterations + 1):
        applications = 0
        for rule in rules:
            plan, n = _apply_at(plan, rule, (), iteration, trace)
            applications += n
        if applications == 0:
            break
        trace.iterations = iteration
    try:
        validate_plan(plan, ops)
    except InvalidPlan as exc:
        last = trace.entries[-1].rule if trace.entries else "?"
        raise RuleViolation(last, exc.message) from exc
    return plan, trace


# --- core rules ---------------------------------------------------------------


class SplitConjunctiveFilter(Rule):
    """Filter(p AND q) becomes Filter(p) over Filter(q) so conjuncts move alone."""

    name = "SplitConjunctiveFilter"
    description = "Split a conjunctive filter into a stack of single filters."

    def apply(self, node: PlanNode) -> PlanNode | None:
        if not isinstance(node, Filter):
            return None
        pred = node.predicate
        if not (isinstance(pred, BoundBinary) and pred.op == "AND"):
            return None
        return Filter(pred.left, Filter(pred.right, node.child))


class MergeFilters(Rule):
    """Filter over Filter becomes one conjunctive filter (inverse of the split)."""

    name = "MergeFilters"
    description = "Merge adjacent filters into a single conjunction."

    def apply(self, node: PlanNode) -> PlanNode | None:
        if not (isinstance(node, Filter) and isinstance(node.child, Filter)):
            return None
        inner = node.child
        merged = BoundBinary("AND", node.predicate, inner.predicate, BOOL)
        return Filter(merged, inner.child)


class PushFilterIntoCross(Rule):
    """Push a single-sided filter below a cross product into its input."""

    name = "PushFilterIntoCross"
    description = "Push a filter that reads one side of a cross product into that side."

    def apply(self, node: PlanNode) -> PlanNode | None:
        if not (isinstance(node, Filter) and isinstance(node.child, CrossProduct)):
            return None
        cross = node.child
        used = expr_columns(node.predicate)
        left_arity = cross.left.schema.arity
        if used and max(used) < left_arity:
            return CrossProduct(Filter(node.predicate, cross.left), cross.right)
        if used and min(used) >= left_arity:
            pushed = rebase_expr(node.predicate, -left_arity)
            return CrossProduct(cross.left, Filter(pushed, cross.right))
        return None


class PushFilterBelowProject(Rule):
    """Swap a filter below a projection when the projection passes its columns through."""

    name = "PushFilterBelowProject"
    description = "Move a filter below a projection of plain columns."

    def apply(self, node: PlanNode) -> PlanNode | None:
        if not (isinstance(node, Filter) and isinstance(node.child, Project)):
            return None
        project = node.child
        mapping: dict[int, int] = {}
        for out_idx in expr_columns(node.predicate):
            expr, _name = project.exprs[out_idx]
            if not isinstance(expr, BoundColumn):
                return None
            mapping[out_idx] = expr.index
        pushed = _remap_expr(node.predicate, mapping)
        return Project(project.exprs, Filter(pushed, project.child))


class CrossToEquiJoin(Rule):
    """Turn an equality filter over a cross product into a hash-joinable equi-join.

    Also absorbs a further column-equality filter sitting directly on an
    existing equi-join into that join's pair list.
    """

    name = "CrossToEquiJoin"
    description = "Rewrite Filter(a = b) over CrossProduct into an EquiJoin."

    def apply(self, node: PlanNode) -> PlanNode | None:
        if not isinstance(node, Filter):
            return None
        pred = node.predicate
        if not (isinstance(pred, BoundBinary) and pred.op == "="
                and isinstance(pred.left, BoundColumn)
                and isinstance(pred.right, BoundColumn)):
            return None
        child = node.child
        if isinstance(child, (CrossProduct, EquiJoin)):
            left_arity = child.left.schema.arity
            a, b = pred.left.index, pred.right.index
            if a > b:
                a, b = b, a
            if not (a < left_arity <= b):
                return None
            pair = (a, b - left_arity)
            if isinstance(child, CrossProduct):
                return EquiJoin(child.left, child.right, (pair,))
            return EquiJoin(child.left, child.right, child.pairs + (pair,))
        return None


def _remap_expr(expr, mapping: dict[int, int]):
    if isinstance(expr, BoundColumn):
        return dataclasses.replace(expr, index=mapping[expr.index])
    if isinstance(expr, BoundBinary):
        return dataclasses.replace(
            expr, left=_remap_expr(expr.left, mapping),
            right=_remap_expr(expr.right, mapping))
    return expr


def core_rules() -> list[Rule]:
    """The built-in rules in their canonical order.

    Pushdown runs before the cross-to-join rewrite so single-sided filters
    land inside join inputs; MergeFilters comes last to compact whatever
    stayed behind.
    """
    return [
        SplitConjunctiveFilter(),
        PushFilterBelowProject(),
        PushFilterIntoCross(),
        CrossToEquiJoin(),
        MergeFilters(),
    ]

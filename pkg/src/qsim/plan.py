"""Logical plans: bound expressions, plan nodes, building and validation.

A built plan always has the shape Project over optional Filter over a
left-deep chain of CrossProducts over Scans.  Optimizer rules and analyzer
hooks rearrange that tree but must preserve each node's output schema.

Bound expressions reference columns by input index, so a plan is
self-contained: rules never need the catalog.
"""
from __future__ import annotations

import dataclasses
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Iterator, Union

from . import ast
from .data import BOOL, FLOAT, INT, STR, Column, DataType, Schema, value_dtype
from .errors import InvalidPlan, TypeMismatch

if TYPE_CHECKING:
    from .catalog import Catalog
    from .registry import KernelProfile

CMP_OPS = ("=", "!=", "<", "<=", ">", ">=")
ORDERED_TYPES = (INT, FLOAT, STR)


# --- bound expressions -------------------------------------------------------

@dataclass(frozen=True)
class BoundColumn:
    index: int
    dtype: DataType
    name: str           # display name, carried along when indices are rebased


@dataclass(frozen=True)
class BoundLiteral:
    value: Any
    dtype: DataType


@dataclass(frozen=True)
class BoundBinary:
    op: str
    left: BoundExpr
    right: BoundExpr
    dtype: DataType


BoundExpr = Union[BoundColumn, BoundLiteral, BoundBinary]


def _expr_level(expr: BoundExpr) -> int:
    if isinstance(expr, BoundBinary):
        if expr.op == "OR":
            return 1
        if expr.op == "AND":
            return 2
        if expr.op in CMP_OPS:
            return 3
        return 4
    return 5


def render_expr(expr: BoundExpr) -> str:
    """Human-readable form of a bound expression, used in labels and SQL."""
    if isinstance(expr, BoundColumn):
        return expr.name
    if isinstance(expr, BoundLiteral):
        if expr.dtype == STR:
            return "'" + expr.value.replace("'", "''") + "'"
        return str(expr.value)
    me = _expr_level(expr)
    left = render_expr(expr.left)
    if _expr_level(expr.left) < me:
        left = f"({left})"
    right = render_expr(expr.right)
    if _expr_level(expr.right) <= me:
        right = f"({right})"
    return f"{left} {expr.op} {right}"


def expr_columns(expr: BoundExpr) -> set[int]:
    """All input column indices an expression reads."""
    if isinstance(expr, BoundColumn):
        return {expr.index}
    if isinstance(expr, BoundLiteral):
        return set()
    return expr_columns(expr.left) | expr_columns(expr.right)


def rebase_expr(expr: BoundExpr, shift: int) -> BoundExpr:
    """Shift every column index by `shift` (used when pushing through joins)."""
    if isinstance(expr, BoundColumn):
        return dataclasses.replace(expr, index=expr.index + shift)
    if isinstance(expr, BoundLiteral):
        return expr
    return dataclasses.replace(
        expr, left=rebase_expr(expr.left, shift), right=rebase_expr(expr.right, shift))


def conjuncts_of(expr: BoundExpr) -> list[BoundExpr]:
    """Flatten a tree of ANDs into its conjunct list, in left-to-right order."""
    if isinstance(expr, BoundBinary) and expr.op == "AND":
        return conjuncts_of(expr.left) + conjuncts_of(expr.right)
    return [expr]


def and_together(conjuncts: list[BoundExpr]) -> BoundExpr:
    pred = conjuncts[0]
    for c in conjuncts[1:]:
        pred = BoundBinary("AND", pred, c, BOOL)
    return pred


# --- plan nodes ----------------------------------------------------------------

class PlanNode(ABC):
    """Base of all logical plan nodes."""

    kind: str = "?"

    @property
    @abstractmethod
    def schema(self) -> Schema: ...

    @property
    @abstractmethod
    def children(self) -> tuple[PlanNode, ...]: ...

    @abstractmethod
    def replace_children(self, children: tuple[PlanNode, ...]) -> PlanNode: ...

    @property
    @abstractmethod
    def label(self) -> str: ...

    @property
    def attrs(self) -> dict[str, Any]:
        return {}

    def walk(self, path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], PlanNode]]:
        """Pre-order traversal yielding (path, node)."""
        yield path, self
        for i, child in enumerate(self.children):
            yield from child.walk(path + (i,))


@dataclass(frozen=True)
class Scan(PlanNode):
    table: str
    alias: str
    scan_schema: Schema

    kind = "Scan"

    @property
    def schema(self) -> Schema:
        return self.scan_schema

    @property
    def children(self) -> tuple[PlanNode, ...]:
        return ()

    def replace_children(self, children):
        assert not children
        return self

    @property
    def label(self) -> str:
        if self.alias != self.table:
            return f"Scan {self.table} AS {self.alias}"
        return f"Scan {self.table}"

    @property
    def attrs(self):
        return {"table": self.table, "alias": self.alias}


@dataclass(frozen=True)
class Filter(PlanNode):
    predicate: BoundExpr
    child: PlanNode

    kind = "Filter"

    @property
    def schema(self) -> Schema:
        return self.child.schema

    @property
    def children(self):
        return (self.child,)

    def replace_children(self, children):
        return dataclasses.replace(self, child=children[0])

    @property
    def label(self) -> str:
        return f"Filter {render_expr(self.predicate)}"

    @property
    def attrs(self):
        return {"predicate": render_expr(self.predicate)}


@dataclass(frozen=True)
class Project(PlanNode):
    exprs: tuple[tuple[BoundExpr, str], ...]    # (expression, output name)
    child: PlanNode

    kind = "Project"

    @property
    def schema(self) -> Schema:
        return Schema(tuple(Column(name, expr.dtype) for expr, name in self.exprs))

    @property
    def children(self):
        return (self.child,)

    def replace_children(self, children):
        return dataclasses.replace(self, child=children[0])

    @property
    def label(self) -> str:
        return "Project " + ", ".join(name for _, name in self.exprs)

    @property
    def attrs(self):
        return {"columns": [name for _, name in self.exprs]}


def _qualify(schema: Schema) -> tuple[Column, ...]:
    """Qualify a join input's column names as `alias.col` where possible.

    Columns that already contain a dot came through a deeper join and keep
    their names.
    """
    out = []
    for col in schema.columns:
        if "." in col.name or schema.relation_name is None:
            out.append(col)
        else:
            out.append(Column(f"{schema.relation_name}.{col.name}", col.dtype))
    return tuple(out)


@dataclass(frozen=True)
class CrossProduct(PlanNode):
    left: PlanNode
    right: PlanNode

    kind = "CrossProduct"

    @property
    def schema(self) -> Schema:
        return Schema(_qualify(self.left.schema) + _qualify(self.right.schema))

    @property
    def children(self):
        return (self.left, self.right)

    def replace_children(self, children):
        return dataclasses.replace(self, left=children[0], right=children[1])

    @property
    def label(self) -> str:
        return "CrossProduct"


@dataclass(frozen=True)
class EquiJoin(PlanNode):
    left: PlanNode
    right: PlanNode
    pairs: tuple[tuple[int, int], ...]   # (left index, right index) equality pairs

    kind = "EquiJoin"

    @property
    def schema(self) -> Schema:
        return Schema(_qualify(self.left.schema) + _qualify(self.right.schema))

    @property
    def children(self):
        return (self.left, self.right)

    def replace_children(self, children):
        return dataclasses.replace(self, left=children[0], right=children[1])

    def pair_names(self) -> list[tuple[str, str]]:
        lcols = _qualify(self.left.schema)
        rcols = _qualify(self.right.schema)
        return [(lcols[l].name, rcols[r].name) for l, r in self.pairs]

    @property
    def label(self) -> str:
        return "EquiJoin " + " AND ".join(f"{l} = {r}" for l, r in self.pair_names())

    @property
    def attrs(self):
        return {"pairs": [[l, r] for l, r in self.pair_names()]}


class ExtNode(PlanNode):
    """Base class for plan nodes contributed by a registered syntax.

    Subclasses carry whatever payload they need and supply their own cost
    model, validation and display.  `syntax` names the owning registration;
    `kind` is the key used to look up physical translators and SQL
    approximation hooks.
    """

    syntax: str = "?"

    @abstractmethod
    def validate(self, ops: dict | None) -> None:
        """Raise InvalidPlan if the node violates its own invariants."""

    @abstractmethod
    def estimate_rows(self, child_rows: list[float]) -> float: ...

    @abstractmethod
    def estimate_cost(self, child_rows: list[float]) -> float: ...


# --- binding -------------------------------------------------------------------

def _widen(expr: BoundExpr) -> BoundExpr:
    """Rewrite an Int literal as Float.  Only literals may widen; comparing an
    Int column against a Float column stays a type error."""
    assert isinstance(expr, BoundLiteral) and expr.dtype == INT
    return BoundLiteral(float(expr.value), FLOAT)


def bind_expr(expr: ast.AstExpr, schema: Schema, profile: KernelProfile) -> BoundExpr:
    """Resolve names and type-check one expression against an input schema."""
    if isinstance(expr, ast.ColumnRef):
        idx = schema.resolve(expr.qualifier, expr.name, expr.position)
        col = schema.columns[idx]
        return BoundColumn(idx, col.dtype, col.name)
    if isinstance(expr, ast.Literal):
        if isinstance(expr.value, bool):
            raise TypeMismatch("bool literals are not supported", expr.position)
        if isinstance(expr.value, int):
            return BoundLiteral(expr.value, INT)
        if isinstance(expr.value, float):
            return BoundLiteral(expr.value, FLOAT)
        return BoundLiteral(expr.value, STR)
    if isinstance(expr, ast.ExtLiteral):
        return BoundLiteral(expr.payload, value_dtype(expr.payload))
    if isinstance(expr, ast.Binary):
        left = bind_expr(expr.left, schema, profile)
        right = bind_expr(expr.right, schema, profile)
        op = expr.op
        if op in ("AND", "OR"):
            for side in (left, right):
                if side.dtype != BOOL:
                    raise TypeMismatch(
                        f"{op} operand must be boolean, got {side.dtype}", expr.position)
            return BoundBinary(op, left, right, BOOL)
        if op in CMP_OPS:
            # Int literals widen against a Float side; values never coerce.
            if left.dtype == INT and right.dtype == FLOAT and isinstance(left, BoundLiteral):
                left = _widen(left)
            if right.dtype == INT and left.dtype == FLOAT and isinstance(right, BoundLiteral):
                right = _widen(right)
            if left.dtype != right.dtype:
                raise TypeMismatch(
                    f"cannot compare {left.dtype} with {right.dtype}", expr.position)
            if op not in ("=", "!=") and left.dtype not in ORDERED_TYPES:
                raise TypeMismatch(
                    f"{op} is not defined for {left.dtype}", expr.position)
            return BoundBinary(op, left, right, BOOL)
        registered = profile.infix_operators.get(op)
        if registered is None:
            raise TypeMismatch(f"unknown operator {op!r}", expr.position)
        try:
            result = registered.spec.type_rule(left.dtype, right.dtype)
        except TypeMismatch as exc:
            if exc.position is None:
                raise type(exc)(exc.message, expr.position) from exc
            raise
        return BoundBinary(op, left, right, result)
    raise TypeMismatch(f"cannot bind {expr!r}")


def build_logical(stmt: ast.AstStatement, catalog: Catalog,
                  profile: KernelProfile) -> PlanNode:
    """Build the logical plan for a parsed statement and run analyzer hooks."""
    scans: list[PlanNode] = []
    for name, alias in stmt.tables:
        rel = catalog.get_table(name)
        label = alias or rel.name
        scans.append(Scan(rel.name, label,
                          dataclasses.replace(rel.schema, relation_name=label)))
    node = scans[0]
    for scan in scans[1:]:
        node = CrossProduct(node, scan)

    if stmt.where is not None:
        pred = bind_expr(stmt.where, node.schema, profile)
        if pred.dtype != BOOL:
            raise TypeMismatch(f"WHERE must be boolean, got {pred.dtype}")
        node = Filter(pred, node)

    if stmt.projection == ast.STAR:
        exprs = tuple((BoundColumn(i, col.dtype, col.name), col.name)
                      for i, col in enumerate(node.schema.columns))
    else:
        items = []
        for expr, alias in stmt.projection:
            bound = bind_expr(expr, node.schema, profile)
            if alias:
                name = alias
            elif isinstance(bound, BoundColumn):
                name = bound.name
            else:
                name = ast.unparse_expr(expr)
            items.append((bound, name))
        exprs = tuple(items)
    plan: PlanNode = Project(exprs, node)

    for _syntax, hook in profile.analyzer_hooks:
        plan = hook(plan, stmt)
    validate_plan(plan, profile.operator_specs())
    return plan


def plan_schema(plan: PlanNode) -> Schema:
    return plan.schema


# --- validation ------------------------------------------------------------------

def _retype(expr: BoundExpr, schema: Schema, ops: dict | None) -> DataType:
    """Re-derive an expression's type from leaf types; must match annotations."""
    if isinstance(expr, BoundColumn):
        if not 0 <= expr.index < schema.arity:
            raise InvalidPlan(f"column index {expr.index} out of range")
        actual = schema.columns[expr.index].dtype
        if actual != expr.dtype:
            raise InvalidPlan(
                f"column {expr.name!r} annotated {expr.dtype}, schema says {actual}")
        return actual
    if isinstance(expr, BoundLiteral):
        actual = value_dtype(expr.value)
        if actual != expr.dtype:
            raise InvalidPlan(f"literal {expr.value!r} annotated {expr.dtype}, is {actual}")
        return actual
    lt = _retype(expr.left, schema, ops)
    rt = _retype(expr.right, schema, ops)
    if expr.op in ("AND", "OR"):
        if lt != BOOL or rt != BOOL:
            raise InvalidPlan(f"{expr.op} over non-boolean operands")
        derived = BOOL
    elif expr.op in CMP_OPS:
        if lt != rt:
            raise InvalidPlan(f"comparison over {lt} and {rt}")
        derived = BOOL
    elif ops is not None and expr.op in ops:
        derived = ops[expr.op].type_rule(lt, rt)
    else:
        # Unknown extension operator: the annotation is all we have.
        derived = expr.dtype
    if derived != expr.dtype:
        raise InvalidPlan(f"{expr.op} annotated {expr.dtype}, derives {derived}")
    return derived


def validate_plan(plan: PlanNode, ops: dict | None = None) -> None:
    """Check structural and typing invariants of every node in the tree."""
    for _path, node in plan.walk():
        if isinstance(node, Scan):
            if node.schema.arity == 0:
                raise InvalidPlan(f"scan of {node.table} has no columns")
        elif isinstance(node, Filter):
            if _retype(node.predicate, node.child.schema, ops) != BOOL:
                raise InvalidPlan("filter predicate is not boolean")
        elif isinstance(node, Project):
            for expr, _name in node.exprs:
                _retype(expr, node.child.schema, ops)
        elif isinstance(node, EquiJoin):
            lschema, rschema = node.left.schema, node.right.schema
            if not node.pairs:
                raise InvalidPlan("equi-join with no key pairs")
            for l, r in node.pairs:
                if not (0 <= l < lschema.arity and 0 <= r < rschema.arity):
                    raise InvalidPlan(f"join pair ({l}, {r}) out of range")
                if lschema.columns[l].dtype != rschema.columns[r].dtype:
                    raise InvalidPlan(
                        f"join pair ({l}, {r}) compares "
                        f"{lschema.columns[l].dtype} with {rschema.columns[r].dtype}")
        elif isinstance(node, CrossProduct):
            pass
        elif isinstance(node, ExtNode):
            node.validate(ops)
        else:
            raise InvalidPlan(f"unknown node {type(node).__name__}")


# --- serialization -----------------------------------------------------------------

def serialize_plan(plan: PlanNode, annotations: dict | None = None,
                   path: tuple[int, ...] = ()) -> dict[str, Any]:
    """Render a plan tree as a JSON-friendly document.

    The document shape is fixed: kind, label, attrs, estimated_rows,
    estimated_cost, children.  Estimates are null until a cost annotation is
    supplied.
    """
    est = annotations.get(path) if annotations is not None else None
    return {
        "kind": plan.kind,
        "label": plan.label,
        "attrs": plan.attrs,
        "estimated_rows": est.rows if est is not None else None,
        "estimated_cost": est.cost if est is not None else None,
        "children": [serialize_plan(c, annotations, path + (i,))
                     for i, c in enumerate(plan.children)],
    }

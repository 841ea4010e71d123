"""Vector similarity selection.

Registers the `simsel` syntax: a `vector` column type, bracketed vector
literals, a TO distance operator (Euclidean), the SIMSELECT statement keyword
that admits them, an analyzer hook that turns distance-threshold conjuncts
into SimilarityFilter plan nodes, two rewrite rules for placing those nodes,
and a physical operator that counts every distance evaluation.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Any

from ..ast import TokenKind
from ..data import FLOAT, INT, DataType, Schema
from ..errors import (
    DimMismatch,
    InvalidPlan,
    QuerySyntaxError,
    RuntimeTypeError,
    TypeMismatch,
)
from ..executor import ExecContext, PhysicalOp
from ..optimizer import Rule
from ..plan import (
    BoundBinary,
    BoundColumn,
    BoundLiteral,
    CrossProduct,
    EquiJoin,
    ExtNode,
    Filter,
    PlanNode,
    Project,
    and_together,
    conjuncts_of,
)

SYNTAX = "simsel"
KEYWORD = "SIMSELECT"
SIM_SELECTIVITY = 0.2
COUNTER = "distance_evals"


# --- value and type ----------------------------------------------------------

@dataclass(frozen=True)
class Vector:
    """An immutable vector of finite 64-bit floats, one dimension or more."""

    components: tuple[float, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("vector needs at least one component")
        normalized = tuple(float(c) for c in self.components)
        for c in normalized:
            if not math.isfinite(c):
                raise ValueError("vector components must be finite")
        object.__setattr__(self, "components", normalized)

    @property
    def dtype(self) -> DataType:
        return DataType("vector", len(self.components))

    def __len__(self) -> int:
        return len(self.components)

    def __str__(self) -> str:
        return "[" + ", ".join(repr(c) for c in self.components) + "]"


def distance(a: Vector, b: Vector) -> float:
    return math.dist(a.components, b.components)


# --- parsing -----------------------------------------------------------------

def parse_vector_literal(cursor) -> Vector:
    """Parse `num (',' num)* ']'`; the opening bracket is already consumed."""
    components = [_number(cursor)]
    while True:
        tok = cursor.peek()
        if tok.kind is TokenKind.SYMBOL and tok.text == ",":
            cursor.next()
            components.append(_number(cursor))
            continue
        break
    cursor.expect_symbol("]")
    return Vector(tuple(components))


def _number(cursor) -> float:
    tok = cursor.next()
    if tok.kind not in (TokenKind.INT, TokenKind.FLOAT):
        raise QuerySyntaxError(
            f"expected a number in vector literal, found {tok.text or 'end of input'!r}",
            position=tok.position)
    return float(tok.value)


def parse_vector_cell(text: str, declared: DataType | None) -> tuple[Vector, DataType]:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"vector cell must look like [c1, c2, ...]: {text!r}")
    body = s[1:-1].strip()
    if not body:
        raise ValueError("vector needs at least one component")
    components = []
    for part in body.split(","):
        try:
            c = float(part)
        except ValueError:
            raise ValueError(f"bad vector component {part.strip()!r}")
        if not math.isfinite(c):
            raise ValueError("vector components must be finite")
        components.append(c)
    if (declared is not None and declared.param is not None
            and declared.param != len(components)):
        raise ValueError(
            f"expected {declared.param} components, found {len(components)}")
    return Vector(tuple(components)), DataType("vector", len(components))


def render_vector(value: Any) -> str:
    return str(value)


# --- operator ----------------------------------------------------------------

def distance_type_rule(lt: DataType, rt: DataType) -> DataType:
    if lt.name != "vector" or rt.name != "vector":
        raise TypeMismatch(f"TO requires vector operands, got {lt} and {rt}")
    if lt.param != rt.param:
        raise DimMismatch(f"vector dimensions differ: {lt} vs {rt}")
    return FLOAT


def distance_evaluator(left: Any, right: Any) -> float:
    if not isinstance(left, Vector) or not isinstance(right, Vector):
        raise RuntimeTypeError(
            f"TO requires vectors, got {type(left).__name__} and {type(right).__name__}")
    if len(left) != len(right):
        raise RuntimeTypeError(
            f"TO requires equal dimensions, got {len(left)} and {len(right)}")
    return distance(left, right)


def distance_pcost(expr: BoundBinary) -> float:
    """One evaluation costs the vector dimension (component-wise work)."""
    for side in (expr.left, expr.right):
        if side.dtype.name == "vector" and side.dtype.param:
            return float(side.dtype.param)
    return 1.0


# --- plan node -----------------------------------------------------------------

@dataclass(frozen=True)
class SimilarityFilter(ExtNode):
    """Keep rows whose `vector_col` is within `threshold` of `query_vector`."""

    vector_col: int
    vector_col_name: str
    query_vector: Vector
    threshold: float
    comparator: str        # "<" or "<="
    child: PlanNode

    kind = "SimilarityFilter"
    syntax = SYNTAX

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
        return (f"SimilarityFilter {self.vector_col_name} TO {self.query_vector} "
                f"{self.comparator} {self.threshold}")

    @property
    def attrs(self):
        return {"column": self.vector_col_name, "query": str(self.query_vector),
                "comparator": self.comparator, "threshold": self.threshold}

    def validate(self, ops: dict | None) -> None:
        schema = self.child.schema
        if not 0 <= self.vector_col < schema.arity:
            raise InvalidPlan(f"similarity column index {self.vector_col} out of range")
        dtype = schema.columns[self.vector_col].dtype
        if dtype.name != "vector" or dtype.param != len(self.query_vector):
            raise InvalidPlan(
                f"similarity column is {dtype}, query vector has "
                f"{len(self.query_vector)} components")
        if self.comparator not in ("<", "<="):
            raise InvalidPlan(f"bad similarity comparator {self.comparator!r}")
        if self.threshold < 0:
            raise InvalidPlan("similarity threshold must be non-negative")

    def estimate_rows(self, child_rows: list[float]) -> float:
        return math.ceil(SIM_SELECTIVITY * child_rows[0])

    def estimate_cost(self, child_rows: list[float]) -> float:
        return child_rows[0] * len(self.query_vector)


# --- analyzer hook -------------------------------------------------------------

def _match_similarity_conjunct(expr) -> tuple[BoundColumn, Vector, str, float] | None:
    """Match `(col TO vector_literal) cmp numeric_literal`, cmp in {<, <=}."""
    if not (isinstance(expr, BoundBinary) and expr.op in ("<", "<=")):
        return None
    inner, bound = expr.left, expr.right
    if not (isinstance(inner, BoundBinary) and inner.op == "TO"):
        return None
    col, query = inner.left, inner.right
    if not (isinstance(col, BoundColumn) and col.dtype.name == "vector"):
        return None
    if not (isinstance(query, BoundLiteral) and isinstance(query.value, Vector)):
        return None
    if not (isinstance(bound, BoundLiteral) and bound.dtype in (FLOAT, INT)):
        return None
    return col, query.value, expr.op, float(bound.value)


def similarity_hook(plan: PlanNode, stmt) -> PlanNode:
    """Pull distance-threshold conjuncts out of the filter into SimilarityFilter
    nodes placed below the residual filter.

    Negative thresholds stay in the residual filter (they reject every row at
    runtime; the plan node itself requires a non-negative threshold).
    """
    if stmt.keyword != KEYWORD:
        return plan
    if not (isinstance(plan, Project) and isinstance(plan.child, Filter)):
        return plan
    filt = plan.child
    extracted = []
    residual = []
    for conjunct in conjuncts_of(filt.predicate):
        match = _match_similarity_conjunct(conjunct)
        if match is not None and match[3] >= 0:
            extracted.append(match)
        else:
            residual.append(conjunct)
    if not extracted:
        return plan
    node = filt.child
    for col, query, cmp, threshold in extracted:
        node = SimilarityFilter(col.index, col.name, query, threshold, cmp, node)
    if residual:
        node = Filter(and_together(residual), node)
    return plan.replace_children((node,))


# --- rewrite rules ---------------------------------------------------------------

class PushSimFilterIntoCross(Rule):
    """Push a similarity filter over a join into the side it reads."""

    name = "PushSimFilterIntoCross"
    origin = SYNTAX
    description = "Push a similarity filter into the join side holding its column."

    def apply(self, node: PlanNode) -> PlanNode | None:
        if not isinstance(node, SimilarityFilter):
            return None
        child = node.child
        if not isinstance(child, (CrossProduct, EquiJoin)):
            return None
        left_arity = child.left.schema.arity
        if node.vector_col < left_arity:
            pushed = dataclasses.replace(node, child=child.left)
            return child.replace_children((pushed, child.right))
        pushed = dataclasses.replace(node, child=child.right,
                                     vector_col=node.vector_col - left_arity)
        return child.replace_children((child.left, pushed))


class SimFilterAfterCheapFilters(Rule):
    """Evaluate plain predicates before distances: Filter over SimilarityFilter
    swaps so the distance runs on fewer rows."""

    name = "SimFilterAfterCheapFilters"
    origin = SYNTAX
    description = "Run a similarity filter after any plain filter beneath it."

    def apply(self, node: PlanNode) -> PlanNode | None:
        if not isinstance(node, Filter):
            return None
        sim = node.child
        if not isinstance(sim, SimilarityFilter):
            return None
        return dataclasses.replace(
            sim, child=Filter(node.predicate, sim.child))


# --- physical operator ------------------------------------------------------------

class SimFilterExec(PhysicalOp):
    kind = "SimilarityFilter"

    def __init__(self, child: PhysicalOp, node: SimilarityFilter, ctx: ExecContext):
        super().__init__([child])
        self.node = node
        self.ctx = ctx

    def _next(self):
        node = self.node
        child = self.children[0]
        while True:
            row = child.next()
            if row is None:
                return None
            value = row[node.vector_col]
            if not isinstance(value, Vector):
                raise RuntimeTypeError(
                    f"similarity column holds {type(value).__name__}, not a vector")
            self.ctx.counters[COUNTER] += 1
            d = distance(value, node.query_vector)
            keep = d < node.threshold if node.comparator == "<" else d <= node.threshold
            if keep:
                return row


def translate_simfilter(node: SimilarityFilter, children: list[PhysicalOp],
                        ctx: ExecContext) -> PhysicalOp:
    return SimFilterExec(children[0], node, ctx)


# --- SQL approximation ---------------------------------------------------------------

def simfilter_sql(node: SimilarityFilter) -> str:
    """External engines cannot price the distance scan; hand them a transparent
    placeholder predicate instead."""
    return f"/* similarity sel={SIM_SELECTIVITY} */ 1=1"


# --- registration -----------------------------------------------------------------

def register_into(registry) -> None:
    from ..registry import (
        DataTypeSpec,
        InfixOperatorSpec,
        LiteralOpenerSpec,
        RegistryEntry,
    )

    registry.register(SYNTAX, RegistryEntry(
        statement_keywords=(KEYWORD,),
        literal_openers=(LiteralOpenerSpec("[", "]", parse_vector_literal),),
        infix_operators=(InfixOperatorSpec(
            name="TO",
            type_rule=distance_type_rule,
            evaluator=distance_evaluator,
            selectivity=SIM_SELECTIVITY,
            pcost=distance_pcost,
            counter=COUNTER,
        ),),
        data_types=(DataTypeSpec("vector", parse_vector_cell, render_vector),),
        analyzer_hooks=(similarity_hook,),
        rules=(PushSimFilterIntoCross(), SimFilterAfterCheapFilters()),
        physical_translators=(("SimilarityFilter", translate_simfilter),),
        sql_approximation_hooks=(("SimilarityFilter", simfilter_sql),),
    ))

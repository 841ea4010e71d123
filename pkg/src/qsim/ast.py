"""Tokens and the abstract syntax tree for the SELECT dialect.

The statement shape is:

    stmt     := KW projlist FROM table (',' table)* (WHERE expr)?
    projlist := '*' | expr (AS ident)? (',' expr (AS ident)?)*
    table    := ident (AS? ident)?

Expressions use four precedence levels, loosest first: OR, AND, comparison,
registered infix operator.  Registered operators are left associative and
bind tighter than comparisons, so `v TO [1,2] < 10` reads as
`(v TO [1,2]) < 10`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Union


class TokenKind(enum.Enum):
    KEYWORD = "keyword"
    IDENT = "ident"
    INT = "int"
    FLOAT = "float"
    STRING = "string"
    SYMBOL = "symbol"
    EXT_LIT_OPENER = "ext_lit_opener"
    ERROR = "error"     # deferred lex failure; value holds the exception
    EOF = "eof"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str           # canonical form: upper keyword, lower ident, raw source otherwise
    value: Any          # parsed value for INT/FLOAT/STRING, None for other kinds
    position: int       # character offset into the query text

    def __str__(self) -> str:
        return f"{self.kind.value}:{self.text}"


# --- expressions -------------------------------------------------------------

@dataclass(frozen=True)
class ColumnRef:
    qualifier: str | None
    name: str
    position: int | None = None


@dataclass(frozen=True)
class Literal:
    value: int | float | str
    position: int | None = None


@dataclass(frozen=True)
class ExtLiteral:
    """A literal parsed by a registered opener, e.g. a vector `[1,2,3,4]`."""

    syntax: str
    payload: Any
    position: int | None = None


@dataclass(frozen=True)
class Binary:
    op: str             # "OR", "AND", "=", "!=", "<", "<=", ">", ">=", or a registered name
    left: AstExpr
    right: AstExpr
    position: int | None = None


AstExpr = Union[ColumnRef, Literal, ExtLiteral, Binary]

STAR = "*"


@dataclass(frozen=True)
class AstStatement:
    keyword: str        # "SELECT" or a registered statement keyword
    projection: str | tuple[tuple[AstExpr, str | None], ...]   # STAR or (expr, alias) items
    tables: tuple[tuple[str, str | None], ...]                 # (name, alias) items
    where: AstExpr | None = None


# --- unparsing ---------------------------------------------------------------

_CMP_OPS = ("=", "!=", "<", "<=", ">", ">=")


def _level(expr: AstExpr) -> int:
    """Precedence level of an expression's top node; primaries are tightest."""
    if isinstance(expr, Binary):
        if expr.op == "OR":
            return 1
        if expr.op == "AND":
            return 2
        if expr.op in _CMP_OPS:
            return 3
        return 4
    return 5


def unparse_expr(expr: AstExpr) -> str:
    """Render an expression, parenthesising only where precedence demands."""
    if isinstance(expr, ColumnRef):
        return f"{expr.qualifier}.{expr.name}" if expr.qualifier else expr.name
    if isinstance(expr, Literal):
        if isinstance(expr.value, str):
            return "'" + expr.value.replace("'", "''") + "'"
        return repr(expr.value)
    if isinstance(expr, ExtLiteral):
        return str(expr.payload)
    if isinstance(expr, Binary):
        me = _level(expr)
        # Left-associative everywhere: the left child may sit at the same
        # level unparenthesised, the right child may not.
        left = unparse_expr(expr.left)
        if _level(expr.left) < me:
            left = f"({left})"
        right = unparse_expr(expr.right)
        if _level(expr.right) <= me:
            right = f"({right})"
        return f"{left} {expr.op} {right}"
    raise TypeError(f"not an expression: {expr!r}")


def unparse(stmt: AstStatement) -> str:
    """Render a statement back to query text.

    The output reparses to a structurally identical AST under the same
    profile.
    """
    if stmt.projection == STAR:
        proj = "*"
    else:
        parts = []
        for expr, alias in stmt.projection:
            text = unparse_expr(expr)
            if alias:
                text += f" AS {alias}"
            parts.append(text)
        proj = ", ".join(parts)
    tables = ", ".join(n if a is None else f"{n} {a}" for n, a in stmt.tables)
    text = f"{stmt.keyword} {proj} FROM {tables}"
    if stmt.where is not None:
        text += f" WHERE {unparse_expr(stmt.where)}"
    return text

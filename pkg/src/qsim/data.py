"""Typed values, schemas and immutable relations.

The storable core scalar types are Int, Float and Str.  Bool exists only as
the result type of predicates and never appears in a relation.  Extension
value types (for example vectors) are ordinary Python objects exposing a
`dtype` property; the engine never needs to know their internals.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Protocol, runtime_checkable

from .errors import AmbiguousColumn, InvalidPlan, UnknownColumn

INT64_MIN = -(2 ** 63)
INT64_MAX = 2 ** 63 - 1


@dataclass(frozen=True)
class DataType:
    """A value type tag, optionally parameterised (e.g. vector dimension)."""

    name: str
    param: int | None = None

    def __str__(self) -> str:
        if self.param is None:
            return self.name
        return f"{self.name}({self.param})"


INT = DataType("int")
FLOAT = DataType("float")
STR = DataType("str")
BOOL = DataType("bool")

#: Scalar types that may appear in a stored relation without an extension.
CORE_STORABLE = (INT, FLOAT, STR)


@runtime_checkable
class ExtensionValue(Protocol):
    """Protocol for values of registered extension types."""

    @property
    def dtype(self) -> DataType: ...


def value_dtype(value: Any) -> DataType:
    """Return the type tag of a runtime value.

    bool is rejected explicitly: it is a subclass of int in Python but Bool
    is not a storable type here.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a storable value")
    if isinstance(value, int):
        return INT
    if isinstance(value, float):
        return FLOAT
    if isinstance(value, str):
        return STR
    if isinstance(value, ExtensionValue):
        return value.dtype
    raise TypeError(f"unsupported value {value!r}")


@dataclass(frozen=True)
class Column:
    name: str
    dtype: DataType

    def __str__(self) -> str:
        return f"{self.name}:{self.dtype}"


@dataclass(frozen=True)
class Schema:
    """An ordered list of typed columns, optionally tied to a relation name.

    Column names are stored lowercase.  After a join the names of the two
    sides are qualified as `alias.col`, so a name may contain one dot.
    """

    columns: tuple[Column, ...]
    relation_name: str | None = None

    @property
    def arity(self) -> int:
        return len(self.columns)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    def resolve(self, qualifier: str | None, name: str,
                position: tuple[int, int] | None = None) -> int:
        """Resolve a column reference to an index.

        A qualified reference `q.n` matches either a column literally named
        `q.n` (post-join schema) or a column `n` of a schema whose relation
        name is `q`.  An unqualified reference matches any column whose last
        name segment is `n` and must be unique.
        """
        matches = []
        for i, col in enumerate(self.columns):
            parts = col.name.split(".")
            if qualifier is not None:
                if parts == [qualifier, name]:
                    matches.append(i)
                elif len(parts) == 1 and self.relation_name == qualifier and parts[0] == name:
                    matches.append(i)
            else:
                if parts[-1] == name:
                    matches.append(i)
        ref = f"{qualifier}.{name}" if qualifier else name
        if not matches:
            raise UnknownColumn(f"unknown column {ref!r}", position)
        if len(matches) > 1:
            raise AmbiguousColumn(f"ambiguous column {ref!r}", position)
        return matches[0]


@dataclass(frozen=True)
class Relation:
    """An immutable named table: a schema plus a tuple of row tuples.

    Construction validates every cell against the schema, so a relation in
    hand always satisfies the arity and type invariants.
    """

    name: str
    schema: Schema
    rows: tuple[tuple[Any, ...], ...] = field(default=())

    def __post_init__(self):
        arity = self.schema.arity
        for rownum, row in enumerate(self.rows):
            if len(row) != arity:
                raise InvalidPlan(
                    f"relation {self.name}: row {rownum} has {len(row)} cells, expected {arity}")
            for col, cell in zip(self.schema.columns, row):
                try:
                    actual = value_dtype(cell)
                except TypeError as exc:
                    raise InvalidPlan(f"relation {self.name}: {exc}") from exc
                if actual != col.dtype:
                    raise InvalidPlan(
                        f"relation {self.name}: row {rownum} column {col.name!r} "
                        f"holds {actual}, expected {col.dtype}")
                if actual == INT and not INT64_MIN <= cell <= INT64_MAX:
                    raise InvalidPlan(
                        f"relation {self.name}: row {rownum} column {col.name!r} "
                        f"overflows 64-bit integer range")

    @property
    def row_count(self) -> int:
        return len(self.rows)


def make_relation(name: str, columns: Iterable[tuple[str, DataType]],
                  rows: Iterable[Iterable[Any]]) -> Relation:
    """Convenience constructor used heavily by tests."""
    schema = Schema(tuple(Column(n.lower(), t) for n, t in columns), relation_name=name)
    return Relation(name, schema, tuple(tuple(r) for r in rows))

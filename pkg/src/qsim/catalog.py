"""In-memory table catalog with CSV loading.

CSV headers declare each column as `name:type`; there is no inference.  Type
names resolve through the profile's data-type table, so a profile without a
given extension cannot load files that use its types.  Parametric types
(vector dimensions) concretize from the first data row and every later row
must agree.
"""
from __future__ import annotations

import csv
import io
import math
import re
from typing import Any

from .data import INT64_MAX, INT64_MIN, Column, DataType, Relation, Schema
from .errors import (
    ArityMismatch,
    CatalogError,
    CellParseError,
    DuplicateTable,
    InvalidTableName,
    UnknownTable,
    UnknownType,
)

_IDENT_RE = re.compile(r"^[a-z_][a-z0-9_]*$")


def parse_int_cell(text: str, declared: DataType | None) -> tuple[int, DataType]:
    try:
        value = int(text)
    except ValueError:
        raise ValueError(f"not an integer: {text!r}")
    if not INT64_MIN <= value <= INT64_MAX:
        raise ValueError("integer out of 64-bit range")
    return value, DataType("int")


def parse_float_cell(text: str, declared: DataType | None) -> tuple[float, DataType]:
    try:
        value = float(text)
    except ValueError:
        raise ValueError(f"not a float: {text!r}")
    if not math.isfinite(value):
        raise ValueError("float must be finite")
    return value, DataType("float")


def parse_str_cell(text: str, declared: DataType | None) -> tuple[str, DataType]:
    return text, DataType("str")


def render_cell(value: Any) -> str:
    return str(value)


class Catalog:
    """Named relations, loaded from CSV text or registered directly."""

    def __init__(self):
        self._tables: dict[str, Relation] = {}

    def load_csv(self, name: str, text: str, profile, replace: bool = False) -> Relation:
        name = name.lower()
        if not _IDENT_RE.match(name):
            raise InvalidTableName(f"invalid table name {name!r}")
        if name in self._tables and not replace:
            raise DuplicateTable(f"table {name!r} already exists")

        reader = csv.reader(io.StringIO(text))
        try:
            header = next(reader)
        except StopIteration:
            raise CatalogError("empty csv: missing header")
        columns, parsers, dtypes = self._parse_header(header, profile)

        rows = []
        for i, raw in enumerate(reader, start=1):
            if not raw:
                continue
            if len(raw) != len(columns):
                raise ArityMismatch(row=i, expected=len(columns), found=len(raw))
            out = []
            for j, cell in enumerate(raw):
                try:
                    value, dtype = parsers[j](cell, dtypes[j])
                except ValueError as exc:
                    raise CellParseError(row=i, column=columns[j], reason=str(exc))
                if dtypes[j].param is None and dtype.name == dtypes[j].name:
                    dtypes[j] = dtype
                elif dtype != dtypes[j]:
                    raise CellParseError(
                        row=i, column=columns[j],
                        reason=f"expected {dtypes[j]}, found {dtype}")
                out.append(value)
            rows.append(tuple(out))

        schema = Schema(tuple(Column(n, t) for n, t in zip(columns, dtypes)),
                        relation_name=name)
        relation = Relation(name, schema, tuple(rows))
        self._tables[name] = relation
        return relation

    def _parse_header(self, header: list[str], profile):
        if not header or header == [""]:
            raise CatalogError("empty csv: missing header")
        columns: list[str] = []
        parsers = []
        dtypes: list[DataType] = []
        for cell in header:
            colname, sep, typename = cell.partition(":")
            colname = colname.strip().lower()
            typename = typename.strip().lower()
            if not sep or not typename:
                raise CatalogError(f"header cell {cell!r} must be name:type")
            if not _IDENT_RE.match(colname):
                raise CatalogError(f"invalid column name {colname!r}")
            if colname in columns:
                raise CatalogError(f"duplicate column {colname!r}")
            registered = profile.data_types.get(typename)
            if registered is None:
                raise UnknownType(f"unknown type {typename!r}")
            columns.append(colname)
            parsers.append(registered.spec.parse_cell)
            dtypes.append(DataType(typename))
        return columns, parsers, dtypes

    def add(self, relation: Relation, replace: bool = False) -> None:
        if relation.name in self._tables and not replace:
            raise DuplicateTable(f"table {relation.name!r} already exists")
        self._tables[relation.name] = relation

    def get_table(self, name: str) -> Relation:
        rel = self._tables.get(name.lower())
        if rel is None:
            raise UnknownTable(f"unknown table {name!r}")
        return rel

    def drop_table(self, name: str) -> None:
        if name.lower() not in self._tables:
            raise UnknownTable(f"unknown table {name!r}")
        del self._tables[name.lower()]

    def has_table(self, name: str) -> bool:
        return name.lower() in self._tables

    def table_names(self) -> list[str]:
        return sorted(self._tables)

    def tables(self) -> list[Relation]:
        return [self._tables[n] for n in sorted(self._tables)]

"""Syntax registry: how extensions plug into the kernel.

A syntax registers rows under fixed entry points (statement keywords,
literal openers, infix operators, data types, analyzer hooks, rules,
physical translators, SQL approximation hooks).  Each syntax and each of its
entry points can be toggled; `build_profile` merges everything enabled into
an immutable KernelProfile snapshot.  Conflicts (two enabled claimants for
one keyword, opener character, operator name, data type name or rule name)
are detected at merge time, so disabled syntaxes never block each other.

Queries hold on to the profile they started with; toggling rebuilds a new
profile and never mutates an existing one.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Callable

from . import catalog as _catalog
from .data import DataType
from .errors import (
    ConflictError,
    DuplicateRule,
    DuplicateSyntax,
    UnknownEntryPoint,
    UnknownRule,
    UnknownSyntax,
)
from .optimizer import Rule, core_rules

RESERVED_WORDS = ("SELECT", "FROM", "WHERE", "AND", "OR", "AS")

ENTRY_POINTS = (
    "statement_keywords",
    "literal_openers",
    "infix_operators",
    "data_types",
    "analyzer_hooks",
    "rules",
    "physical_translators",
    "sql_approximation_hooks",
)

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class InfixOperatorSpec:
    """A registered infix operator.

    The operator name becomes a keyword token.  `type_rule` maps operand
    types to the result type (raising TypeMismatch), `evaluator` computes a
    value at runtime, `selectivity` prices the operator when it roots a
    predicate, `pcost` prices one evaluation given the bound expression, and
    `counter` optionally names a stat bumped on every evaluation.
    """

    name: str
    type_rule: Callable[[DataType, DataType], DataType]
    evaluator: Callable[[Any, Any], Any]
    selectivity: float | None
    pcost: Callable[[Any], float]
    counter: str | None = None


@dataclass(frozen=True)
class LiteralOpenerSpec:
    """A literal form introduced by a single opening character.

    `parse` consumes tokens from the parser's cursor up to and including the
    closing character and returns the literal's payload value.  The closer is
    lexed as an ordinary symbol while the syntax is enabled.
    """

    opener: str
    closer: str
    parse: Callable[[Any], Any]


@dataclass(frozen=True)
class DataTypeSpec:
    """A storable column type: how to parse a CSV cell and render a value."""

    name: str
    parse_cell: Callable[[str, DataType | None], tuple[Any, DataType]]
    render: Callable[[Any], str]


def _core_data_types() -> dict[str, DataTypeSpec]:
    return {
        "int": DataTypeSpec("int", _catalog.parse_int_cell, _catalog.render_cell),
        "float": DataTypeSpec("float", _catalog.parse_float_cell, _catalog.render_cell),
        "str": DataTypeSpec("str", _catalog.parse_str_cell, _catalog.render_cell),
    }


@dataclass(frozen=True)
class RegistryEntry:
    statement_keywords: tuple[str, ...] = ()
    literal_openers: tuple[LiteralOpenerSpec, ...] = ()
    infix_operators: tuple[InfixOperatorSpec, ...] = ()
    data_types: tuple[DataTypeSpec, ...] = ()
    analyzer_hooks: tuple[Callable, ...] = ()
    rules: tuple[Rule, ...] = ()
    physical_translators: tuple[tuple[str, Callable], ...] = ()
    sql_approximation_hooks: tuple[tuple[str, Callable], ...] = ()


@dataclass(frozen=True)
class Registered:
    """A spec plus the syntax that contributed it."""

    syntax: str
    spec: Any


@dataclass(frozen=True)
class KernelProfile:
    """An immutable merged view of everything currently enabled."""

    statement_keywords: dict[str, str]              # keyword -> owning syntax
    literal_openers: dict[str, Registered]          # opener char -> spec
    infix_operators: dict[str, Registered]          # operator name -> spec
    data_types: dict[str, Registered]               # type name -> spec (core included)
    analyzer_hooks: tuple[tuple[str, Callable], ...]
    rules: dict[str, Rule]                          # ordered: core first
    physical_translators: dict[str, Registered]     # node kind -> factory
    sql_approximation_hooks: dict[str, Registered]  # node kind -> hook

    def operator_specs(self) -> dict[str, InfixOperatorSpec]:
        return {name: reg.spec for name, reg in self.infix_operators.items()}

    def keyword_owner(self, keyword: str) -> str | None:
        """The syntax owning a statement keyword; None for core SELECT."""
        if keyword == "SELECT":
            return None
        return self.statement_keywords.get(keyword)

    def rule_objects(self) -> list[Rule]:
        return list(self.rules.values())

    def resolve_rules(self, names: list[str]) -> list[Rule]:
        seen = set()
        out = []
        for name in names:
            if name in seen:
                raise DuplicateRule(f"rule {name!r} listed twice")
            seen.add(name)
            rule = self.rules.get(name)
            if rule is None:
                raise UnknownRule(f"unknown rule {name!r}")
            out.append(rule)
        return out


class Registry:
    """Mutable set of registered syntaxes with enable/disable switches."""

    def __init__(self):
        self._rows: dict[str, dict[str, Any]] = {}

    def register(self, name: str, entry: RegistryEntry) -> None:
        if not _NAME_RE.match(name):
            raise UnknownSyntax(f"invalid syntax name {name!r}")
        if name in self._rows:
            raise DuplicateSyntax(f"syntax {name!r} already registered")
        self._rows[name] = {
            "entry": entry,
            "enabled": True,
            "entry_points": {ep: True for ep in ENTRY_POINTS},
        }

    def _row(self, name: str) -> dict[str, Any]:
        row = self._rows.get(name)
        if row is None:
            raise UnknownSyntax(f"unknown syntax {name!r}")
        return row

    def set_syntax_enabled(self, name: str, enabled: bool) -> None:
        self._row(name)["enabled"] = bool(enabled)

    def set_entry_point_enabled(self, name: str, entry_point: str, enabled: bool) -> None:
        row = self._row(name)
        if entry_point not in ENTRY_POINTS:
            raise UnknownEntryPoint(f"unknown entry point {entry_point!r}")
        row["entry_points"][entry_point] = bool(enabled)

    def syntaxes(self) -> list[dict[str, Any]]:
        return [
            {"name": name, "enabled": row["enabled"],
             "entry_points": dict(row["entry_points"])}
            for name, row in self._rows.items()
        ]

    def _enabled(self, row: dict[str, Any], entry_point: str) -> bool:
        return row["enabled"] and row["entry_points"][entry_point]

    def build_profile(self) -> KernelProfile:
        """Merge enabled registrations, raising ConflictError on collisions."""
        # Keywords and operator names share one lexical namespace.
        words: dict[str, tuple[str, str]] = {w: ("statement_keyword", "core")
                                             for w in RESERVED_WORDS}
        openers: dict[str, Registered] = {}
        operators: dict[str, Registered] = {}
        keywords: dict[str, str] = {}
        data_types: dict[str, Registered] = {
            name: Registered("core", spec)
            for name, spec in _core_data_types().items()}
        hooks: list[tuple[str, Callable]] = []
        rules: dict[str, Rule] = {r.name: r for r in core_rules()}
        rule_owner: dict[str, str] = {r: "core" for r in rules}
        translators: dict[str, Registered] = {}
        sql_hooks: dict[str, Registered] = {}

        def claim_word(kind: str, word: str, syntax: str):
            if word in words:
                raise ConflictError(kind, word, [words[word][1], syntax])
            words[word] = (kind, syntax)

        for name, row in self._rows.items():
            entry: RegistryEntry = row["entry"]
            if self._enabled(row, "statement_keywords"):
                for kw in entry.statement_keywords:
                    kw = kw.upper()
                    claim_word("statement_keyword", kw, name)
                    keywords[kw] = name
            if self._enabled(row, "literal_openers"):
                for spec in entry.literal_openers:
                    if spec.opener in openers:
                        raise ConflictError("literal_opener", spec.opener,
                                            [openers[spec.opener].syntax, name])
                    openers[spec.opener] = Registered(name, spec)
            if self._enabled(row, "infix_operators"):
                for spec in entry.infix_operators:
                    op = spec.name.upper()
                    claim_word("infix_operator", op, name)
                    operators[op] = Registered(name, spec)
            if self._enabled(row, "data_types"):
                for spec in entry.data_types:
                    tn = spec.name.lower()
                    if tn in data_types:
                        raise ConflictError("data_type", tn,
                                            [data_types[tn].syntax, name])
                    data_types[tn] = Registered(name, spec)
            if self._enabled(row, "analyzer_hooks"):
                hooks.extend((name, hook) for hook in entry.analyzer_hooks)
            if self._enabled(row, "rules"):
                for rule in entry.rules:
                    if rule.name in rules:
                        raise ConflictError("rule", rule.name,
                                            [rule_owner[rule.name], name])
                    rules[rule.name] = rule
                    rule_owner[rule.name] = name
            if self._enabled(row, "physical_translators"):
                for kind, factory in entry.physical_translators:
                    translators[kind] = Registered(name, factory)
            if self._enabled(row, "sql_approximation_hooks"):
                for kind, hook in entry.sql_approximation_hooks:
                    sql_hooks[kind] = Registered(name, hook)

        return KernelProfile(
            statement_keywords=keywords,
            literal_openers=openers,
            infix_operators=operators,
            data_types=data_types,
            analyzer_hooks=tuple(hooks),
            rules=rules,
            physical_translators=translators,
            sql_approximation_hooks=sql_hooks,
        )


def core_profile() -> KernelProfile:
    """A profile with no extensions at all."""
    return Registry().build_profile()


def default_registry() -> Registry:
    """The registry a stock engine boots with: every built-in extension
    registered and enabled."""
    from .extensions import simsel

    registry = Registry()
    simsel.register_into(registry)
    return registry

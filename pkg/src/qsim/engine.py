"""One-stop facade over the pipeline, shared by the CLI and the HTTP service.

Holds the registry, the current profile snapshot, the catalog, the session's
rule list, and a bounded query history.  `run_query` walks the full pipeline
and tags any failure with the stage it came from, so front ends can report
`parse`, `analyze`, `optimize`, `estimate` or `execute` errors uniformly.

A query uses the profile snapshot taken when it starts; toggling a syntax
mid-flight affects later queries, never running ones.
"""
from __future__ import annotations

import datetime
import threading
from dataclasses import dataclass
from typing import Any

from . import cost as cost_mod
from . import external as external_mod
from .catalog import Catalog
from .errors import (
    BackendError,
    QsimError,
    QueryError,
    UntranslatableNode,
)
from .executor import compile_plan, execute
from .optimizer import DEFAULT_MAX_ITERATIONS, optimize
from .parser import parse
from .plan import build_logical, serialize_plan
from .registry import Registry, default_registry

HISTORY_CAP = 1000

ESTIMATORS = ("builtin",) + tuple(external_mod.BACKENDS)


@dataclass
class HistoryEntry:
    id: int
    sql: str
    rules: list[str]
    cost_initial: float
    cost_optimized: float
    elapsed_ms: float
    rows_returned: int
    issued_at: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id, "sql": self.sql, "rules": list(self.rules),
            "cost_initial": self.cost_initial,
            "cost_optimized": self.cost_optimized,
            "elapsed_ms": self.elapsed_ms,
            "rows_returned": self.rows_returned,
            "issued_at": self.issued_at,
        }


class Engine:
    """A registry, a catalog, session rules and history behind one lock."""

    def __init__(self, registry: Registry | None = None):
        self.registry = registry if registry is not None else default_registry()
        self._profile = self.registry.build_profile()
        self.catalog = Catalog()
        self._session_rules: list[str] = []
        self._history: list[HistoryEntry] = []
        self._history_seq = 0
        self._lock = threading.RLock()

    @property
    def profile(self):
        with self._lock:
            return self._profile

    # --- queries ----------------------------------------------------------

    def run_query(self, sql: str, rules: list[str] | None = None,
                  estimator: str = "builtin",
                  max_iterations: int = DEFAULT_MAX_ITERATIONS) -> dict[str, Any]:
        """Parse, plan, optimize, estimate, execute; record history on success."""
        if estimator not in ESTIMATORS:
            raise QueryError("estimate", QsimError(
                f"unknown estimator {estimator!r}; expected one of {', '.join(ESTIMATORS)}"))
        with self._lock:
            profile = self._profile
            rule_names = list(rules) if rules is not None else list(self._session_rules)

            try:
                stmt = parse(sql, profile)
            except QsimError as exc:
                raise QueryError("parse", exc) from exc

            try:
                initial = build_logical(stmt, self.catalog, profile)
            except QsimError as exc:
                raise QueryError("analyze", exc) from exc

            ops = profile.operator_specs()
            try:
                rule_objs = profile.resolve_rules(rule_names)
                optimized, trace = optimize(initial, rule_objs,
                                            max_iterations=max_iterations, ops=ops)
            except QsimError as exc:
                raise QueryError("optimize", exc) from exc

            warning = None
            try:
                report_initial = cost_mod.estimate(initial, self.catalog, ops)
                report_optimized = cost_mod.estimate(optimized, self.catalog, ops)
            except QsimError as exc:
                raise QueryError("estimate", exc) from exc
            cost_initial = report_initial.total_cost
            cost_optimized = report_optimized.total_cost
            if estimator != "builtin":
                try:
                    bundle_initial = external_mod.translate_to_sql(
                        initial, self.catalog, profile)
                    bundle_optimized = external_mod.translate_to_sql(
                        optimized, self.catalog, profile)
                    cost_initial = external_mod.external_cost(bundle_initial, estimator)
                    cost_optimized = external_mod.external_cost(bundle_optimized, estimator)
                except (BackendError, UntranslatableNode) as exc:
                    warning = (f"external estimator {estimator!r} unavailable "
                               f"({exc.message}); showing built-in estimates")
                    cost_initial = report_initial.total_cost
                    cost_optimized = report_optimized.total_cost

            try:
                result = execute(compile_plan(optimized, self.catalog, profile))
            except QsimError as exc:
                raise QueryError("execute", exc) from exc

            entry = HistoryEntry(
                id=self._next_history_id(),
                sql=sql,
                rules=rule_names,
                cost_initial=cost_initial,
                cost_optimized=cost_optimized,
                elapsed_ms=round(result.elapsed * 1000.0, 3),
                rows_returned=len(result.rows),
                issued_at=datetime.datetime.now(datetime.timezone.utc)
                    .isoformat(timespec="milliseconds"),
            )
            self._history.append(entry)
            del self._history[:-HISTORY_CAP]

            out = {
                "columns": [c.name for c in result.schema.columns],
                "rows": [self._json_row(row, profile) for row in result.rows],
                "initial_plan": serialize_plan(initial, report_initial.nodes),
                "optimized_plan": serialize_plan(optimized, report_optimized.nodes),
                "cost_initial": cost_initial,
                "cost_optimized": cost_optimized,
                "elapsed_ms": entry.elapsed_ms,
                "applied_rules": [
                    {"iteration": t.iteration, "rule": t.rule,
                     "path": t.path_text, "change": t.summary}
                    for t in trace.entries],
                "iterations": trace.iterations,
                "stats": result.stats,
                "history_id": entry.id,
            }
            if warning is not None:
                out["warning"] = warning
            return out

    @staticmethod
    def _json_row(row: tuple, profile) -> list[Any]:
        out = []
        for cell in row:
            if isinstance(cell, (int, float, str)):
                out.append(cell)
                continue
            dtype = getattr(cell, "dtype", None)
            registered = profile.data_types.get(dtype.name) if dtype is not None else None
            out.append(registered.spec.render(cell) if registered else str(cell))
        return out

    def _next_history_id(self) -> int:
        self._history_seq += 1
        return self._history_seq

    # --- session rules ------------------------------------------------------

    def get_session_rules(self) -> list[str]:
        with self._lock:
            return list(self._session_rules)

    def set_session_rules(self, names: list[str]) -> list[str]:
        with self._lock:
            self._profile.resolve_rules(names)
            self._session_rules = list(names)
            return list(self._session_rules)

    def default_rule_names(self) -> list[str]:
        """Every registered rule, core first; what `qsim query` runs with."""
        with self._lock:
            return list(self._profile.rules)

    def rules_catalog(self) -> list[dict[str, str]]:
        with self._lock:
            return [{"name": r.name, "origin": r.origin, "description": r.description}
                    for r in self._profile.rules.values()]

    # --- history -------------------------------------------------------------

    def history(self) -> list[dict[str, Any]]:
        with self._lock:
            return [e.to_dict() for e in self._history]

    def clear_history(self) -> int:
        with self._lock:
            n = len(self._history)
            self._history.clear()
            return n

    # --- datasets ------------------------------------------------------------

    def load_table(self, name: str, csv_text: str, replace: bool = False) -> dict[str, Any]:
        with self._lock:
            relation = self.catalog.load_csv(name, csv_text, self._profile,
                                             replace=replace)
            return self._dataset_info(relation)

    def drop_table(self, name: str) -> None:
        with self._lock:
            self.catalog.drop_table(name)

    def datasets(self) -> list[dict[str, Any]]:
        with self._lock:
            return [self._dataset_info(rel) for rel in self.catalog.tables()]

    @staticmethod
    def _dataset_info(relation) -> dict[str, Any]:
        return {
            "name": relation.name,
            "columns": [{"name": c.name, "type": str(c.dtype)}
                        for c in relation.schema.columns],
            "rows": relation.row_count,
        }

    # --- syntax toggles ---------------------------------------------------------

    def syntaxes(self) -> list[dict[str, Any]]:
        with self._lock:
            return self.registry.syntaxes()

    def set_syntax_enabled(self, name: str, enabled: bool) -> None:
        with self._lock:
            before = [s for s in self.registry.syntaxes() if s["name"] == name]
            self.registry.set_syntax_enabled(name, enabled)
            try:
                self._profile = self.registry.build_profile()
            except QsimError:
                if before:
                    self.registry.set_syntax_enabled(name, before[0]["enabled"])
                raise

    def set_entry_point_enabled(self, name: str, entry_point: str, enabled: bool) -> None:
        with self._lock:
            before = [s for s in self.registry.syntaxes() if s["name"] == name]
            self.registry.set_entry_point_enabled(name, entry_point, enabled)
            try:
                self._profile = self.registry.build_profile()
            except QsimError:
                if before:
                    self.registry.set_entry_point_enabled(
                        name, entry_point, before[0]["entry_points"][entry_point])
                raise

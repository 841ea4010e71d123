"""Error types raised by the query engine.

Errors that point into query text carry a character offset so front ends can
mark the offending spot.  Errors are grouped by the pipeline stage that
raises them; the pipeline wrapper in `engine` tags each one with its stage
name before it crosses an external interface.
"""
from __future__ import annotations


class QsimError(Exception):
    """Base class for all engine errors."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.message = message
        self.position = position


# --- catalog ---------------------------------------------------------------

class CatalogError(QsimError):
    pass


class DuplicateTable(CatalogError):
    pass


class UnknownTable(CatalogError):
    pass


class InvalidTableName(CatalogError):
    pass


class UnknownType(CatalogError):
    pass


class CellParseError(CatalogError):
    def __init__(self, row: int, column: str, reason: str):
        super().__init__(f"row {row}, column {column!r}: {reason}")
        self.row = row
        self.column = column
        self.reason = reason


class ArityMismatch(CatalogError):
    def __init__(self, row: int, expected: int, found: int):
        super().__init__(f"row {row}: expected {expected} cells, found {found}")
        self.row = row
        self.expected = expected
        self.found = found


# --- lexing / parsing ------------------------------------------------------

class LexError(QsimError):
    pass


class QuerySyntaxError(QsimError):
    def __init__(self, message: str, position: int | None = None,
                 expected: str | None = None, found: str | None = None):
        super().__init__(message, position)
        self.expected = expected
        self.found = found


class UnknownKeyword(QsimError):
    pass


class GatedFeature(QsimError):
    """An extension token appeared under a statement keyword that does not admit it."""


# --- analysis --------------------------------------------------------------

class AnalysisError(QsimError):
    pass


class UnknownColumn(AnalysisError):
    pass


class AmbiguousColumn(AnalysisError):
    pass


class TypeMismatch(AnalysisError):
    pass


class DimMismatch(TypeMismatch):
    pass


class InvalidPlan(AnalysisError):
    """A plan tree violates a structural or typing invariant."""


# --- optimizer -------------------------------------------------------------

class UnknownRule(QsimError):
    pass


class DuplicateRule(QsimError):
    pass


class RuleViolation(QsimError):
    """A rewrite rule produced a plan that fails validation."""

    def __init__(self, rule: str, reason: str):
        super().__init__(f"rule {rule}: {reason}")
        self.rule = rule
        self.reason = reason


# --- cost / translation ----------------------------------------------------

class UntranslatableNode(QsimError):
    pass


class BackendError(QsimError):
    """An external estimator backend failed or produced garbage."""


# --- execution -------------------------------------------------------------

class NoTranslator(QsimError):
    pass


class RuntimeTypeError(QsimError):
    """Defensive check: operand values did not match their static types."""


# --- registry --------------------------------------------------------------

class RegistryError(QsimError):
    pass


class DuplicateSyntax(RegistryError):
    pass


class UnknownSyntax(RegistryError):
    pass


class UnknownEntryPoint(RegistryError):
    pass


class ConflictError(RegistryError):
    def __init__(self, kind: str, name: str, claimants: list[str]):
        super().__init__(
            f"conflicting {kind} {name!r} claimed by {', '.join(sorted(claimants))}")
        self.kind = kind
        self.name = name
        self.claimants = claimants


# --- pipeline wrapper ------------------------------------------------------

class QueryError(QsimError):
    """A stage-tagged error as reported to CLI and HTTP clients."""

    def __init__(self, stage: str, cause: QsimError):
        super().__init__(cause.message, cause.position)
        self.stage = stage
        self.cause = cause

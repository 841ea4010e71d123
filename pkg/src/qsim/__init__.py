"""qsim: an extensible relational query engine simulator.

The pipeline is SQL text -> AST -> logical plan -> rule-based optimization ->
cost estimation -> volcano-style execution.  Extensions register new syntax,
types, operators, plan nodes, rewrite rules and physical operators through
the registry; the bundled `simsel` extension adds vector similarity
selection.
"""
from .catalog import Catalog
from .cost import CostReport, estimate
from .data import make_relation
from .engine import Engine
from .errors import QsimError, QueryError
from .executor import compile_plan, execute, run_plan
from .optimizer import core_rules, optimize
from .parser import parse
from .plan import build_logical, serialize_plan, validate_plan
from .registry import (
    KernelProfile,
    Registry,
    RegistryEntry,
    core_profile,
    default_registry,
)

__version__ = "0.1.0"

__all__ = [
    "Catalog",
    "CostReport",
    "Engine",
    "KernelProfile",
    "QsimError",
    "QueryError",
    "Registry",
    "RegistryEntry",
    "build_logical",
    "compile_plan",
    "core_profile",
    "core_rules",
    "default_registry",
    "estimate",
    "execute",
    "make_relation",
    "optimize",
    "parse",
    "run_plan",
    "serialize_plan",
    "validate_plan",
    "__version__",
]

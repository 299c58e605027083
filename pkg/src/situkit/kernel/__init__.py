"""Situation-calculus kernel: terms, contracts, registry, and evaluation.

Nothing in this package knows about any concrete fluent or action; those
are plugged in through the registry against the contracts in
``situkit.kernel.contracts``.
"""
from .contracts import ActionKind, FluentKind
from .engine import Engine, HoldsCache, StateSnapshot, snapshot_holds
from .errors import (
    DuplicateName,
    NonGround,
    NotPossible,
    QueryError,
    SituError,
    UnboundNegation,
    UnknownKb,
    UnknownKind,
)
from .query import (
    And,
    Atom,
    Cmp,
    Not,
    Or,
    QueryExpr,
    Some,
    free_variables,
    query_from_wire,
    query_to_wire,
    validate,
)
from .terms import (
    ActionInstance,
    Bindings,
    Compound,
    Do,
    FluentInstance,
    Initial,
    Situation,
    Sym,
    Term,
    Triple,
    Var,
    action,
    canonical_key,
    fluent,
    is_ground,
    now_utc,
    same_history,
    substitute,
    term_from_wire,
    term_to_wire,
    unify,
)
from .registry import FAMILIES, Registry

__all__ = [
    "ActionInstance",
    "ActionKind",
    "And",
    "Atom",
    "Bindings",
    "Cmp",
    "Compound",
    "Do",
    "DuplicateName",
    "Engine",
    "FAMILIES",
    "FluentInstance",
    "FluentKind",
    "HoldsCache",
    "Initial",
    "NonGround",
    "Not",
    "NotPossible",
    "Or",
    "QueryError",
    "QueryExpr",
    "Registry",
    "Situation",
    "SituError",
    "Some",
    "StateSnapshot",
    "Sym",
    "Term",
    "Triple",
    "UnboundNegation",
    "UnknownKb",
    "UnknownKind",
    "Var",
    "action",
    "canonical_key",
    "fluent",
    "free_variables",
    "is_ground",
    "now_utc",
    "query_from_wire",
    "query_to_wire",
    "same_history",
    "snapshot_holds",
    "substitute",
    "term_from_wire",
    "term_to_wire",
    "unify",
    "validate",
]

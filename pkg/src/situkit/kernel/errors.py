"""Error vocabulary shared by the kernel and everything built on it.

Every error carries a stable machine ``code`` so service layers can map
exceptions to wire-level error payloads without string matching.
"""
from __future__ import annotations


class SituError(Exception):
    """Base class; ``code`` is the stable machine-readable identifier."""

    code = "error"


class UnknownKind(SituError):
    """A fluent or action kind name is not registered."""

    code = "unknown-kind"

    def __init__(self, family: str, name: str):
        super().__init__(f"no {family} kind registered under {name!r}")
        self.family = family
        self.name = name


class UnknownKb(SituError):
    """An initial-knowledge provider id is not registered."""

    code = "unknown-kb"

    def __init__(self, kb_id: str):
        super().__init__(f"no initial knowledge registered under {kb_id!r}")
        self.kb_id = kb_id


class DuplicateName(SituError):
    """A second registration attempted under an already-taken name."""

    code = "duplicate-name"

    def __init__(self, family: str, name: str):
        super().__init__(f"{family} name {name!r} already registered")
        self.family = family
        self.name = name


class NotPossible(SituError):
    """The action's precondition does not hold in the situation.

    ``reason`` refines the failure where the action kind can tell
    (e.g. the intervene reason codes); "not-possible" otherwise.
    """

    code = "not-possible"

    def __init__(self, action, situation, reason: str = "not-possible"):
        super().__init__(f"{action!r} is not possible ({reason})")
        self.action = action
        self.situation = situation
        self.reason = reason


class NonGround(SituError):
    """A ground instance was required but the value contains variables."""

    code = "non-ground"


class UnboundNegation(SituError):
    """A not/cmp sub-expression still contains free variables at evaluation."""

    code = "unbound-negation"


class QueryError(SituError):
    """A query expression is structurally invalid (e.g. shadowed variable)."""

    code = "query-error"

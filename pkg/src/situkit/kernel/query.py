"""Formula language over fluents: atoms, connectives, quantifier, comparison.

Expressions follow the query shapes used in action preconditions, e.g.::

    Not(Some("n", And(Atom(fluent("dismissed", q, Var("n"))),
                      Cmp(Var("n"), ">=", level))))

``Some`` declares a variable for the scope of its body; it does not project
the variable out of the returned bindings.  Negation is negation-as-failure
and requires its body to be ground (no free variables) under the bindings
accumulated so far; the same applies to comparisons.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .errors import QueryError
from .terms import (
    FluentInstance,
    Term,
    term_from_wire,
    term_to_wire,
    variables,
)

CMP_OPS = ("=", "!=", "<", "<=", ">", ">=")


@dataclass(frozen=True)
class Atom:
    fluent: FluentInstance


@dataclass(frozen=True)
class And:
    left: "QueryExpr"
    right: "QueryExpr"


@dataclass(frozen=True)
class Or:
    left: "QueryExpr"
    right: "QueryExpr"


@dataclass(frozen=True)
class Not:
    body: "QueryExpr"


@dataclass(frozen=True)
class Some:
    var: str
    body: "QueryExpr"


@dataclass(frozen=True)
class Cmp:
    left: Term
    op: str
    right: Term

    def __post_init__(self) -> None:
        if self.op not in CMP_OPS:
            raise QueryError(f"unknown comparison operator {self.op!r}")


QueryExpr = Union[Atom, And, Or, Not, Some, Cmp]


def free_variables(expr: QueryExpr) -> set[str]:
    """Variables not bound by an enclosing ``Some``."""
    if isinstance(expr, Atom):
        out: set[str] = set()
        for arg in expr.fluent.args:
            out.update(variables(arg))
        return out
    if isinstance(expr, (And, Or)):
        return free_variables(expr.left) | free_variables(expr.right)
    if isinstance(expr, Not):
        return free_variables(expr.body)
    if isinstance(expr, Some):
        return free_variables(expr.body) - {expr.var}
    if isinstance(expr, Cmp):
        return set(variables(expr.left)) | set(variables(expr.right))
    raise TypeError(f"not a query expression: {expr!r}")


def validate(expr: QueryExpr, in_scope: frozenset[str] = frozenset()) -> None:
    """Reject variable shadowing: names must be distinct within one scope."""
    if isinstance(expr, (And, Or)):
        validate(expr.left, in_scope)
        validate(expr.right, in_scope)
    elif isinstance(expr, Not):
        validate(expr.body, in_scope)
    elif isinstance(expr, Some):
        if expr.var in in_scope:
            raise QueryError(f"variable {expr.var!r} shadows an enclosing scope")
        validate(expr.body, in_scope | {expr.var})


def fluent_kinds(expr: QueryExpr) -> Iterator[str]:
    """Yield every fluent kind name referenced by the expression."""
    if isinstance(expr, Atom):
        yield expr.fluent.kind
    elif isinstance(expr, (And, Or)):
        yield from fluent_kinds(expr.left)
        yield from fluent_kinds(expr.right)
    elif isinstance(expr, (Not, Some)):
        yield from fluent_kinds(expr.body)


def query_to_wire(expr: QueryExpr):
    """JSON-serializable form, used by intervention-bank config files."""
    if isinstance(expr, Atom):
        return {"atom": {"kind": expr.fluent.kind, "args": [term_to_wire(a) for a in expr.fluent.args]}}
    if isinstance(expr, And):
        return {"and": [query_to_wire(expr.left), query_to_wire(expr.right)]}
    if isinstance(expr, Or):
        return {"or": [query_to_wire(expr.left), query_to_wire(expr.right)]}
    if isinstance(expr, Not):
        return {"not": query_to_wire(expr.body)}
    if isinstance(expr, Some):
        return {"some": [expr.var, query_to_wire(expr.body)]}
    if isinstance(expr, Cmp):
        return {"cmp": [term_to_wire(expr.left), expr.op, term_to_wire(expr.right)]}
    raise TypeError(f"not a query expression: {expr!r}")


def query_from_wire(value) -> QueryExpr:
    """Inverse of ``query_to_wire``; raises QueryError on malformed input."""
    if not isinstance(value, dict) or len(value) != 1:
        raise QueryError(f"malformed query: {value!r}")
    tag, payload = next(iter(value.items()))
    try:
        if tag == "atom":
            args = tuple(term_from_wire(a) for a in payload.get("args", []))
            return Atom(FluentInstance(payload["kind"], args))
        if tag == "and":
            return And(query_from_wire(payload[0]), query_from_wire(payload[1]))
        if tag == "or":
            return Or(query_from_wire(payload[0]), query_from_wire(payload[1]))
        if tag == "not":
            return Not(query_from_wire(payload))
        if tag == "some":
            return Some(payload[0], query_from_wire(payload[1]))
        if tag == "cmp":
            return Cmp(term_from_wire(payload[0]), payload[1], term_from_wire(payload[2]))
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise QueryError(f"malformed query: {value!r}") from exc
    raise QueryError(f"unknown query node {tag!r}")

"""Ground term language, fluent/action instances, and situation terms.

Terms are plain immutable values: Python ``int`` and ``str`` are used
directly, symbols and variables are small frozen dataclasses, and two
compound shapes exist (``Triple`` for subject/predicate/object statements
and ``Compound`` for everything else, e.g. ``term(brakes)``).

A situation is either ``Initial(kb_id)`` or ``Do(action, prior)``.  Every
situation carries a structural digest computed at construction time; two
situations share a digest exactly when their action histories agree on
(kind, args).  Actor and timestamp metadata are deliberately excluded so
that replaying a log across machines or clock skew yields the same digest.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Iterator, Union


@dataclass(frozen=True)
class Sym:
    """A symbolic constant (the analog of a Prolog atom)."""

    name: str

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Var:
    """A query variable; never appears in a done action or stored event."""

    name: str

    def __repr__(self) -> str:
        return f"?{self.name}"


@dataclass(frozen=True)
class Triple:
    """A subject/predicate/object statement.

    Components must be non-empty.  Subject and predicate are symbols (or
    variables in query patterns); the object may also be a string or an
    integer.
    """

    subject: "Term"
    predicate: "Term"
    object: "Term"

    def __post_init__(self) -> None:
        for component in (self.subject, self.predicate, self.object):
            if isinstance(component, (Sym, Var)) and not component.name:
                raise ValueError("triple components must be non-empty")
            if isinstance(component, str) and not component:
                raise ValueError("triple components must be non-empty")

    def __repr__(self) -> str:
        return f"({self.subject!r} {self.predicate!r} {self.object!r})"


@dataclass(frozen=True)
class Compound:
    """A functor applied to argument terms, e.g. ``term(brakes)``."""

    functor: str
    args: tuple["Term", ...]

    def __repr__(self) -> str:
        inner = ", ".join(repr(a) for a in self.args)
        return f"{self.functor}({inner})"


Term = Union[int, str, Sym, Var, Triple, Compound]


def is_ground(term: Term) -> bool:
    """True when no variable occurs anywhere in the term."""
    if isinstance(term, Var):
        return False
    if isinstance(term, Triple):
        return all(is_ground(t) for t in (term.subject, term.predicate, term.object))
    if isinstance(term, Compound):
        return all(is_ground(t) for t in term.args)
    return True


def variables(term: Term) -> Iterator[str]:
    """Yield the names of variables occurring in the term."""
    if isinstance(term, Var):
        yield term.name
    elif isinstance(term, Triple):
        for t in (term.subject, term.predicate, term.object):
            yield from variables(t)
    elif isinstance(term, Compound):
        for t in term.args:
            yield from variables(t)


def canonical_key(term: Term):
    """A sort key giving a total, reproducible order over all terms."""
    if isinstance(term, bool):
        return (0, int(term))
    if isinstance(term, int):
        return (0, term)
    if isinstance(term, str):
        return (1, term)
    if isinstance(term, Sym):
        return (2, term.name)
    if isinstance(term, Var):
        return (3, term.name)
    if isinstance(term, Triple):
        return (4, (canonical_key(term.subject), canonical_key(term.predicate), canonical_key(term.object)))
    if isinstance(term, Compound):
        return (5, term.functor, tuple(canonical_key(a) for a in term.args))
    raise TypeError(f"not a term: {term!r}")


def term_to_wire(term: Term):
    """Encode a term as a JSON-serializable value (the event-log format)."""
    if isinstance(term, bool):
        raise TypeError("booleans are not terms")
    if isinstance(term, (int, str)):
        return term
    if isinstance(term, Sym):
        return {"s": term.name}
    if isinstance(term, Var):
        return {"v": term.name}
    if isinstance(term, Triple):
        return {"t": [term_to_wire(term.subject), term_to_wire(term.predicate), term_to_wire(term.object)]}
    if isinstance(term, Compound):
        return {"c": [term.functor, *[term_to_wire(a) for a in term.args]]}
    raise TypeError(f"not a term: {term!r}")


def term_from_wire(value) -> Term:
    """Decode a term from its wire form; raises ValueError on malformed input."""
    if isinstance(value, bool):
        raise ValueError("booleans are not terms")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        return value
    if isinstance(value, dict) and len(value) == 1:
        tag, payload = next(iter(value.items()))
        if tag == "s" and isinstance(payload, str):
            return Sym(payload)
        if tag == "v" and isinstance(payload, str):
            return Var(payload)
        if tag == "t" and isinstance(payload, list) and len(payload) == 3:
            return Triple(*[term_from_wire(p) for p in payload])
        if tag == "c" and isinstance(payload, list) and payload and isinstance(payload[0], str):
            return Compound(payload[0], tuple(term_from_wire(p) for p in payload[1:]))
    raise ValueError(f"malformed term: {value!r}")


def terms_to_bytes(terms: tuple[Term, ...]) -> bytes:
    """Canonical byte serialization of an argument tuple, used for digests."""
    return json.dumps([term_to_wire(t) for t in terms], separators=(",", ":"), ensure_ascii=False).encode("utf-8")


Bindings = dict[str, Term]


def substitute(term: Term, bindings: Bindings) -> Term:
    """Replace bound variables in the term by their values."""
    if isinstance(term, Var):
        return bindings.get(term.name, term)
    if isinstance(term, Triple):
        return Triple(
            substitute(term.subject, bindings),
            substitute(term.predicate, bindings),
            substitute(term.object, bindings),
        )
    if isinstance(term, Compound):
        return Compound(term.functor, tuple(substitute(a, bindings) for a in term.args))
    return term


def unify(pattern: Term, ground: Term, bindings: Bindings) -> Bindings | None:
    """Match a pattern against a ground term, extending ``bindings``.

    Returns the extended bindings on success, None on mismatch.  The input
    dict is never mutated.  ``ground`` must contain no variables.
    """
    if isinstance(pattern, Var):
        bound = bindings.get(pattern.name)
        if bound is None:
            out = dict(bindings)
            out[pattern.name] = ground
            return out
        return bindings if bound == ground else None
    if isinstance(pattern, Triple) and isinstance(ground, Triple):
        for p, g in ((pattern.subject, ground.subject), (pattern.predicate, ground.predicate), (pattern.object, ground.object)):
            next_bindings = unify(p, g, bindings)
            if next_bindings is None:
                return None
            bindings = next_bindings
        return bindings
    if isinstance(pattern, Compound) and isinstance(ground, Compound):
        if pattern.functor != ground.functor or len(pattern.args) != len(ground.args):
            return None
        for p, g in zip(pattern.args, ground.args):
            next_bindings = unify(p, g, bindings)
            if next_bindings is None:
                return None
            bindings = next_bindings
        return bindings
    return bindings if pattern == ground else None


def now_utc() -> datetime:
    """Current UTC time truncated to millisecond resolution."""
    now = datetime.now(timezone.utc)
    return now.replace(microsecond=(now.microsecond // 1000) * 1000)


@dataclass(frozen=True)
class FluentInstance:
    """A fluent kind name applied to argument terms.

    Variables are permitted in the args for query patterns; ``holds``
    requires a ground instance.
    """

    kind: str
    args: tuple[Term, ...] = ()

    @property
    def ground(self) -> bool:
        return all(is_ground(a) for a in self.args)

    def digest(self) -> bytes:
        return hashlib.sha256(self.kind.encode("utf-8") + b"\x00" + terms_to_bytes(self.args)).digest()

    def __repr__(self) -> str:
        inner = ", ".join(repr(a) for a in self.args)
        return f"{self.kind}({inner})"


@dataclass(frozen=True)
class ActionInstance:
    """An action kind name, argument terms, and actor/timestamp metadata.

    The metadata never participates in fluent semantics or situation
    digests; it exists for the event log and audit trails.
    """

    kind: str
    args: tuple[Term, ...] = ()
    actor: str = "anon"
    at: datetime = field(default_factory=now_utc, compare=False)

    @property
    def ground(self) -> bool:
        return all(is_ground(a) for a in self.args)

    def signature(self) -> bytes:
        """The digest contribution: kind and args only."""
        return self.kind.encode("utf-8") + b"\x00" + terms_to_bytes(self.args)

    def __repr__(self) -> str:
        inner = ", ".join(repr(a) for a in self.args)
        return f"{self.kind}({inner})"


def fluent(kind: str, *args: Term) -> FluentInstance:
    """Shorthand constructor for a fluent instance."""
    return FluentInstance(kind, tuple(args))


def action(kind: str, *args: Term, actor: str = "anon", at: datetime | None = None) -> ActionInstance:
    """Shorthand constructor for an action instance."""
    if at is None:
        return ActionInstance(kind, tuple(args), actor)
    return ActionInstance(kind, tuple(args), actor, at)


class Situation:
    """Base class for situation terms; see ``Initial`` and ``Do``."""

    digest: bytes

    def history(self) -> list[ActionInstance]:
        """Actions from oldest to newest.  Iterative: histories can be long."""
        actions: list[ActionInstance] = []
        cur = self
        while isinstance(cur, Do):
            actions.append(cur.action)
            cur = cur.prior
        actions.reverse()
        return actions

    def root(self) -> "Initial":
        cur = self
        while isinstance(cur, Do):
            cur = cur.prior
        assert isinstance(cur, Initial)
        return cur

    def __len__(self) -> int:
        n = 0
        cur = self
        while isinstance(cur, Do):
            n += 1
            cur = cur.prior
        return n


@dataclass(frozen=True, eq=False)
class Initial(Situation):
    """The initial situation, naming the initial-knowledge provider."""

    kb_id: str

    def __post_init__(self) -> None:
        digest = hashlib.sha256(b"initial\x00" + self.kb_id.encode("utf-8")).digest()
        object.__setattr__(self, "digest", digest)

    def __eq__(self, other) -> bool:
        return isinstance(other, Initial) and other.kb_id == self.kb_id

    def __hash__(self) -> int:
        return hash(("initial", self.kb_id))

    def __repr__(self) -> str:
        return f"s0[{self.kb_id}]"


@dataclass(frozen=True, eq=False)
class Do(Situation):
    """The situation that results from doing ``action`` in ``prior``.

    Construct through ``Engine.do`` so the action's precondition is
    enforced; building ``Do`` directly bypasses the legality check.
    """

    action: ActionInstance
    prior: Situation

    def __post_init__(self) -> None:
        digest = hashlib.sha256(self.prior.digest + b"\x00" + self.action.signature()).digest()
        object.__setattr__(self, "digest", digest)

    def __eq__(self, other) -> bool:
        # Digest equality is the cheap test; same_history resolves the
        # (astronomically unlikely) collision case structurally.
        return isinstance(other, Do) and other.digest == self.digest and same_history(self, other)

    def __hash__(self) -> int:
        return hash(self.digest)

    def __repr__(self) -> str:
        return f"do({self.action!r}, {self.prior!r})"


def same_history(a: Situation, b: Situation) -> bool:
    """Structural comparison of two situations on (kind, args) histories."""
    while True:
        if a is b:
            return True
        if isinstance(a, Initial) or isinstance(b, Initial):
            return isinstance(a, Initial) and isinstance(b, Initial) and a.kb_id == b.kb_id
        assert isinstance(a, Do) and isinstance(b, Do)
        if a.action.kind != b.action.kind or a.action.args != b.action.args:
            return False
        a, b = a.prior, b.prior

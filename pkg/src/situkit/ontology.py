"""Ontology authoring over the kernel: triples, seed knowledge, and the
assert/retract action pair.

Registers five kinds:

* fluent ``asserted(T)``            - user-asserted triples (assert/retract)
* fluent ``initial_assertion(S,P,O)`` - seed triples, true in every situation
* fluent ``known(S,P,O)``           - union view: seed or currently asserted
* action ``add_data(T)``            - possible iff T is not asserted
* action ``delete_data(T)``         - possible iff T is asserted

User assertions and seed knowledge are disjoint namespaces: ``delete_data``
cannot remove seed triples, and no user action changes ``initial_assertion``.
"""
from __future__ import annotations

import re
import threading
from pathlib import Path
from typing import Iterable, Iterator, Protocol, runtime_checkable

from .kernel import (
    ActionInstance,
    ActionKind,
    Atom,
    FluentInstance,
    FluentKind,
    Not,
    Registry,
    Situation,
    Sym,
    Triple,
    Var,
    fluent,
    unify,
)


@runtime_checkable
class InitialKnowledge(Protocol):
    """The seed-knowledge contract: enumerate ground triples matching a
    pattern (components may be variables).  Finite and stable across calls.
    """

    def asserted_in_s0(self, pattern: Triple) -> Iterator[Triple]: ...


class InMemoryKb:
    """Seed knowledge held as a plain set of ground triples."""

    def __init__(self, triples: Iterable[Triple] = ()):
        self._triples = sorted(set(triples), key=_triple_key)
        for t in self._triples:
            if not all(_component_ground(c) for c in (t.subject, t.predicate, t.object)):
                raise ValueError(f"seed triples must be ground: {t!r}")

    def asserted_in_s0(self, pattern: Triple) -> Iterator[Triple]:
        for t in self._triples:
            if unify(pattern, t, {}) is not None:
                yield t

    def triples(self) -> list[Triple]:
        return list(self._triples)


def _component_ground(component) -> bool:
    return not isinstance(component, Var)


def _triple_key(t: Triple):
    from .kernel import canonical_key

    return canonical_key(t)


ANY = Triple(Var("_S"), Var("_P"), Var("_O"))


# -- seed-knowledge file format ------------------------------------------
#
# One triple per line: subject predicate object, whitespace separated.
# Quoted tokens are strings, bare integers are integers, anything else is
# a symbol.  '#' starts a comment except inside quotes.

_TOKEN = re.compile(r'"((?:[^"\\]|\\.)*)"|(\S+)')
_INT = re.compile(r"-?\d+$")


class ParseError(ValueError):
    """A seed-knowledge file line failed to parse."""

    def __init__(self, path: str, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


def _tokenize(line: str):
    tokens = []
    pos = 0
    while pos < len(line):
        rest = line[pos:]
        if rest.lstrip().startswith("#"):
            break
        match = _TOKEN.search(line, pos)
        if match is None:
            break
        if match.group(1) is not None:
            tokens.append(("str", match.group(1).replace('\\"', '"').replace("\\\\", "\\")))
        else:
            word = match.group(2)
            comment = word.find("#")
            if comment == 0:
                break
            if comment > 0:
                word = word[:comment]
                tokens.append(("bare", word))
                break
            tokens.append(("bare", word))
        pos = match.end()
    return tokens


def _token_to_component(token: tuple[str, str]):
    tag, text = token
    if tag == "str":
        return text
    if _INT.match(text):
        return int(text)
    return Sym(text)


def load_initial_kb(path: str | Path) -> InMemoryKb:
    """Parse a seed-knowledge file into a provider.

    Raises ParseError on malformed lines and OSError when unreadable.
    """
    path = Path(path)
    triples: list[Triple] = []
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            tokens = _tokenize(raw.strip())
            if not tokens:
                continue
            if len(tokens) != 3:
                raise ParseError(str(path), line_no, f"expected 3 fields, got {len(tokens)}")
            subject, predicate, obj = (_token_to_component(t) for t in tokens)
            if not isinstance(subject, Sym) or not isinstance(predicate, Sym):
                raise ParseError(str(path), line_no, "subject and predicate must be symbols")
            try:
                triples.append(Triple(subject, predicate, obj))
            except ValueError as exc:
                raise ParseError(str(path), line_no, str(exc)) from None
    return InMemoryKb(triples)


def _serialize_component(component) -> str:
    if isinstance(component, Sym):
        if not component.name or any(c.isspace() for c in component.name) or '"' in component.name or "#" in component.name or _INT.match(component.name):
            raise ValueError(f"symbol {component.name!r} is not representable in the triple file format")
        return component.name
    if isinstance(component, int):
        return str(component)
    if isinstance(component, str):
        return '"' + component.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"not a triple component: {component!r}")


def dump_initial_kb(kb: InMemoryKb, path: str | Path) -> None:
    """Write a provider's triples back in the seed-file format."""
    lines = []
    for t in kb.triples():
        lines.append(" ".join(_serialize_component(c) for c in (t.subject, t.predicate, t.object)))
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


# -- kinds ----------------------------------------------------------------


def _triples_added(situation: Situation) -> set[Triple]:
    """Every triple mentioned by an add_data action in the history."""
    mentioned: set[Triple] = set()
    for act in situation.history():
        if act.kind == "add_data" and act.args and isinstance(act.args[0], Triple):
            mentioned.add(act.args[0])
    return mentioned


class AssertedFluent(FluentKind):
    """asserted(T): false at the start, toggled by add_data/delete_data.

    Last add/delete wins; everything else is frame.
    """

    name = "asserted"

    def initially(self, instance: FluentInstance, kb) -> bool:
        return False

    def successor(self, instance: FluentInstance, act: ActionInstance, held_before: bool) -> bool:
        triple = instance.args[0]
        if act.kind == "add_data" and act.args[0] == triple:
            return True
        if act.kind == "delete_data" and act.args[0] == triple:
            return False
        return held_before

    def candidates(self, situation: Situation) -> Iterator[FluentInstance]:
        for t in _triples_added(situation):
            yield fluent(self.name, t)


class InitialAssertionFluent(FluentKind):
    """initial_assertion(S, P, O): seed knowledge, true in every situation.

    Truth is the union over all registered initial-knowledge providers,
    so the fluent is situation-invariant by construction.
    """

    name = "initial_assertion"

    def __init__(self, registry: Registry):
        self._registry = registry

    def _in_seed(self, subject, predicate, obj) -> bool:
        pattern = Triple(subject, predicate, obj)
        for _, provider in self._registry.initial_kbs():
            for _match in provider.asserted_in_s0(pattern):
                return True
        return False

    def initially(self, instance: FluentInstance, kb) -> bool:
        return self._in_seed(*instance.args)

    def successor(self, instance: FluentInstance, act: ActionInstance, held_before: bool) -> bool:
        return held_before

    def candidates(self, situation: Situation) -> Iterator[FluentInstance]:
        for _, provider in self._registry.initial_kbs():
            for t in provider.asserted_in_s0(ANY):
                yield fluent(self.name, t.subject, t.predicate, t.object)


class KnownFluent(FluentKind):
    """known(S, P, O): the combined ontology view, seed or asserted.

    The view intervention triggers are usually written against; deleting a
    user assertion falls back to seed truth.
    """

    name = "known"

    def __init__(self, registry: Registry):
        self._registry = registry

    def _in_seed(self, subject, predicate, obj) -> bool:
        pattern = Triple(subject, predicate, obj)
        for _, provider in self._registry.initial_kbs():
            for _match in provider.asserted_in_s0(pattern):
                return True
        return False

    def initially(self, instance: FluentInstance, kb) -> bool:
        return self._in_seed(*instance.args)

    def successor(self, instance: FluentInstance, act: ActionInstance, held_before: bool) -> bool:
        triple = Triple(*instance.args)
        if act.kind == "add_data" and act.args[0] == triple:
            return True
        if act.kind == "delete_data" and act.args[0] == triple:
            # Seed membership is static, so this stays a local computation.
            return self._in_seed(*instance.args)
        return held_before

    def candidates(self, situation: Situation) -> Iterator[FluentInstance]:
        for _, provider in self._registry.initial_kbs():
            for t in provider.asserted_in_s0(ANY):
                yield fluent(self.name, t.subject, t.predicate, t.object)
        for t in _triples_added(situation):
            yield fluent(self.name, t.subject, t.predicate, t.object)


def _require_triple(act: ActionInstance) -> Triple:
    if len(act.args) != 1 or not isinstance(act.args[0], Triple):
        raise ValueError(f"{act.kind} takes exactly one triple argument, got {act.args!r}")
    return act.args[0]


class AddDataAction(ActionKind):
    """add_data(T): assert a triple; impossible while T is already asserted."""

    name = "add_data"

    def precondition(self, act: ActionInstance):
        triple = _require_triple(act)
        return Not(Atom(fluent("asserted", triple)))


class DeleteDataAction(ActionKind):
    """delete_data(T): retract a triple; impossible unless T is asserted."""

    name = "delete_data"

    def precondition(self, act: ActionInstance):
        triple = _require_triple(act)
        return Atom(fluent("asserted", triple))


def register_ontology(registry: Registry) -> None:
    """Plug the ontology-authoring kinds into a registry."""
    registry.register_fluent_kind(AssertedFluent())
    registry.register_fluent_kind(InitialAssertionFluent(registry))
    registry.register_fluent_kind(KnownFluent(registry))
    registry.register_action_kind(AddDataAction())
    registry.register_action_kind(DeleteDataAction())


class IdGenerator:
    """Monotone per-project symbol minting; never repeats a symbol.

    When given a path the counter is persisted there, surviving restarts.
    ``next`` is serialized by a lock.
    """

    def __init__(self, path: str | Path | None = None):
        self._path = Path(path) if path is not None else None
        self._lock = threading.Lock()
        self._counter = 0
        if self._path is not None and self._path.exists():
            self._counter = int(self._path.read_text(encoding="utf-8").strip() or "0")

    def next(self, prefix: str | Sym = "id") -> Sym:
        name = prefix.name if isinstance(prefix, Sym) else prefix
        with self._lock:
            self._counter += 1
            if self._path is not None:
                self._path.write_text(str(self._counter), encoding="utf-8")
            return Sym(f"{name}{self._counter}")

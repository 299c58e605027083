"""Contingent scaffolding over the kernel: intervention banks, escalation
levels, and the intervene/dismiss/request-more-help action family.

Registers nine kinds:

* fluent ``dismissed(Q, n)``              - Q was dismissed at level n (permanent)
* fluent ``live_intervention(I, Q, L)``   - an offer is currently showing
* fluent ``intervened(I, Q, L)``          - compatibility name for the same truth
* fluent ``intervention_level(I, Q, L)``  - the contingent level for (I, Q)
* fluent ``intervention_offered(I, Q)``   - (I, Q) was offered at least once
* fluent ``dismissed_at_or_above(Q, L)``  - some dismissal at level >= L exists
* action ``intervene(I, Q, L, T)``
* action ``dismiss_intervention(Q, L)``
* action ``request_intervention_increase(I, Q, L)``

The level for (I, Q) starts at 1 and advances by one per increase request,
clamped to the entry's most intrusive level; it never resets.  Dismissals
are keyed by the trigger query alone, so two entries sharing a trigger
share dismissals.

This module deliberately knows nothing about ontology authoring: triggers
are opaque query expressions, so scaffolding applies to any activity whose
state lives in fluents.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Protocol, runtime_checkable

from .kernel import (
    ActionInstance,
    ActionKind,
    And,
    Atom,
    Cmp,
    Engine,
    FluentInstance,
    FluentKind,
    QueryExpr,
    Registry,
    Situation,
    Some,
    Sym,
    Var,
    fluent,
    action,
    query_from_wire,
    query_to_wire,
)

# Reason codes reported when intervene is rejected.
NOT_TRIGGERED = "not-triggered"
WRONG_LEVEL = "wrong-level"
ALREADY_LIVE = "already-live"
DISMISSED_AT_OR_ABOVE = "dismissed-at-or-above"
NO_LIVE_INTERVENTION = "no-live-intervention"


def trigger_key(expr: QueryExpr) -> Sym:
    """Stable symbol identifying a trigger query (used as the Q term)."""
    wire = json.dumps(query_to_wire(expr), separators=(",", ":"), sort_keys=True)
    return Sym("q" + hashlib.sha256(wire.encode("utf-8")).hexdigest()[:12])


@dataclass(frozen=True)
class Intervention:
    """A bank entry: trigger plus ordered content, level 1 least intrusive."""

    id: str
    trigger: QueryExpr
    levels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.levels:
            raise ValueError(f"intervention {self.id!r} needs at least one level")

    @property
    def max_level(self) -> int:
        return len(self.levels)

    @property
    def key(self) -> Sym:
        return trigger_key(self.trigger)

    def payload(self, level: int) -> str:
        return self.levels[level - 1]


@runtime_checkable
class InterventionBank(Protocol):
    """Bank contract: stream entries matching an id/trigger-key pattern
    (None acts as a wildcard).  Finite; ids unique within a bank."""

    def intervention(self, entry_id: str | None = None, trigger: Sym | None = None) -> Iterator[Intervention]: ...


class InMemoryBank:
    def __init__(self, entries: list[Intervention] | tuple[Intervention, ...] = ()):
        seen: set[str] = set()
        for entry in entries:
            if entry.id in seen:
                raise ValueError(f"duplicate intervention id {entry.id!r}")
            seen.add(entry.id)
        self._entries = tuple(sorted(entries, key=lambda e: e.id))

    def intervention(self, entry_id: str | None = None, trigger: Sym | None = None) -> Iterator[Intervention]:
        for entry in self._entries:
            if entry_id is not None and entry.id != entry_id:
                continue
            if trigger is not None and entry.key != trigger:
                continue
            yield entry

    def entries(self) -> tuple[Intervention, ...]:
        return self._entries


def load_bank(path: str | Path) -> InMemoryBank:
    """Read a bank config file: a JSON list of {id, trigger, levels}."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, list):
        raise ValueError(f"{path}: bank file must be a JSON list")
    entries = []
    for item in raw:
        entries.append(
            Intervention(
                id=item["id"],
                trigger=query_from_wire(item["trigger"]),
                levels=tuple(item["levels"]),
            )
        )
    return InMemoryBank(entries)


def dump_bank(bank: InMemoryBank, path: str | Path) -> None:
    payload = [
        {"id": e.id, "trigger": query_to_wire(e.trigger), "levels": list(e.levels)}
        for e in bank.entries()
    ]
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _bank_entries(registry: Registry) -> Iterator[Intervention]:
    for _, bank in registry.banks():
        yield from bank.intervention()


def _find_entry(registry: Registry, entry_id: str, trigger: Sym) -> Intervention | None:
    for _, bank in registry.banks():
        for entry in bank.intervention(entry_id=entry_id, trigger=trigger):
            return entry
    return None


# -- fluents ----------------------------------------------------------------


class DismissedFluent(FluentKind):
    """dismissed(Q, n): permanently true once Q is dismissed at level n."""

    name = "dismissed"

    def initially(self, instance: FluentInstance, kb) -> bool:
        return False

    def successor(self, instance: FluentInstance, act: ActionInstance, held_before: bool) -> bool:
        if act.kind == "dismiss_intervention" and act.args == instance.args:
            return True
        return held_before

    def candidates(self, situation: Situation) -> Iterator[FluentInstance]:
        for act in situation.history():
            if act.kind == "dismiss_intervention":
                yield fluent(self.name, *act.args)


class LiveInterventionFluent(FluentKind):
    """live_intervention(I, Q, L): true between an intervene and the
    dismissal or escalation that retires it."""

    name = "live_intervention"

    def initially(self, instance: FluentInstance, kb) -> bool:
        return False

    def successor(self, instance: FluentInstance, act: ActionInstance, held_before: bool) -> bool:
        ident, key, level = instance.args
        if act.kind == "intervene" and act.args[:3] == (ident, key, level):
            return True
        if act.kind == "dismiss_intervention" and act.args == (key, level):
            return False
        if act.kind == "request_intervention_increase" and act.args == (ident, key, level):
            return False
        return held_before

    def candidates(self, situation: Situation) -> Iterator[FluentInstance]:
        for act in situation.history():
            if act.kind == "intervene":
                yield fluent(self.name, *act.args[:3])


class IntervenedFluent(LiveInterventionFluent):
    """intervened(I, Q, L): the earlier vocabulary's name for a live offer.

    Same truth as live_intervention; kept so preconditions written against
    the older name keep working.
    """

    name = "intervened"


class InterventionLevelFluent(FluentKind):
    """intervention_level(I, Q, L): exactly one L per bank entry.

    Starts at 1 and steps to min(L+1, max) on each increase request.  The
    step reads the level off the increase action itself, which the
    precondition pins to the live (current) level, so the successor stays
    a function of the action and the instance's own prior truth.
    """

    name = "intervention_level"

    def __init__(self, registry: Registry):
        self._registry = registry

    def _max_level(self, ident, key) -> int | None:
        if not isinstance(ident, Sym):
            return None
        entry = _find_entry(self._registry, ident.name, key)
        return entry.max_level if entry is not None else None

    def initially(self, instance: FluentInstance, kb) -> bool:
        ident, key, level = instance.args
        return level == 1 and self._max_level(ident, key) is not None

    def successor(self, instance: FluentInstance, act: ActionInstance, held_before: bool) -> bool:
        ident, key, level = instance.args
        if act.kind == "request_intervention_increase" and act.args[0] == ident and act.args[1] == key:
            acted_level = act.args[2]
            if not isinstance(acted_level, int):
                return held_before
            max_level = self._max_level(ident, key)
            advanced = acted_level + 1 if max_level is None else min(acted_level + 1, max_level)
            return level == advanced
        return held_before

    def candidates(self, situation: Situation) -> Iterator[FluentInstance]:
        for entry in _bank_entries(self._registry):
            for level in range(1, entry.max_level + 1):
                yield fluent(self.name, Sym(entry.id), entry.key, level)


class InterventionOfferedFluent(FluentKind):
    """intervention_offered(I, Q): permanently true once (I, Q) was offered."""

    name = "intervention_offered"

    def initially(self, instance: FluentInstance, kb) -> bool:
        return False

    def successor(self, instance: FluentInstance, act: ActionInstance, held_before: bool) -> bool:
        if act.kind == "intervene" and act.args[:2] == instance.args:
            return True
        return held_before

    def candidates(self, situation: Situation) -> Iterator[FluentInstance]:
        for act in situation.history():
            if act.kind == "intervene":
                yield fluent(self.name, *act.args[:2])


class DismissedAtOrAboveFluent(FluentKind):
    """dismissed_at_or_above(Q, L): some dismissal of Q at level >= L exists.

    A precomputed view of the blocking condition on intervene, handy for
    interfaces that explain why an offer is withheld.
    """

    name = "dismissed_at_or_above"

    def initially(self, instance: FluentInstance, kb) -> bool:
        return False

    def successor(self, instance: FluentInstance, act: ActionInstance, held_before: bool) -> bool:
        key, level = instance.args
        if act.kind == "dismiss_intervention" and act.args[0] == key:
            dismissed_level = act.args[1]
            if isinstance(dismissed_level, int) and isinstance(level, int) and dismissed_level >= level:
                return True
        return held_before

    def candidates(self, situation: Situation) -> Iterator[FluentInstance]:
        for act in situation.history():
            if act.kind == "dismiss_intervention" and isinstance(act.args[1], int):
                for level in range(1, act.args[1] + 1):
                    yield fluent(self.name, act.args[0], level)


# -- actions ----------------------------------------------------------------


def dismissal_blocks(key: Sym, level: int) -> QueryExpr:
    """The blocking formula: some dismissal of Q at a level >= L."""
    return Some("n", And(Atom(fluent("dismissed", key, Var("n"))), Cmp(Var("n"), ">=", level)))


class InterveneAction(ActionKind):
    """intervene(I, Q, L, T): offer intervention I for trigger Q at level L.

    Possible iff the bank holds (I, Q), the trigger query succeeds, L is
    the current contingent level, no offer is already live at L, and Q was
    never dismissed at level L or above.  T is an opaque tag recorded in
    the history.
    """

    name = "intervene"

    def __init__(self, registry: Registry):
        self._registry = registry

    def _failure(self, act: ActionInstance, situation: Situation, engine: Engine) -> str | None:
        ident, key, level, _tag = act.args
        if not isinstance(ident, Sym) or not isinstance(level, int):
            return NOT_TRIGGERED
        entry = _find_entry(self._registry, ident.name, key)
        if entry is None:
            return NOT_TRIGGERED
        if not engine.query_true(entry.trigger, situation):
            return NOT_TRIGGERED
        if not engine.holds(fluent("intervention_level", ident, key, level), situation):
            return WRONG_LEVEL
        if engine.holds(fluent("live_intervention", ident, key, level), situation):
            return ALREADY_LIVE
        if engine.query_true(dismissal_blocks(key, level), situation):
            return DISMISSED_AT_OR_ABOVE
        return None

    def poss(self, act: ActionInstance, situation: Situation, engine: Engine) -> bool:
        return self._failure(act, situation, engine) is None

    def rejection(self, act: ActionInstance, situation: Situation, engine: Engine) -> str:
        return self._failure(act, situation, engine) or "not-possible"


class DismissInterventionAction(ActionKind):
    """dismiss_intervention(Q, L): possible while some offer is live at (Q, L)."""

    name = "dismiss_intervention"

    def precondition(self, act: ActionInstance):
        key, level = act.args
        return Some("i", Atom(fluent("live_intervention", Var("i"), key, level)))

    def rejection(self, act, situation, engine) -> str:
        return NO_LIVE_INTERVENTION


class RequestIncreaseAction(ActionKind):
    """request_intervention_increase(I, Q, L): ask for more intrusive help;
    possible while (I, Q, L) is live."""

    name = "request_intervention_increase"

    def precondition(self, act: ActionInstance):
        ident, key, level = act.args
        return Atom(fluent("live_intervention", ident, key, level))

    def rejection(self, act, situation, engine) -> str:
        return NO_LIVE_INTERVENTION


def register_scaffolding(registry: Registry) -> None:
    """Plug the scaffolding kinds into a registry."""
    registry.register_fluent_kind(DismissedFluent())
    registry.register_fluent_kind(LiveInterventionFluent())
    registry.register_fluent_kind(IntervenedFluent())
    registry.register_fluent_kind(InterventionLevelFluent(registry))
    registry.register_fluent_kind(InterventionOfferedFluent())
    registry.register_fluent_kind(DismissedAtOrAboveFluent())
    registry.register_action_kind(InterveneAction(registry))
    registry.register_action_kind(DismissInterventionAction())
    registry.register_action_kind(RequestIncreaseAction())


# -- querying pending work ----------------------------------------------------


@dataclass(frozen=True)
class PendingIntervention:
    """One offerable intervention: what to show and how intrusively."""

    id: str
    trigger: str
    level: int
    payload: str


def current_level(engine: Engine, situation: Situation, entry: Intervention) -> int:
    """The unique L with intervention_level(I, Q, L) holding."""
    ident = Sym(entry.id)
    for level in range(1, entry.max_level + 1):
        if engine.holds(fluent("intervention_level", ident, entry.key, level), situation):
            return level
    raise AssertionError(f"no level holds for intervention {entry.id!r}")


def pending_interventions(engine: Engine, situation: Situation) -> list[PendingIntervention]:
    """Everything offerable right now, ordered by (id, level)."""
    pending: list[PendingIntervention] = []
    for entry in _bank_entries(engine.registry):
        level = current_level(engine, situation, entry)
        probe = action("intervene", Sym(entry.id), entry.key, level, Sym("pending"))
        if engine.poss(probe, situation):
            pending.append(
                PendingIntervention(
                    id=entry.id,
                    trigger=entry.key.name,
                    level=level,
                    payload=entry.payload(level),
                )
            )
    pending.sort(key=lambda p: (p.id, p.level))
    return pending

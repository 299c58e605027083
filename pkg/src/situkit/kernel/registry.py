"""Conformance registry: the discovery surface for plugged-in kinds.

Four families are tracked: fluent kinds, action kinds, initial-knowledge
providers, and intervention banks.  The kernel only interprets the first
two; providers and banks are held opaquely for the libraries that define
their contracts.  Enumeration is always name-sorted so no observable
result depends on registration order.
"""
from __future__ import annotations

from .contracts import ActionKind, FluentKind
from .errors import DuplicateName, SituError, UnknownKb, UnknownKind

FAMILIES = ("fluent", "action", "kb", "bank")


class Registry:
    """Name-to-conformer maps, one per family.

    Registration happens at startup, before any evaluation; ``freeze``
    makes that ordering explicit by rejecting late registrations.
    """

    def __init__(self) -> None:
        self._families: dict[str, dict[str, object]] = {name: {} for name in FAMILIES}
        self._frozen = False

    def _register(self, family: str, name: str, conformer: object) -> None:
        if self._frozen:
            raise SituError("registry is frozen; register kinds before evaluation starts")
        if not name:
            raise ValueError("names must be non-empty")
        table = self._families[family]
        if name in table:
            raise DuplicateName(family, name)
        table[name] = conformer

    def register_fluent_kind(self, kind: FluentKind) -> None:
        self._register("fluent", kind.name, kind)

    def register_action_kind(self, kind: ActionKind) -> None:
        self._register("action", kind.name, kind)

    def register_initial_kb(self, kb_id: str, provider: object) -> None:
        self._register("kb", kb_id, provider)

    def register_intervention_bank(self, bank_id: str, bank: object) -> None:
        self._register("bank", bank_id, bank)

    def freeze(self) -> None:
        self._frozen = True

    def fluent_kind(self, name: str) -> FluentKind:
        try:
            return self._families["fluent"][name]  # type: ignore[return-value]
        except KeyError:
            raise UnknownKind("fluent", name) from None

    def action_kind(self, name: str) -> ActionKind:
        try:
            return self._families["action"][name]  # type: ignore[return-value]
        except KeyError:
            raise UnknownKind("action", name) from None

    def initial_kb(self, kb_id: str) -> object:
        try:
            return self._families["kb"][kb_id]
        except KeyError:
            raise UnknownKb(kb_id) from None

    def bank(self, bank_id: str) -> object:
        try:
            return self._families["bank"][bank_id]
        except KeyError:
            raise UnknownKind("bank", bank_id) from None

    def has_fluent_kind(self, name: str) -> bool:
        return name in self._families["fluent"]

    def has_action_kind(self, name: str) -> bool:
        return name in self._families["action"]

    def has_initial_kb(self, kb_id: str) -> bool:
        return kb_id in self._families["kb"]

    def enumerate_conformers(self, family: str) -> list[str]:
        """All registered names in a family, in canonical (sorted) order."""
        if family not in self._families:
            raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
        return sorted(self._families[family])

    def fluent_kinds(self) -> list[FluentKind]:
        table = self._families["fluent"]
        return [table[name] for name in sorted(table)]  # type: ignore[list-item]

    def initial_kbs(self) -> list[tuple[str, object]]:
        table = self._families["kb"]
        return [(name, table[name]) for name in sorted(table)]

    def banks(self) -> list[tuple[str, object]]:
        table = self._families["bank"]
        return [(name, table[name]) for name in sorted(table)]

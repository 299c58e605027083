"""Application layer for the hazard-analysis tutor: GUI tracking kinds,
step tabs, glossary, and config loading.

Everything here is added by extension: the module registers new kinds
against the kernel's contracts and never reaches into the lower layers.

Four tracking actions (always possible) record what the learner does in
the interface; ``current_focus`` derives what they are looking at from
the most recent focus-bearing action.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .kernel import (
    ActionInstance,
    ActionKind,
    Compound,
    FluentInstance,
    FluentKind,
    Registry,
    Situation,
    Sym,
    fluent,
)
from .ontology import load_initial_kb, register_ontology
from .scaffolding import load_bank, register_scaffolding

TRACKING_ACTIONS = ("navigate_to_step", "concept_focus", "glossary_lookup", "nudge")

# Actions whose argument counts as "what the user is looking at".
_FOCUS_BEARING = ("concept_focus", "navigate_to_step")


class ConfigError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"config field {field!r}: {message}")
        self.field = field


class TrackingAction(ActionKind):
    """A trivially-possible action that only leaves a trace in the history."""

    def __init__(self, name: str):
        self.name = name


class CurrentFocusFluent(FluentKind):
    """current_focus(F): F is the argument of the latest focus-bearing action."""

    name = "current_focus"

    def initially(self, instance: FluentInstance, kb) -> bool:
        return False

    def successor(self, instance: FluentInstance, act: ActionInstance, held_before: bool) -> bool:
        if act.kind in _FOCUS_BEARING:
            return instance.args == (act.args[0],)
        return held_before

    def candidates(self, situation: Situation) -> Iterator[FluentInstance]:
        for act in situation.history():
            if act.kind in _FOCUS_BEARING:
                yield fluent(self.name, act.args[0])


def register_tutor_kinds(registry: Registry) -> None:
    for name in TRACKING_ACTIONS:
        registry.register_action_kind(TrackingAction(name))
    registry.register_fluent_kind(CurrentFocusFluent())


def glossary_term(term: str | Sym) -> Compound:
    """The argument shape of a glossary_lookup action: term(T)."""
    name = term.name if isinstance(term, Sym) else term
    return Compound("term", (Sym(name),))


@dataclass(frozen=True)
class StepTab:
    """One analysis step shown as a tab, with the predicates its form offers."""

    id: str
    title: str
    predicates: tuple[str, ...]


@dataclass(frozen=True)
class GlossaryEntry:
    term: str
    definition: str


class Glossary:
    def __init__(self, entries: list[GlossaryEntry] | tuple[GlossaryEntry, ...] = ()):
        self._by_term: dict[str, GlossaryEntry] = {}
        for entry in entries:
            if entry.term in self._by_term:
                raise ValueError(f"duplicate glossary term {entry.term!r}")
            self._by_term[entry.term] = entry

    def lookup(self, term: str) -> GlossaryEntry | None:
        return self._by_term.get(term)

    def entries(self) -> list[GlossaryEntry]:
        return [self._by_term[t] for t in sorted(self._by_term)]

    def __len__(self) -> int:
        return len(self._by_term)


@dataclass(frozen=True)
class AppConfig:
    """Everything the service needs after startup registration."""

    kb_id: str
    bank_id: str
    steps: tuple[StepTab, ...]
    glossary: Glossary


def _require(config: dict, field: str):
    value = config
    for part in field.split("."):
        if not isinstance(value, dict) or part not in value:
            raise ConfigError(field, "missing")
        value = value[part]
    return value


def load_app_config(path: str | Path, registry: Registry) -> AppConfig:
    """Load the app config and register every plugin kind.

    The config is a JSON object with ``kb``/``bank``/``glossary`` path
    sections and a ``steps`` tab list; relative paths resolve against the
    config file's directory.
    """
    path = Path(path)
    try:
        config = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError("path", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("path", f"{path} is not valid JSON: {exc}") from exc
    base = path.parent

    kb_id = _require(config, "kb.id")
    kb_path = base / _require(config, "kb.path")
    if not kb_path.exists():
        raise ConfigError("kb.path", f"no such file: {kb_path}")
    bank_id = _require(config, "bank.id")
    bank_path = base / _require(config, "bank.path")
    if not bank_path.exists():
        raise ConfigError("bank.path", f"no such file: {bank_path}")
    glossary_path = base / _require(config, "glossary.path")
    if not glossary_path.exists():
        raise ConfigError("glossary.path", f"no such file: {glossary_path}")

    steps_raw = _require(config, "steps")
    if not isinstance(steps_raw, list) or not steps_raw:
        raise ConfigError("steps", "at least one step tab is required")
    steps = []
    seen_ids: set[str] = set()
    for i, raw in enumerate(steps_raw):
        try:
            step = StepTab(id=raw["id"], title=raw["title"], predicates=tuple(raw.get("predicates", ())))
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"steps[{i}]", f"malformed: {exc}") from exc
        if step.id in seen_ids:
            raise ConfigError(f"steps[{i}].id", f"duplicate tab id {step.id!r}")
        seen_ids.add(step.id)
        steps.append(step)

    glossary_raw = json.loads(glossary_path.read_text(encoding="utf-8"))
    if not isinstance(glossary_raw, list):
        raise ConfigError("glossary.path", "glossary file must be a JSON list")
    glossary = Glossary([GlossaryEntry(term=e["term"], definition=e["definition"]) for e in glossary_raw])

    register_ontology(registry)
    register_scaffolding(registry)
    register_tutor_kinds(registry)
    registry.register_initial_kb(kb_id, load_initial_kb(kb_path))
    registry.register_intervention_bank(bank_id, load_bank(bank_path))

    return AppConfig(kb_id=kb_id, bank_id=bank_id, steps=tuple(steps), glossary=glossary)


def demo_config_path() -> Path:
    """Path of the hazard-analysis demo config shipped with the package."""
    return Path(__file__).parent / "demo" / "app.json"

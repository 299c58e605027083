"""Shared fixtures: a toy kernel-only domain and the full tutoring domain."""
from __future__ import annotations

import sys
from pathlib import Path
from typing import Iterator

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from situkit.kernel import (
    ActionInstance,
    ActionKind,
    Atom,
    Engine,
    FluentInstance,
    FluentKind,
    HoldsCache,
    Initial,
    Not,
    Registry,
    Situation,
    Sym,
    Triple,
    fluent,
)
from situkit.ontology import InMemoryKb, register_ontology
from situkit.scaffolding import InMemoryBank, Intervention, register_scaffolding
from situkit.tutor import register_tutor_kinds


# -- a tiny domain exercising the kernel without the libraries ----------------


class ToyKb:
    """Initial knowledge for the toy domain: which switches start on."""

    def __init__(self, on: set[str]):
        self.on = set(on)


class OnFluent(FluentKind):
    name = "on"

    def __init__(self, switch_names: set[str]):
        self._switch_names = set(switch_names)

    def initially(self, instance: FluentInstance, kb) -> bool:
        switch = instance.args[0]
        return isinstance(switch, Sym) and switch.name in kb.on

    def successor(self, instance: FluentInstance, act: ActionInstance, held_before: bool) -> bool:
        if act.args and act.args[0] == instance.args[0]:
            if act.kind == "turn_on":
                return True
            if act.kind == "turn_off":
                return False
            if act.kind == "toggle":
                return not held_before
        return held_before

    def candidates(self, situation: Situation) -> Iterator[FluentInstance]:
        names = set(self._switch_names)
        for act in situation.history():
            if act.kind in ("turn_on", "turn_off", "toggle") and isinstance(act.args[0], Sym):
                names.add(act.args[0].name)
        return (fluent(self.name, Sym(n)) for n in names)


class TurnOn(ActionKind):
    name = "turn_on"

    def precondition(self, act: ActionInstance):
        return Not(Atom(fluent("on", act.args[0])))


class TurnOff(ActionKind):
    name = "turn_off"

    def precondition(self, act: ActionInstance):
        return Atom(fluent("on", act.args[0]))


class Toggle(ActionKind):
    name = "toggle"


SWITCHES = ("a", "b", "c", "d")


def build_toy(initially_on: set[str] = frozenset({"a"}), cache: bool = True) -> tuple[Engine, Situation]:
    registry = Registry()
    registry.register_fluent_kind(OnFluent(set(SWITCHES)))
    registry.register_action_kind(TurnOn())
    registry.register_action_kind(TurnOff())
    registry.register_action_kind(Toggle())
    registry.register_initial_kb("toy", ToyKb(set(initially_on)))
    return Engine(registry, HoldsCache() if cache else None), Initial("toy")


@pytest.fixture
def toy() -> tuple[Engine, Situation]:
    return build_toy()


# -- the full tutoring domain with a small, controllable bank -----------------

TA = Triple(Sym("h1"), Sym("type"), Sym("Hazard"))
TB = Triple(Sym("h2"), Sym("type"), Sym("Hazard"))
TC = Triple(Sym("l1"), Sym("type"), Sym("Loss"))
SEED = [Triple(Sym("seed1"), Sym("type"), Sym("Seeded"))]


def small_bank() -> InMemoryBank:
    trigger_a = Atom(fluent("asserted", TA))
    return InMemoryBank(
        [
            # help-a and help-b share a trigger: dismissals are keyed by the
            # trigger query, so they share dismissal state.
            Intervention("help-a", trigger_a, ("a1", "a2", "a3")),
            Intervention("help-b", trigger_a, ("b1", "b2", "b3", "b4")),
            Intervention("help-c", Atom(fluent("asserted", TB)), ("c1", "c2")),
        ]
    )


def build_domain(seed=None, bank=None, cache: bool = True) -> tuple[Engine, Situation]:
    registry = Registry()
    register_ontology(registry)
    register_scaffolding(registry)
    register_tutor_kinds(registry)
    registry.register_initial_kb("seed", InMemoryKb(SEED if seed is None else seed))
    registry.register_intervention_bank("bank", small_bank() if bank is None else bank)
    registry.freeze()
    return Engine(registry, HoldsCache() if cache else None), Initial("seed")


@pytest.fixture
def domain() -> tuple[Engine, Situation]:
    return build_domain()

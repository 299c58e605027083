"""Brute-force oracle suites: progression vs regression cross-checks.

The progression oracle here folds the action history left-to-right over an
explicit set of ground fluents, applying each kind's successor rule
eagerly, then answers queries by membership.  It never calls the engine's
regression path, so agreement between the two is evidence, not tautology.

Used by the ``check oracles`` CLI subcommand and reused by the test suite.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .kernel import (
    ActionInstance,
    Do,
    Engine,
    FluentInstance,
    HoldsCache,
    Initial,
    Registry,
    Situation,
    Sym,
    Triple,
    action,
    fluent,
)
from .ontology import InMemoryKb, register_ontology
from .scaffolding import InMemoryBank, Intervention, register_scaffolding
from .tutor import glossary_term, register_tutor_kinds


def oracle_state(registry: Registry, situation: Situation) -> frozenset[FluentInstance]:
    """Explicit fluent set for a situation, by eager left-to-right folding."""
    prefixes: list[Situation] = []
    cursor: Situation = situation
    while isinstance(cursor, Do):
        prefixes.append(cursor)
        cursor = cursor.prior
    prefixes.reverse()
    assert isinstance(cursor, Initial)
    kb = registry.initial_kb(cursor.kb_id)

    live: dict[str, set[FluentInstance]] = {}
    for kind in registry.fluent_kinds():
        live[kind.name] = {c for c in set(kind.candidates(cursor)) if kind.initially(c, kb)}
    for prefix in prefixes:
        assert isinstance(prefix, Do)
        act = prefix.action
        for kind in registry.fluent_kinds():
            previous = live[kind.name]
            live[kind.name] = {
                c for c in set(kind.candidates(prefix)) if kind.successor(c, act, c in previous)
            }
    return frozenset().union(*live.values()) if live else frozenset()


def oracle_holds(registry: Registry, instance: FluentInstance, situation: Situation) -> bool:
    return instance in oracle_state(registry, situation)


# -- a full tutoring domain for randomized suites ---------------------------


def _demo_triples() -> list[Triple]:
    pool = []
    for i in range(1, 6):
        pool.append(Triple(Sym(f"h{i}"), Sym("type"), Sym("Hazard")))
    for i in range(1, 4):
        pool.append(Triple(Sym(f"l{i}"), Sym("type"), Sym("Loss")))
        pool.append(Triple(Sym(f"c{i}"), Sym("constrains"), Sym(f"h{i}")))
    return pool


def _demo_bank() -> InMemoryBank:
    from .kernel import Atom, Not, Some, Var

    hazard_exists = Some("h", Atom(fluent("known", Var("h"), Sym("type"), Sym("Hazard"))))
    loss_missing = Not(Some("l", Atom(fluent("known", Var("l"), Sym("type"), Sym("Loss")))))
    unconstrained = Some(
        "h2",
        Atom(fluent("asserted", Triple(Var("h2"), Sym("type"), Sym("Hazard")))),
    )
    return InMemoryBank(
        [
            Intervention("hazard-seen", hazard_exists, ("hint", "explain", "walkthrough")),
            Intervention("start-losses", loss_missing, ("nudge", "template")),
            Intervention("constrain-it", unconstrained, ("hint", "explain", "step-by-step", "do-it-for-me")),
        ]
    )


def build_check_domain(seed_triples: list[Triple] | None = None) -> tuple[Engine, Situation]:
    """A registry covering ontology, scaffolding, and tutor kinds."""
    registry = Registry()
    register_ontology(registry)
    register_scaffolding(registry)
    register_tutor_kinds(registry)
    seeds = seed_triples if seed_triples is not None else [Triple(Sym("seedh"), Sym("type"), Sym("Hazard"))]
    registry.register_initial_kb("seed", InMemoryKb(seeds))
    registry.register_intervention_bank("bank", _demo_bank())
    registry.freeze()
    return Engine(registry, HoldsCache()), Initial("seed")


def legal_actions(engine: Engine, situation: Situation) -> list[ActionInstance]:
    """Ground actions from the demo pools that are possible right now."""
    pool: list[ActionInstance] = []
    for t in _demo_triples():
        pool.append(action("add_data", t))
        pool.append(action("delete_data", t))
    for _, bank in engine.registry.banks():
        for entry in bank.intervention():
            key = entry.key
            for level in range(1, entry.max_level + 1):
                pool.append(action("intervene", Sym(entry.id), key, level, Sym("tick")))
                pool.append(action("dismiss_intervention", key, level))
                pool.append(action("request_intervention_increase", Sym(entry.id), key, level))
    pool.append(action("navigate_to_step", Sym("losses")))
    pool.append(action("concept_focus", Sym("brakes")))
    pool.append(action("glossary_lookup", glossary_term("hazard")))
    pool.append(action("nudge", "keep going"))
    return [a for a in pool if engine.poss(a, situation)]


def candidate_actions(engine: Engine) -> list[ActionInstance]:
    """The ground action space the random suites draw from (legal or not)."""
    pool: list[ActionInstance] = []
    for t in _demo_triples():
        pool.append(action("add_data", t))
        pool.append(action("delete_data", t))
    for _, bank in engine.registry.banks():
        for entry in bank.intervention():
            key = entry.key
            for level in range(1, entry.max_level + 1):
                pool.append(action("intervene", Sym(entry.id), key, level, Sym("tick")))
                pool.append(action("dismiss_intervention", key, level))
                pool.append(action("request_intervention_increase", Sym(entry.id), key, level))
    pool.append(action("navigate_to_step", Sym("losses")))
    pool.append(action("concept_focus", Sym("brakes")))
    pool.append(action("glossary_lookup", glossary_term("hazard")))
    pool.append(action("nudge", "keep going"))
    return pool


def random_history(engine: Engine, start: Situation, rng: random.Random, length: int) -> Situation:
    """A random legal history of at most ``length`` actions.

    Steps are drawn by rejection sampling over the candidate space, which
    is much cheaper than computing the full legal pool each step.
    """
    space = candidate_actions(engine)
    situation = start
    for _ in range(length):
        placed = False
        for _attempt in range(12):
            act = rng.choice(space)
            if engine.poss(act, situation):
                situation = engine.do(act, situation)
                placed = True
                break
        if not placed:
            pool = legal_actions(engine, situation)
            if not pool:
                break
            situation = engine.do(rng.choice(pool), situation)
    return situation


# -- suites ------------------------------------------------------------------


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str


def _suite_regression_vs_oracle(seed: int, cases: int) -> SuiteResult:
    rng = random.Random(seed)
    engine, start = build_check_domain()
    cold = Engine(engine.registry, cache=None)
    mismatches = 0
    checked = 0
    for _ in range(cases):
        situation = random_history(engine, start, rng, rng.randint(0, 25))
        expected = oracle_state(engine.registry, situation)
        got_cached = engine.holding_fluents(situation)
        got_cold = cold.holding_fluents(situation)
        checked += 1
        if got_cached != expected or got_cold != expected:
            mismatches += 1
    return SuiteResult(
        "regression-vs-progression-oracle",
        mismatches == 0,
        f"{checked} random histories, {mismatches} mismatches",
    )


def _suite_snapshot_vs_oracle(seed: int, cases: int) -> SuiteResult:
    rng = random.Random(seed + 1)
    engine, start = build_check_domain()
    mismatches = 0
    for _ in range(cases):
        situation = random_history(engine, start, rng, rng.randint(0, 25))
        if engine.progress(situation).fluents != oracle_state(engine.registry, situation):
            mismatches += 1
    return SuiteResult(
        "snapshot-vs-progression-oracle",
        mismatches == 0,
        f"{cases} random histories, {mismatches} mismatches",
    )


def _suite_asserted_scan(seed: int, cases: int) -> SuiteResult:
    rng = random.Random(seed + 2)
    engine, start = build_check_domain()
    mismatches = 0
    for _ in range(cases):
        situation = random_history(engine, start, rng, rng.randint(0, 30))
        expected: set[Triple] = set()
        for act in situation.history():
            if act.kind == "add_data":
                expected.add(act.args[0])
            elif act.kind == "delete_data":
                expected.discard(act.args[0])
        got = {f.args[0] for f in engine.holding_fluents(situation, "asserted")}
        if got != expected:
            mismatches += 1
    return SuiteResult(
        "asserted-last-writer-wins",
        mismatches == 0,
        f"{cases} random histories, {mismatches} mismatches",
    )


def _suite_level_counting(seed: int, cases: int) -> SuiteResult:
    rng = random.Random(seed + 3)
    engine, start = build_check_domain()
    mismatches = 0
    for _ in range(cases):
        situation = random_history(engine, start, rng, rng.randint(0, 30))
        for _, bank in engine.registry.banks():
            for entry in bank.intervention():
                increases = sum(
                    1
                    for act in situation.history()
                    if act.kind == "request_intervention_increase"
                    and act.args[0] == Sym(entry.id)
                    and act.args[1] == entry.key
                )
                expected = min(1 + increases, entry.max_level)
                holding = [
                    level
                    for level in range(1, entry.max_level + 1)
                    if engine.holds(fluent("intervention_level", Sym(entry.id), entry.key, level), situation)
                ]
                if holding != [expected]:
                    mismatches += 1
    return SuiteResult(
        "level-equals-clamped-increase-count",
        mismatches == 0,
        f"{cases} random histories, {mismatches} mismatches",
    )


def _suite_focus_scan(seed: int, cases: int) -> SuiteResult:
    rng = random.Random(seed + 4)
    engine, start = build_check_domain()
    mismatches = 0
    for _ in range(cases):
        situation = random_history(engine, start, rng, rng.randint(0, 30))
        last_focus = None
        for act in situation.history():
            if act.kind in ("concept_focus", "navigate_to_step"):
                last_focus = act.args[0]
        got = engine.holding_fluents(situation, "current_focus")
        expected = frozenset() if last_focus is None else frozenset({fluent("current_focus", last_focus)})
        if got != expected:
            mismatches += 1
    return SuiteResult(
        "focus-equals-last-focus-action",
        mismatches == 0,
        f"{cases} random histories, {mismatches} mismatches",
    )


SUITES: list[Callable[[int, int], SuiteResult]] = [
    _suite_regression_vs_oracle,
    _suite_snapshot_vs_oracle,
    _suite_asserted_scan,
    _suite_level_counting,
    _suite_focus_scan,
]


def run_all(seed: int = 7, cases: int = 60) -> list[SuiteResult]:
    return [suite(seed, cases) for suite in SUITES]

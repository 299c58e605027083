"""Acceptance suite: every criterion at its stated size, one line per criterion.

Run ``pytest tests/test_acceptance.py -s`` to see the PASS/FAIL lines as the
criteria complete.  All of these exercise the library only; nothing here
depends on the web frontend.
"""
from __future__ import annotations

import random
import shutil
import time

from conftest import TA, build_domain, small_bank
from oracles import (
    fold_state,
    oracle_query,
    scan_asserted,
    scan_dismissals,
    scan_increases,
    scan_live,
)
from situkit.checks import candidate_actions, random_history
from situkit.kernel import (
    And,
    Atom,
    Cmp,
    Engine,
    HoldsCache,
    Registry,
    Some,
    Sym,
    Triple,
    Var,
    action,
    fluent,
)
from situkit.ontology import register_ontology
from situkit.scaffolding import register_scaffolding
from situkit.store import CorruptLog, ProjectStore


def _report(name: str, passed: bool, detail: str) -> None:
    print(f"\nACCEPTANCE {name}: {'PASS' if passed else 'FAIL'} ({detail})", flush=True)
    assert passed, f"{name}: {detail}"


BANK_ENTRIES = small_bank().entries()


def _expected_level(situation, entry) -> int:
    return min(1 + scan_increases(situation, Sym(entry.id), entry.key), entry.max_level)


def _intervene_expected(situation, state, entry, level) -> bool:
    """The quoted precondition, computed from scans and the progressed state."""
    if not oracle_query(state, entry.trigger, {}):
        return False
    if level != _expected_level(situation, entry):
        return False
    if (Sym(entry.id), entry.key, level) in scan_live(situation):
        return False
    for key, alevel in scan_dismissals(situation):
        if key == entry.key and alevel >= level:
            return False
    return True


def test_axiom_conformance():
    """Every quoted precondition/effect, randomized, >= 10,000 cases."""
    rng = random.Random(2024)
    engine, s0 = build_domain()
    pool = [Triple(Sym(f"h{i}"), Sym("type"), Sym("Hazard")) for i in range(1, 6)]
    cases = 0
    violations = 0

    def check(actual: bool, expected: bool) -> None:
        nonlocal cases, violations
        cases += 1
        if actual != expected:
            violations += 1

    for _ in range(110):
        s = s0
        for _ in range(rng.randint(5, 28)):
            s = random_history(engine, s, rng, 1)
            state = fold_state(engine.registry, s)
            live = scan_live(s)
            asserted_now = scan_asserted(s)
            for t in rng.sample(pool, 3):
                check(engine.poss(action("add_data", t), s), t not in asserted_now)
                check(engine.poss(action("delete_data", t), s), t in asserted_now)
            for entry in BANK_ENTRIES:
                ident, key = Sym(entry.id), entry.key
                probe_levels = {_expected_level(s, entry), rng.randint(1, entry.max_level)}
                for level in probe_levels:
                    check(
                        engine.poss(action("intervene", ident, key, level, Sym("t")), s),
                        _intervene_expected(s, state, entry, level),
                    )
                level = rng.randint(1, entry.max_level)
                check(
                    engine.poss(action("dismiss_intervention", key, level), s),
                    any(e[1] == key and e[2] == level for e in live),
                )
                check(
                    engine.poss(action("request_intervention_increase", ident, key, level), s),
                    (ident, key, level) in live,
                )
            check(engine.poss(action("intervene", Sym("ghost"), Sym("qnope"), 1, Sym("t")), s), False)
    _report(
        "axiom-conformance",
        cases >= 10_000 and violations == 0,
        f"{cases} cases, {violations} violations",
    )


def test_oracle_equivalence():
    """Regression == progression oracle on 1,000 random legal histories."""
    rng = random.Random(99)
    engine, s0 = build_domain()
    cold = Engine(engine.registry, cache=None)
    histories = 0
    mismatches = 0
    qa_key = BANK_ENTRIES[0].key
    hazard_query = Atom(fluent("asserted", Triple(Var("x"), Sym("type"), Sym("Hazard"))))
    dismissal_query = Some(
        "n", And(Atom(fluent("dismissed", qa_key, Var("n"))), Cmp(Var("n"), ">=", 1))
    )
    focus_query = Atom(fluent("current_focus", Var("f")))

    for _ in range(1000):
        s = random_history(engine, s0, rng, rng.randint(0, 50))
        histories += 1
        expected = fold_state(engine.registry, s)
        ok = (
            engine.holding_fluents(s) == expected
            and cold.holding_fluents(s) == expected
            and engine.progress(s).fluents == expected
        )
        for query in (hazard_query, dismissal_query, focus_query):
            ok = ok and engine.solve(query, s) == oracle_query(expected, query, {})
        if not ok:
            mismatches += 1
    _report(
        "oracle-equivalence",
        histories == 1000 and mismatches == 0,
        f"{histories} histories (len<=50), {mismatches} mismatches",
    )


def test_memo_transparency_and_speed():
    """Identical results cache on/off; >= 10x faster cached; < 60 s."""
    started = time.perf_counter()
    engine, s0 = build_domain()
    pool = [Triple(Sym(f"s{i}"), Sym("p"), Sym(f"o{i}")) for i in range(20)]
    s = s0
    for i in range(10_000):
        t = pool[i % 20]
        name = "add_data" if (i // 20) % 2 == 0 else "delete_data"
        s = engine.do(action(name, t), s)
    assert len(s) == 10_000

    probe = fluent("asserted", pool[5])
    cold = Engine(engine.registry, cache=None)
    t0 = time.perf_counter()
    cold_results = [cold.holds(probe, s) for _ in range(1000)]
    cold_time = time.perf_counter() - t0

    warm = Engine(engine.registry, cache=HoldsCache())
    t0 = time.perf_counter()
    warm_results = [warm.holds(probe, s) for _ in range(1000)]
    warm_time = time.perf_counter() - t0

    total = time.perf_counter() - started
    speedup = cold_time / warm_time if warm_time else float("inf")
    _report(
        "memo-transparency-and-speed",
        cold_results == warm_results and speedup >= 10 and total < 60,
        f"identical={cold_results == warm_results}, speedup={speedup:.0f}x, total={total:.1f}s",
    )


CORRUPTIONS = [
    ("seq-gap", lambda lines, k: lines[:k] + lines[k + 1 :] if k < len(lines) - 1 else None),
    ("seq-dup", lambda lines, k: lines[: k + 1] + [lines[k]] + lines[k + 1 :]),
    ("bad-json", lambda lines, k: lines[:k] + [lines[k][: len(lines[k]) // 2]] + lines[k + 1 :]),
    ("field-rename", lambda lines, k: lines[:k] + [lines[k].replace('"kind"', '"kin0"', 1)] + lines[k + 1 :]),
    ("wrong-project", lambda lines, k: lines[:k] + [lines[k].replace('"project":"p1"', '"project":"zz"', 1)] + lines[k + 1 :]),
]


def test_replay_determinism(tmp_path):
    """Restart-identical digests; corrupted/gapped logs 100% detected."""
    rng = random.Random(31337)
    engine, _ = build_domain()
    store = ProjectStore(tmp_path / "a", engine)
    pid = store.create_project("seed")
    space = candidate_actions(engine)
    appended = 0
    while appended < 150:
        act = rng.choice(space)
        if engine.poss(act, store.situation(pid)):
            store.append(pid, act)
            appended += 1
    live_digest = store.situation(pid).digest

    # restart: a fresh registry, engine, cache, and store over the same files
    engine2, _ = build_domain()
    store2 = ProjectStore(tmp_path / "a", engine2)
    replayed = store2.situation(pid)
    restart_ok = (
        replayed.digest == live_digest
        and engine2.holding_fluents(replayed) == engine.holding_fluents(store.situation(pid))
        and store2.replay(pid).digest == live_digest
    )

    log_path = tmp_path / "a" / pid / "events.log"
    pristine = log_path.read_text(encoding="utf-8").splitlines()
    injected = 0
    caught = 0
    for name, corrupt in CORRUPTIONS:
        for trial in range(5):
            k = rng.randrange(0, len(pristine) - 1)
            mutated = corrupt(list(pristine), k)
            if mutated is None:
                continue
            work = tmp_path / f"corrupt-{name}-{trial}"
            shutil.copytree(tmp_path / "a", work)
            (work / pid / "events.log").write_text("\n".join(mutated) + "\n", encoding="utf-8")
            injected += 1
            try:
                ProjectStore(work, build_domain()[0]).replay(pid)
            except CorruptLog:
                caught += 1
    # an impossible event: duplicate an add_data line with a fixed-up seq
    add_lines = [i for i, line in enumerate(pristine) if '"kind":"add_data"' in line]
    if add_lines:
        i = add_lines[0]
        dup = pristine[i].replace(f'"seq":{i + 1},', f'"seq":{i + 2},', 1)
        mutated = pristine[: i + 1] + [dup]
        work = tmp_path / "corrupt-impossible"
        shutil.copytree(tmp_path / "a", work)
        (work / pid / "events.log").write_text("\n".join(mutated) + "\n", encoding="utf-8")
        injected += 1
        try:
            ProjectStore(work, build_domain()[0]).replay(pid)
        except CorruptLog:
            caught += 1

    _report(
        "replay-determinism",
        restart_ok and injected >= 20 and caught == injected,
        f"restart ok={restart_ok}, corruptions caught {caught}/{injected}",
    )


PAPER_NAMED = {
    "asserted",
    "initial_assertion",
    "add_data",
    "delete_data",
    "dismissed",
    "live_intervention",
    "intervened",
    "intervention_level",
    "intervene",
    "dismiss_intervention",
    "request_intervention_increase",
}


def test_library_term_count():
    """The two libraries register 14 kinds, covering the 11 named ones."""
    registry = Registry()
    register_ontology(registry)
    register_scaffolding(registry)
    kinds = set(registry.enumerate_conformers("fluent")) | set(registry.enumerate_conformers("action"))
    _report(
        "library-term-count",
        len(kinds) == 14 and PAPER_NAMED <= kinds and len(PAPER_NAMED) == 11,
        f"{len(kinds)} kinds registered, {len(PAPER_NAMED & kinds)}/11 named terms present",
    )


def test_layering():
    """Automated dependency-direction check over the package sources."""
    import test_layering as layering

    violations = []
    for name, path in layering.all_modules():
        allowed = layering.ALLOWED[name] | ({"kernel"} if name.startswith("kernel") else set())
        extra = layering.internal_imports(path, name) - allowed
        if name.startswith("kernel"):
            extra = {e for e in extra if e != "kernel"}
        if extra:
            violations.append((name, sorted(extra)))
    demo_ok = layering.internal_imports(layering.PACKAGE_ROOT / "demo_todo.py", "demo_todo") == {"kernel"}
    _report(
        "layering",
        violations == [] and demo_ok,
        f"{len(violations)} violations, demo-todo kernel-only={demo_ok}",
    )


def test_dismissal_monotonicity():
    """1,000 random post-dismissal suffixes: no blocked level resurfaces."""
    rng = random.Random(4242)
    engine, s0 = build_domain()
    base = engine.do(action("add_data", TA), s0)
    suffixes = 0
    violations = 0
    for scenario in range(250):
        entry = rng.choice(BANK_ENTRIES[:2])  # help-a / help-b share the trigger
        ident, key = Sym(entry.id), entry.key
        s = base
        # escalate to a random level, then dismiss there
        target = rng.randint(1, entry.max_level)
        for level in range(1, target):
            s = engine.do(action("intervene", ident, key, level, Sym("t")), s)
            s = engine.do(action("request_intervention_increase", ident, key, level), s)
        if not engine.poss(action("intervene", ident, key, target, Sym("t")), s):
            continue  # the trigger may have been consumed; scenario void
        s = engine.do(action("intervene", ident, key, target, Sym("t")), s)
        s = engine.do(action("dismiss_intervention", key, target), s)
        for _ in range(4):
            suffix = random_history(engine, s, rng, rng.randint(1, 8))
            suffixes += 1
            for dismissed_key, level in scan_dismissals(suffix):
                for probe_entry in BANK_ENTRIES:
                    if probe_entry.key != dismissed_key:
                        continue
                    for blocked in range(1, min(level, probe_entry.max_level) + 1):
                        act = action("intervene", Sym(probe_entry.id), dismissed_key, blocked, Sym("t"))
                        if engine.poss(act, suffix):
                            violations += 1
    _report(
        "dismissal-monotonicity",
        suffixes >= 1000 and violations == 0,
        f"{suffixes} suffixes, {violations} violations",
    )

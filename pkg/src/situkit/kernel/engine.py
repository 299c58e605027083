"""Evaluation engine: ``do``/``poss``/``holds``/``solve`` over situations.

Two interchangeable situation representations are supported:

* regression over the action history (``holds``, with optional tabling
  through ``HoldsCache``), and
* progression into an explicit fluent set (``progress`` producing a
  ``StateSnapshot``).

Both must agree on every registered ground instance; the test suite
cross-checks them on randomized histories.

Evaluation is pure with respect to situations: concurrent readers may
share situations and an engine freely.  The cache tolerates concurrent
insert/lookup (duplicate computation is possible, inconsistency is not,
since entries are only ever written with the one correct value).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import NonGround, NotPossible, QueryError, UnboundNegation
from .query import (
    And,
    Atom,
    Cmp,
    Not,
    Or,
    QueryExpr,
    Some,
    free_variables,
    fluent_kinds,
    validate,
)
from .registry import Registry
from .terms import (
    ActionInstance,
    Bindings,
    Do,
    FluentInstance,
    Initial,
    Situation,
    canonical_key,
    is_ground,
    same_history,
    substitute,
    unify,
)


class HoldsCache:
    """Tabling for ground ``holds`` queries.

    Keys are (fluent digest, situation digest); the stored instance and
    situation are kept so a hit is verified structurally rather than
    trusted to the hash.  Unbounded by design: project histories are
    bounded in this application.  ``clear`` is the only eviction.
    """

    def __init__(self) -> None:
        self._entries: dict[tuple[bytes, bytes], tuple[FluentInstance, Situation, bool]] = {}

    def lookup(self, fluent_digest: bytes, instance: FluentInstance, situation: Situation) -> bool | None:
        entry = self._entries.get((fluent_digest, situation.digest))
        if entry is None:
            return None
        cached_instance, cached_situation, value = entry
        if cached_instance == instance and (cached_situation is situation or same_history(cached_situation, situation)):
            return value
        return None

    def store(self, fluent_digest: bytes, instance: FluentInstance, situation: Situation, value: bool) -> None:
        self._entries[(fluent_digest, situation.digest)] = (instance, situation, value)

    def clear(self) -> None:
        self._entries.clear()

    def __len__(self) -> int:
        return len(self._entries)


@dataclass(frozen=True)
class StateSnapshot:
    """The progressed representation: every ground fluent holding in ``s``."""

    fluents: frozenset[FluentInstance]
    situation_digest: bytes

    def holds(self, instance: FluentInstance) -> bool:
        if not instance.ground:
            raise NonGround(f"snapshot membership needs a ground instance: {instance!r}")
        return instance in self.fluents


def snapshot_holds(instance: FluentInstance, snapshot: StateSnapshot) -> bool:
    """Functional spelling of ``StateSnapshot.holds``."""
    return snapshot.holds(instance)


def _binding_key(bindings: Bindings):
    return tuple(sorted((name, canonical_key(value)) for name, value in bindings.items()))


def _compare(left, op: str, right) -> bool:
    if op == "=":
        return left == right
    if op == "!=":
        return left != right
    lk, rk = canonical_key(left), canonical_key(right)
    if op == "<":
        return lk < rk
    if op == "<=":
        return lk <= rk
    if op == ">":
        return lk > rk
    if op == ">=":
        return lk >= rk
    raise QueryError(f"unknown comparison operator {op!r}")


class Engine:
    """Binds a frozen registry and an optional cache into an evaluator."""

    def __init__(self, registry: Registry, cache: HoldsCache | None = None):
        self.registry = registry
        self.cache = cache

    # -- ground evaluation ------------------------------------------------

    def holds(self, instance: FluentInstance, situation: Situation) -> bool:
        """Regression: unwind the history applying successor steps.

        Iterative on purpose; histories reach tens of thousands of actions
        and must not hit the interpreter recursion limit.
        """
        if not instance.ground:
            raise NonGround(f"holds needs a ground instance, got {instance!r}; use solve for queries")
        kind = self.registry.fluent_kind(instance.kind)
        cache = self.cache
        fluent_digest = instance.digest() if cache is not None else b""

        frames: list[Do] = []
        cursor: Situation = situation
        value: bool | None = None
        while isinstance(cursor, Do):
            if cache is not None:
                hit = cache.lookup(fluent_digest, instance, cursor)
                if hit is not None:
                    value = hit
                    break
            frames.append(cursor)
            cursor = cursor.prior
        else:
            kb = self.registry.initial_kb(cursor.kb_id)
            value = bool(kind.initially(instance, kb))
            if cache is not None:
                cache.store(fluent_digest, instance, cursor, value)

        for frame in reversed(frames):
            value = bool(kind.successor(instance, frame.action, value))
            if cache is not None:
                cache.store(fluent_digest, instance, frame, value)
        assert value is not None
        return value

    def poss(self, act: ActionInstance, situation: Situation) -> bool:
        """True iff the action's registered precondition holds."""
        if not act.ground:
            raise NonGround(f"poss needs a ground action, got {act!r}")
        kind = self.registry.action_kind(act.kind)
        return bool(kind.poss(act, situation, self))

    def do(self, act: ActionInstance, situation: Situation) -> Situation:
        """The successor situation, or NotPossible if the precondition fails."""
        if not act.ground:
            raise NonGround(f"do needs a ground action, got {act!r}")
        kind = self.registry.action_kind(act.kind)
        if not kind.poss(act, situation, self):
            raise NotPossible(act, situation, kind.rejection(act, situation, self))
        return Do(act, situation)

    # -- query evaluation --------------------------------------------------

    def solve(self, expr: QueryExpr, situation: Situation, bindings: Bindings | None = None) -> list[Bindings]:
        """All variable bindings under which the query holds.

        Bindings are deduplicated and canonically ordered; a ground, true
        query yields exactly one empty binding.
        """
        validate(expr)
        for name in fluent_kinds(expr):
            self.registry.fluent_kind(name)
        unique: dict[tuple, Bindings] = {}
        for result in self._solve(expr, situation, dict(bindings or {})):
            unique.setdefault(_binding_key(result), result)
        return [unique[key] for key in sorted(unique)]

    def query_true(self, expr: QueryExpr, situation: Situation, bindings: Bindings | None = None) -> bool:
        """True iff the query has at least one solution."""
        validate(expr)
        for _ in self._solve(expr, situation, dict(bindings or {})):
            return True
        return False

    def _solve(self, expr: QueryExpr, situation: Situation, env: Bindings) -> Iterator[Bindings]:
        if isinstance(expr, Atom):
            pattern = FluentInstance(
                expr.fluent.kind,
                tuple(substitute(arg, env) for arg in expr.fluent.args),
            )
            if pattern.ground:
                if self.holds(pattern, situation):
                    yield env
                return
            kind = self.registry.fluent_kind(pattern.kind)
            candidates = sorted(set(kind.candidates(situation)), key=lambda f: tuple(canonical_key(a) for a in f.args))
            for candidate in candidates:
                if len(candidate.args) != len(pattern.args):
                    continue
                extended: Bindings | None = env
                for pat_arg, ground_arg in zip(pattern.args, candidate.args):
                    extended = unify(pat_arg, ground_arg, extended)
                    if extended is None:
                        break
                if extended is not None and self.holds(candidate, situation):
                    yield extended
        elif isinstance(expr, And):
            for left_env in self._solve(expr.left, situation, env):
                yield from self._solve(expr.right, situation, left_env)
        elif isinstance(expr, Or):
            yield from self._solve(expr.left, situation, env)
            yield from self._solve(expr.right, situation, env)
        elif isinstance(expr, Not):
            unbound = free_variables(expr.body) - set(env)
            if unbound:
                raise UnboundNegation(f"negation over unbound variables {sorted(unbound)}")
            for _ in self._solve(expr.body, situation, env):
                return
            yield env
        elif isinstance(expr, Some):
            if expr.var in env:
                raise QueryError(f"variable {expr.var!r} is already bound outside its some(...)")
            yield from self._solve(expr.body, situation, env)
        elif isinstance(expr, Cmp):
            left = substitute(expr.left, env)
            right = substitute(expr.right, env)
            if not is_ground(left) or not is_ground(right):
                raise UnboundNegation(f"comparison over unbound variables: {expr!r}")
            if _compare(left, expr.op, right):
                yield env
        else:
            raise TypeError(f"not a query expression: {expr!r}")

    # -- whole-situation views ----------------------------------------------

    def holding_fluents(self, situation: Situation, kind_filter: str | None = None) -> frozenset[FluentInstance]:
        """Every registered ground instance that holds in the situation.

        An unregistered ``kind_filter`` yields the empty set rather than an
        error, mirroring the empty-registry case.
        """
        if kind_filter is not None:
            if not self.registry.has_fluent_kind(kind_filter):
                return frozenset()
            kinds = [self.registry.fluent_kind(kind_filter)]
        else:
            kinds = self.registry.fluent_kinds()
        holding: set[FluentInstance] = set()
        for kind in kinds:
            for candidate in set(kind.candidates(situation)):
                if self.holds(candidate, situation):
                    holding.add(candidate)
        return frozenset(holding)

    def progress(self, situation: Situation) -> StateSnapshot:
        """Roll the history forward into an explicit fluent set.

        Candidate enumeration runs per prefix, so this is quadratic in
        history length; meant for the bounded histories of this domain.
        """
        prefixes: list[Do] = []
        cursor: Situation = situation
        while isinstance(cursor, Do):
            prefixes.append(cursor)
            cursor = cursor.prior
        prefixes.reverse()
        assert isinstance(cursor, Initial)
        kb = self.registry.initial_kb(cursor.kb_id)
        kinds = self.registry.fluent_kinds()

        state: set[FluentInstance] = set()
        for kind in kinds:
            for candidate in set(kind.candidates(cursor)):
                if kind.initially(candidate, kb):
                    state.add(candidate)
        for prefix in prefixes:
            act = prefix.action
            next_state: set[FluentInstance] = set()
            for kind in kinds:
                for candidate in set(kind.candidates(prefix)):
                    if kind.successor(candidate, act, candidate in state):
                        next_state.add(candidate)
            state = next_state
        return StateSnapshot(frozenset(state), situation.digest)

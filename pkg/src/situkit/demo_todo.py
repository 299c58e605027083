"""A second mini-application over the kernel alone: a todo list.

Proof that the reasoning core is reusable without the ontology,
scaffolding, or tutor layers: this module imports nothing but
``situkit.kernel``.  Tasks and their completion state are fluents; adding,
completing, and reopening are actions with preconditions.

Behaviour table (also in the README):

    command        action                precondition
    -------        ------                ------------
    add TITLE      add_task(id, title)   id is fresh
    done ID        complete_task(id)     task exists and is not done
    reopen ID      reopen_task(id)       task exists and is done
    list           (query only)          -
"""
from __future__ import annotations

from typing import IO, Iterator

from .kernel import (
    ActionInstance,
    ActionKind,
    And,
    Atom,
    Engine,
    FluentInstance,
    FluentKind,
    HoldsCache,
    Initial,
    Not,
    NotPossible,
    Registry,
    Situation,
    Some,
    Sym,
    Var,
    action,
    fluent,
)


class TaskFluent(FluentKind):
    """task(id, title): true once the task is added; tasks are never removed."""

    name = "task"

    def initially(self, instance: FluentInstance, kb) -> bool:
        return False

    def successor(self, instance: FluentInstance, act: ActionInstance, held_before: bool) -> bool:
        if act.kind == "add_task" and act.args == instance.args:
            return True
        return held_before

    def candidates(self, situation: Situation) -> Iterator[FluentInstance]:
        for act in situation.history():
            if act.kind == "add_task":
                yield fluent(self.name, *act.args)


class DoneFluent(FluentKind):
    """done(id): toggled by complete_task/reopen_task."""

    name = "done"

    def initially(self, instance: FluentInstance, kb) -> bool:
        return False

    def successor(self, instance: FluentInstance, act: ActionInstance, held_before: bool) -> bool:
        if act.kind == "complete_task" and act.args == instance.args:
            return True
        if act.kind == "reopen_task" and act.args == instance.args:
            return False
        return held_before

    def candidates(self, situation: Situation) -> Iterator[FluentInstance]:
        for act in situation.history():
            if act.kind == "complete_task":
                yield fluent(self.name, act.args[0])


class AddTaskAction(ActionKind):
    name = "add_task"

    def precondition(self, act: ActionInstance):
        task_id = act.args[0]
        return Not(Some("t", Atom(fluent("task", task_id, Var("t")))))


class CompleteTaskAction(ActionKind):
    name = "complete_task"

    def precondition(self, act: ActionInstance):
        task_id = act.args[0]
        return And(
            Some("t", Atom(fluent("task", task_id, Var("t")))),
            Not(Atom(fluent("done", task_id))),
        )


class ReopenTaskAction(ActionKind):
    name = "reopen_task"

    def precondition(self, act: ActionInstance):
        task_id = act.args[0]
        return Atom(fluent("done", task_id))


def build_todo_engine() -> tuple[Engine, Situation]:
    """A fresh registry/engine pair with the todo kinds plugged in."""
    registry = Registry()
    registry.register_fluent_kind(TaskFluent())
    registry.register_fluent_kind(DoneFluent())
    registry.register_action_kind(AddTaskAction())
    registry.register_action_kind(CompleteTaskAction())
    registry.register_action_kind(ReopenTaskAction())
    registry.register_initial_kb("todo", object())
    registry.freeze()
    return Engine(registry, HoldsCache()), Initial("todo")


class TodoList:
    """Convenience wrapper holding the current situation."""

    def __init__(self) -> None:
        self.engine, self.situation = build_todo_engine()
        self._counter = 0

    def add(self, title: str) -> str:
        self._counter += 1
        task_id = f"t{self._counter}"
        self.situation = self.engine.do(action("add_task", Sym(task_id), title), self.situation)
        return task_id

    def complete(self, task_id: str) -> None:
        self.situation = self.engine.do(action("complete_task", Sym(task_id)), self.situation)

    def reopen(self, task_id: str) -> None:
        self.situation = self.engine.do(action("reopen_task", Sym(task_id)), self.situation)

    def items(self) -> list[tuple[str, str, bool]]:
        """(id, title, done) rows, id-sorted."""
        rows = []
        for instance in self.engine.holding_fluents(self.situation, "task"):
            task_id, title = instance.args
            assert isinstance(task_id, Sym)
            done = self.engine.holds(fluent("done", task_id), self.situation)
            rows.append((task_id.name, str(title), done))
        rows.sort()
        return rows


def run_repl(stdin: IO[str], stdout: IO[str]) -> int:
    """Line-oriented interactive loop; returns the exit code."""
    todo = TodoList()
    print("todo demo: add TITLE | done ID | reopen ID | list | quit", file=stdout)
    for raw in stdin:
        line = raw.strip()
        if not line:
            continue
        command, _, rest = line.partition(" ")
        try:
            if command == "add" and rest:
                task_id = todo.add(rest)
                print(f"added {task_id}", file=stdout)
            elif command == "done" and rest:
                todo.complete(rest)
                print(f"completed {rest}", file=stdout)
            elif command == "reopen" and rest:
                todo.reopen(rest)
                print(f"reopened {rest}", file=stdout)
            elif command == "list":
                for task_id, title, done in todo.items():
                    marker = "x" if done else " "
                    print(f"[{marker}] {task_id} {title}", file=stdout)
            elif command in ("quit", "exit"):
                break
            else:
                print(f"unknown command: {line}", file=stdout)
        except NotPossible as exc:
            print(f"error not-possible: {exc}", file=stdout)
    return 0

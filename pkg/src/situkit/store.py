"""Event-sourced project persistence: one append-only log per project.

Each project is a single situation term; the log is the authority and the
in-memory situation is just its fold.  Events are canonical JSON lines::

    {"seq":1,"project":"p1","actor":"anon","at":"2024-01-01T00:00:00.000Z","kind":"add_data","args":[...]}

Field order is fixed, whitespace is never emitted, timestamps are ISO-8601
with milliseconds and a trailing Z.  Replaying any prefix of a valid log
is deterministic: the digest depends only on the (kind, args) sequence and
the project's kb id.

Writes are serialized per project and fsynced before acknowledgement;
cross-project writes are independent.
"""
from __future__ import annotations

import json
import os
import re
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .kernel import (
    ActionInstance,
    Engine,
    Initial,
    NotPossible,
    Situation,
    SituError,
    UnknownKb,
    term_from_wire,
    term_to_wire,
)

EVENT_FIELDS = ("seq", "project", "actor", "at", "kind", "args")

_TS = re.compile(r"^(\d{4})-(\d{2})-(\d{2})T(\d{2}):(\d{2}):(\d{2})\.(\d{3})Z$")


class CorruptLog(SituError):
    """The log has a gap, a malformed line, or an event that fails poss."""

    code = "corrupt-log"

    def __init__(self, seq: int, reason: str):
        super().__init__(f"event {seq}: {reason}")
        self.seq = seq
        self.reason = reason


class UnknownProject(SituError):
    code = "unknown-project"

    def __init__(self, project_id: str):
        super().__init__(f"no project {project_id!r}")
        self.project_id = project_id


def format_timestamp(at: datetime) -> str:
    at = at.astimezone(timezone.utc)
    return f"{at.year:04d}-{at.month:02d}-{at.day:02d}T{at.hour:02d}:{at.minute:02d}:{at.second:02d}.{at.microsecond // 1000:03d}Z"


def parse_timestamp(text: str) -> datetime:
    match = _TS.match(text)
    if match is None:
        raise ValueError(f"bad timestamp {text!r}")
    year, month, day, hour, minute, second, milli = (int(g) for g in match.groups())
    return datetime(year, month, day, hour, minute, second, milli * 1000, tzinfo=timezone.utc)


def event_line(seq: int, project_id: str, act: ActionInstance) -> str:
    """Canonical single-line serialization of one event."""
    payload = {
        "seq": seq,
        "project": project_id,
        "actor": act.actor,
        "at": format_timestamp(act.at),
        "kind": act.kind,
        "args": [term_to_wire(a) for a in act.args],
    }
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False)


def parse_event(line: str, expected_seq: int, project_id: str) -> ActionInstance:
    """Decode one line, enforcing field shape and seq contiguity."""
    try:
        payload = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorruptLog(expected_seq, f"not valid JSON: {exc}") from None
    if not isinstance(payload, dict) or set(payload) != set(EVENT_FIELDS):
        raise CorruptLog(expected_seq, f"unexpected fields: {sorted(payload) if isinstance(payload, dict) else payload!r}")
    if payload["seq"] != expected_seq:
        raise CorruptLog(expected_seq, f"sequence gap: found {payload['seq']!r}")
    if payload["project"] != project_id:
        raise CorruptLog(expected_seq, f"event belongs to project {payload['project']!r}")
    try:
        at = parse_timestamp(payload["at"])
        args = tuple(term_from_wire(a) for a in payload["args"])
        return ActionInstance(kind=payload["kind"], args=args, actor=payload["actor"], at=at)
    except (ValueError, TypeError, KeyError) as exc:
        raise CorruptLog(expected_seq, f"malformed event: {exc}") from None


@dataclass
class _Project:
    id: str
    kb_id: str
    log_path: Path
    lock: threading.Lock
    situation: Situation | None = None
    next_seq: int = 1


class ProjectStore:
    """Project lifecycle plus the append/replay cycle over one data dir."""

    def __init__(self, data_dir: str | Path, engine: Engine):
        self.engine = engine
        self._dir = Path(data_dir)
        self._dir.mkdir(parents=True, exist_ok=True)
        self._create_lock = threading.Lock()
        self._projects: dict[str, _Project] = {}
        for index_path in sorted(self._dir.glob("*/index.json")):
            meta = json.loads(index_path.read_text(encoding="utf-8"))
            project_id = meta["id"]
            self._projects[project_id] = _Project(
                id=project_id,
                kb_id=meta["kb"],
                log_path=index_path.parent / "events.log",
                lock=threading.Lock(),
            )

    # -- lifecycle ---------------------------------------------------------

    def create_project(self, kb_id: str) -> str:
        if not self.engine.registry.has_initial_kb(kb_id):
            raise UnknownKb(kb_id)
        with self._create_lock:
            taken = [int(m.group(1)) for m in (re.match(r"^p(\d+)$", pid) for pid in self._projects) if m]
            project_id = f"p{max(taken, default=0) + 1}"
            project_dir = self._dir / project_id
            project_dir.mkdir(parents=True)
            index_path = project_dir / "index.json"
            index_path.write_text(json.dumps({"id": project_id, "kb": kb_id}) + "\n", encoding="utf-8")
            self._fsync(index_path)
            log_path = project_dir / "events.log"
            log_path.touch()
            project = _Project(id=project_id, kb_id=kb_id, log_path=log_path, lock=threading.Lock())
            project.situation = Initial(kb_id)
            self._projects[project_id] = project
            return project_id

    def list_projects(self) -> list[str]:
        return sorted(self._projects)

    def _project(self, project_id: str) -> _Project:
        try:
            return self._projects[project_id]
        except KeyError:
            raise UnknownProject(project_id) from None

    def kb_id(self, project_id: str) -> str:
        return self._project(project_id).kb_id

    # -- the append/replay cycle --------------------------------------------

    def situation(self, project_id: str) -> Situation:
        """The project's current situation (replayed on first access)."""
        project = self._project(project_id)
        with project.lock:
            if project.situation is None:
                project.situation, project.next_seq = self._replay_locked(project)
            return project.situation

    def append(self, project_id: str, act: ActionInstance) -> int:
        """Durably append one event; the action must be possible now.

        The write hits disk (fsync) before the in-memory situation advances
        and the seq is acknowledged.  A NotPossible action writes nothing.
        """
        project = self._project(project_id)
        with project.lock:
            if project.situation is None:
                project.situation, project.next_seq = self._replay_locked(project)
            advanced = self.engine.do(act, project.situation)  # raises NotPossible
            seq = project.next_seq
            line = event_line(seq, project_id, act)
            with open(project.log_path, "a", encoding="utf-8") as handle:
                handle.write(line + "\n")
                handle.flush()
                os.fsync(handle.fileno())
            project.situation = advanced
            project.next_seq = seq + 1
            return seq

    def replay(self, project_id: str) -> Situation:
        """Rebuild the situation from disk, ignoring in-memory state."""
        project = self._project(project_id)
        with project.lock:
            situation, _ = self._replay_locked(project)
            return situation

    def _replay_locked(self, project: _Project) -> tuple[Situation, int]:
        situation: Situation = Initial(project.kb_id)
        seq = 0
        with open(project.log_path, "r", encoding="utf-8") as handle:
            for raw in handle:
                raw = raw.strip()
                if not raw:
                    continue
                seq += 1
                act = parse_event(raw, seq, project.id)
                try:
                    situation = self.engine.do(act, situation)
                except NotPossible as exc:
                    raise CorruptLog(seq, f"action not possible during replay ({exc.reason})") from None
        return situation, seq + 1

    def events(self, project_id: str) -> list[dict]:
        """Raw decoded event payloads, for inspection tools."""
        project = self._project(project_id)
        out = []
        with open(project.log_path, "r", encoding="utf-8") as handle:
            for raw in handle:
                raw = raw.strip()
                if raw:
                    out.append(json.loads(raw))
        return out

    @staticmethod
    def _fsync(path: Path) -> None:
        fd = os.open(path, os.O_RDONLY)
        try:
            os.fsync(fd)
        finally:
            os.close(fd)

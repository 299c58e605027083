"""HTTP surface over the library: projects, actions, queries, interventions.

The API is a thin adapter: every response body is reproducible by a direct
library call against the replayed situation.  Action submission returns the
new pending interventions inline so the interface loop needs one round trip.

No authentication; the actor is a client-supplied label.
"""
from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .kernel import (
    Engine,
    FluentInstance,
    NonGround,
    NotPossible,
    QueryError,
    Situation,
    SituError,
    Triple,
    UnboundNegation,
    UnknownKb,
    UnknownKind,
    action,
    canonical_key,
    term_from_wire,
    term_to_wire,
)
from .scaffolding import pending_interventions
from .store import CorruptLog, ProjectStore, UnknownProject
from .tutor import AppConfig, glossary_term

_STATUS = {
    NotPossible: 409,
    UnknownProject: 404,
    UnknownKb: 400,
    UnknownKind: 400,
    NonGround: 400,
    UnboundNegation: 400,
    QueryError: 400,
    CorruptLog: 500,
}


def _error_payload(exc: SituError) -> dict:
    payload = {"code": exc.code, "message": str(exc)}
    if isinstance(exc, NotPossible):
        payload["reason"] = exc.reason
    return {"error": payload}


class CreateProjectRequest(BaseModel):
    kb: str


class SubmitActionRequest(BaseModel):
    kind: str
    args: list = Field(default_factory=list)
    actor: str = "anon"


def _fluent_wire(instance: FluentInstance) -> dict:
    return {"kind": instance.kind, "args": [term_to_wire(a) for a in instance.args]}


def _fluent_sort_key(instance: FluentInstance):
    return (instance.kind, tuple(canonical_key(a) for a in instance.args))


def _triple_wire(triple: Triple) -> dict:
    return {
        "subject": term_to_wire(triple.subject),
        "predicate": term_to_wire(triple.predicate),
        "object": term_to_wire(triple.object),
    }


def _pending_wire(engine: Engine, situation: Situation) -> list[dict]:
    pending = pending_interventions(engine, situation)
    out = []
    by_id = {}
    for _, bank in engine.registry.banks():
        for entry in bank.intervention():
            by_id[entry.id] = entry
    for item in pending:
        out.append(
            {
                "id": item.id,
                "trigger": item.trigger,
                "level": item.level,
                "payload": item.payload,
                "max_level": by_id[item.id].max_level,
            }
        )
    return out


def create_app(
    store: ProjectStore,
    config: AppConfig,
    ui_dir: str | Path | None = None,
    cors_origins: tuple[str, ...] = (),
) -> FastAPI:
    engine = store.engine
    app = FastAPI(title="situkit", docs_url=None, redoc_url=None)

    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(SituError)
    async def situ_error_handler(request: Request, exc: SituError):
        status = 500
        for typ, code in _STATUS.items():
            if isinstance(exc, typ):
                status = code
                break
        return JSONResponse(status_code=status, content=_error_payload(exc))

    @app.exception_handler(ValueError)
    async def value_error_handler(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"error": {"code": "bad-request", "message": str(exc)}})

    @app.post("/projects", status_code=201)
    def create_project(body: CreateProjectRequest):
        project_id = store.create_project(body.kb)
        return {"id": project_id}

    @app.get("/projects")
    def list_projects():
        return store.list_projects()

    @app.post("/projects/{project_id}/actions")
    def submit_action(project_id: str, body: SubmitActionRequest):
        args = tuple(term_from_wire(a) for a in body.args)
        act = action(body.kind, *args, actor=body.actor)
        seq = store.append(project_id, act)
        situation = store.situation(project_id)
        return {"seq": seq, "pending": _pending_wire(engine, situation)}

    @app.get("/projects/{project_id}/fluents")
    def project_fluents(project_id: str, kind: str | None = None):
        situation = store.situation(project_id)
        holding = sorted(engine.holding_fluents(situation, kind), key=_fluent_sort_key)
        return [_fluent_wire(f) for f in holding]

    @app.get("/projects/{project_id}/ontology")
    def project_ontology(project_id: str):
        situation = store.situation(project_id)
        initial = sorted(engine.holding_fluents(situation, "initial_assertion"), key=_fluent_sort_key)
        asserted = sorted(engine.holding_fluents(situation, "asserted"), key=_fluent_sort_key)
        return {
            "initial": [_triple_wire(Triple(*f.args)) for f in initial],
            "asserted": [_triple_wire(f.args[0]) for f in asserted],
        }

    @app.get("/projects/{project_id}/interventions")
    def project_interventions(project_id: str):
        situation = store.situation(project_id)
        return _pending_wire(engine, situation)

    @app.get("/config/steps")
    def config_steps():
        return [
            {"id": step.id, "title": step.title, "predicates": list(step.predicates)}
            for step in config.steps
        ]

    @app.get("/glossary/{term}")
    def glossary_lookup(term: str, project: str | None = None, actor: str = "anon"):
        entry = config.glossary.lookup(term)
        if entry is None:
            return JSONResponse(
                status_code=404,
                content={"error": {"code": "unknown-term", "message": f"no glossary entry for {term!r}"}},
            )
        if project is not None:
            # A successful lookup is a pedagogically relevant event.
            store.append(project, action("glossary_lookup", glossary_term(term), actor=actor))
        return {"term": entry.term, "definition": entry.definition}

    if ui_dir is not None:
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app

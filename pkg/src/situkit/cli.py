"""Operator command line: serve, project lifecycle, log tools, demos, checks.

Output is line-oriented and stable so it can be golden-tested; ``--json``
switches the listing/replay commands to machine-readable output.  Errors
exit nonzero after printing ``error <code>: <message>`` on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .checks import run_all
from .demo_todo import run_repl
from .kernel import Engine, HoldsCache, Registry, SituError, canonical_key, term_to_wire
from .store import ProjectStore
from .tutor import AppConfig, demo_config_path, load_app_config


def _build(config_path: str | None, data_dir: str) -> tuple[Engine, ProjectStore, AppConfig]:
    registry = Registry()
    config = load_app_config(config_path or demo_config_path(), registry)
    registry.freeze()
    engine = Engine(registry, HoldsCache())
    store = ProjectStore(data_dir, engine)
    return engine, store, config


def _fluent_line(instance) -> str:
    return json.dumps(
        {"kind": instance.kind, "args": [term_to_wire(a) for a in instance.args]},
        separators=(",", ":"),
        ensure_ascii=False,
    )


def _sorted_fluents(engine: Engine, situation) -> list:
    return sorted(
        engine.holding_fluents(situation),
        key=lambda f: (f.kind, tuple(canonical_key(a) for a in f.args)),
    )


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    engine, store, config = _build(args.config, args.data)
    ui_dir = args.ui if args.ui and Path(args.ui).is_dir() else None
    cors = tuple(args.cors) if args.cors else ()
    app = create_app(store, config, ui_dir=ui_dir, cors_origins=cors)
    host, _, port = args.listen.rpartition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return 0


def cmd_project_new(args) -> int:
    engine, store, config = _build(args.config, args.data)
    kb_id = args.kb or config.kb_id
    project_id = store.create_project(kb_id)
    print(project_id)
    return 0


def cmd_project_list(args) -> int:
    _, store, _ = _build(args.config, args.data)
    projects = store.list_projects()
    if args.json:
        print(json.dumps(projects))
    else:
        for project_id in projects:
            print(project_id)
    return 0


def cmd_log_replay(args) -> int:
    engine, store, _ = _build(args.config, args.data)
    situation = store.replay(args.project)
    holding = _sorted_fluents(engine, situation)
    if args.json:
        print(
            json.dumps(
                {
                    "project": args.project,
                    "digest": situation.digest.hex(),
                    "events": len(situation),
                    "fluents": [json.loads(_fluent_line(f)) for f in holding],
                },
                separators=(",", ":"),
            )
        )
    else:
        print(f"digest {situation.digest.hex()}")
        print(f"events {len(situation)}")
        for instance in holding:
            print(_fluent_line(instance))
    return 0


def cmd_log_validate(args) -> int:
    _, store, _ = _build(args.config, args.data)
    store.replay(args.project)
    print(f"{args.project} ok")
    return 0


def cmd_demo_todo(args) -> int:
    return run_repl(sys.stdin, sys.stdout)


def cmd_check_oracles(args) -> int:
    results = run_all(seed=args.seed, cases=args.cases)
    failed = 0
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        if not result.passed:
            failed += 1
        print(f"{status} {result.name}: {result.detail}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="situkit")
    parser.add_argument("--config", default=None, help="app config path (default: shipped demo)")
    parser.add_argument("--data", default="data", help="project data directory")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--listen", default="127.0.0.1:8000")
    serve.add_argument("--ui", default=None, help="static UI directory to mount at /ui")
    serve.add_argument("--cors", action="append", default=[], help="allowed CORS origin (repeatable)")
    serve.set_defaults(func=cmd_serve)

    project = sub.add_parser("project", help="project lifecycle")
    project_sub = project.add_subparsers(dest="subcommand", required=True)
    new = project_sub.add_parser("new")
    new.add_argument("--kb", default=None, help="initial kb id (default: config kb)")
    new.set_defaults(func=cmd_project_new)
    listing = project_sub.add_parser("list")
    listing.add_argument("--json", action="store_true")
    listing.set_defaults(func=cmd_project_list)

    log = sub.add_parser("log", help="event log tools")
    log_sub = log.add_subparsers(dest="subcommand", required=True)
    replay = log_sub.add_parser("replay")
    replay.add_argument("project")
    replay.add_argument("--json", action="store_true")
    replay.set_defaults(func=cmd_log_replay)
    validate = log_sub.add_parser("validate")
    validate.add_argument("project")
    validate.set_defaults(func=cmd_log_validate)

    demo = sub.add_parser("demo", help="example applications")
    demo_sub = demo.add_subparsers(dest="subcommand", required=True)
    todo = demo_sub.add_parser("todo", help="todo list over the bare kernel")
    todo.set_defaults(func=cmd_demo_todo)

    check = sub.add_parser("check", help="verification suites")
    check_sub = check.add_subparsers(dest="subcommand", required=True)
    oracles = check_sub.add_parser("oracles", help="brute-force equivalence suites")
    oracles.add_argument("--seed", type=int, default=7)
    oracles.add_argument("--cases", type=int, default=60)
    oracles.set_defaults(func=cmd_check_oracles)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SituError as exc:
        print(f"error {exc.code}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error bad-input: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command line entry point.

Exit codes: 0 success, 1 usage error, 2 validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .engine import Engine, EngineConfig
from .experiments import ExperimentSpec, run_experiment
from .interaction import InteractionProtocolError, policy_from_dict
from .model import (GeneratorSpec, ModelError, generate_model, load_model,
                    serialize_model)
from .preferences import PreferenceError


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is exit 1."""

    def error(self, message):
        raise UsageError(message)


def _load_config(path: str | None, seed: int | None) -> EngineConfig:
    data = {}
    if path:
        data = json.loads(Path(path).read_text())
    if seed is not None:
        data["rng_seed"] = seed
    return EngineConfig.from_dict(data)


def _write_run_outputs(engine: Engine, out_dir: str, stats: list[dict]) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "archive.json").write_text(
        json.dumps(engine.archive_snapshot(), indent=2) + "\n")
    with open(out / "stats.jsonl", "w") as fh:
        for row in stats:
            fh.write(json.dumps(row) + "\n")
    (out / "config.json").write_text(
        json.dumps(engine.config.to_dict(), indent=2) + "\n")


def cmd_run(args) -> int:
    model = load_model(args.model)
    config = _load_config(args.config, args.seed)
    engine = Engine(model, config)
    stats: list[dict] = []
    engine.run(stats_writer=stats.append, stats_every=args.stats_every)
    _write_run_outputs(engine, args.out, stats)
    print(f"archive size {len(engine.archive)}, "
          f"{engine.evaluations_used} evaluations")
    return 0


def cmd_scripted(args) -> int:
    model = load_model(args.model)
    config = _load_config(args.config, args.seed)
    policy = policy_from_dict(json.loads(Path(args.policy).read_text()))
    engine = Engine(model, config)
    stats: list[dict] = []
    engine.run(feedback_provider=policy, stats_writer=stats.append,
               stats_every=args.stats_every)
    _write_run_outputs(engine, args.out, stats)
    print(f"archive size {len(engine.archive)}, "
          f"{engine.evaluations_used} evaluations, "
          f"{len(engine.store)} preferences recorded")
    return 0


def cmd_experiment(args) -> int:
    spec = ExperimentSpec.from_dict(json.loads(Path(args.spec).read_text()))
    report = run_experiment(spec, args.out)
    print(f"{len(report['configurations'])} configurations written to {args.out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    app = create_app(data_dir=args.data_dir, max_sessions=args.max_sessions,
                     static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def cmd_generate(args) -> int:
    spec = GeneratorSpec(
        n_classes=args.classes, n_as=args.associations,
        n_ag=args.aggregations, n_co=args.compositions,
        n_ge=args.generalizations, n_de=args.dependencies,
        p_nav=args.p_nav, seed=args.seed,
    )
    text = serialize_model(generate_model(spec))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_validate(args) -> int:
    model = load_model(args.model)
    print(f"ok: {model.n_classes} classes, {len(model.relationships)} relationships")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="archevolve")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--model", required=True)
        p.add_argument("--config")
        p.add_argument("--seed", type=int)
        p.add_argument("--out", required=True)
        p.add_argument("--stats-every", type=int, default=100)

    p = sub.add_parser("run", help="batch run without interaction")
    common(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("scripted", help="run with a scripted decision maker")
    common(p)
    p.add_argument("--policy", required=True)
    p.set_defaults(func=cmd_scripted)

    p = sub.add_parser("experiment", help="run an experiment specification")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("serve", help="start the HTTP session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--data-dir", default="data")
    p.add_argument("--max-sessions", type=int, default=4)
    p.add_argument("--static-dir")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("generate", help="generate a synthetic model")
    p.add_argument("--classes", type=int, required=True)
    p.add_argument("--associations", type=int, default=0)
    p.add_argument("--aggregations", type=int, default=0)
    p.add_argument("--compositions", type=int, default=0)
    p.add_argument("--generalizations", type=int, default=0)
    p.add_argument("--dependencies", type=int, default=0)
    p.add_argument("--p-nav", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("validate", help="check a model document")
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ModelError, PreferenceError, InteractionProtocolError,
            ValueError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

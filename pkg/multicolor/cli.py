"""Command-line entry point: ``python -m multicolor <subcommand>``.

Exit codes: 0 success, 1 verification failure, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, List, Optional

from .coloring import color_optimal, emit_coloring, exact_coloring, parse_coloring, verify
from .config import get_settings
from .core import Multigraph, emit_multigraph, lower_bound, parse_multigraph, rho_exact, rho_fast
from .exceptions import MulticolorError
from .harness import FORMATS, ExperimentConfig, aggregate, emit, load_experiment, run_trials
from .logging_config import setup_logging
from .observability import init_sentry
from .sampling import MODELS, SampleConfig, predict, sample

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_graph(path: str) -> Multigraph:
    return parse_multigraph(_read(path))


def cmd_sample(args: argparse.Namespace) -> int:
    graph = sample(SampleConfig(n=args.n, m=args.m, seed=args.seed, model=args.model))
    _write(emit_multigraph(graph), args.output)
    return EXIT_OK


def cmd_color(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    outcome = color_optimal(graph, seed=args.seed)
    _write(emit_coloring(graph, outcome.coloring, outcome.strategy, outcome.first_class), args.output)
    summary = {
        "colors_used": outcome.colors_used,
        "lower_bound": outcome.lower_bound,
        "first_class": outcome.first_class,
        "strategy": outcome.strategy,
        "diagnostics": outcome.diagnostics,
    }
    sys.stderr.write(json.dumps(summary, default=str) + "\n")
    return EXIT_OK


def cmd_exact(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    coloring = exact_coloring(graph, max_m=args.max_exact_m)
    first_class = coloring.colors_used == lower_bound(graph).k
    _write(emit_coloring(graph, coloring, "exact", first_class), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    coloring = parse_coloring(graph, _read(args.coloring))
    report = verify(graph, coloring)
    if report.valid:
        sys.stdout.write(f"ok colors_used={coloring.colors_used}\n")
        return EXIT_OK
    for violation in report.violations:
        sys.stdout.write(
            f"violation vertex={violation.vertex} color={violation.color} "
            f"instances={' '.join(f'{i.u}-{i.v}#{i.copy}' for i in violation.instances)}\n"
        )
    for inst in report.uncolored:
        sys.stdout.write(f"uncolored {inst.u}-{inst.v}#{inst.copy}\n")
    return EXIT_VERIFY_FAILED


def cmd_rho(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    witness = rho_fast(graph) if args.fast else rho_exact(graph)
    bound = lower_bound(graph)
    lines = [
        f"rho={witness.value}",
        f"edges_inside={witness.edges_inside}",
        f"vertices={','.join(str(v) for v in witness.vertices)}",
        f"method={'fast' if args.fast else 'exact'}",
        f"lower_bound={bound.k}",
        f"active={bound.active}",
    ]
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_predict(args: argparse.Namespace) -> int:
    epsilon = args.epsilon if args.epsilon is not None else get_settings().default_epsilon
    _write(predict(args.n, args.m, epsilon).to_text(), args.output)
    return EXIT_OK


def cmd_experiment(args: argparse.Namespace) -> int:
    cfg = load_experiment(args.config)
    overrides = {
        "trials": args.trials,
        "base_seed": args.seed,
        "model": args.model,
        "output_format": args.format,
        "workers": args.workers,
    }
    updates = {key: value for key, value in overrides.items() if value is not None}
    if updates:
        cfg = ExperimentConfig(**{**cfg.dict(), **updates})
    records = run_trials(cfg)
    rows = aggregate(records) if args.summary else records
    payload = emit(rows, cfg.output_format, summary=args.summary)
    if args.output:
        Path(args.output).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multicolor", description="Multigraph edge colouring and M(n,m) experiments")
    parser.add_argument("--log-level", default=None, help="override MULTICOLOR_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="emit a random multigraph")
    p.add_argument("-n", type=int, required=True, help="number of vertices")
    p.add_argument("-m", type=int, required=True, help="number of edges (mean total for poisson)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--model", choices=MODELS, default=MODELS[0])
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("color", help="colour a multigraph file")
    p.add_argument("graph", help="multigraph file, or - for stdin")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("exact", help="optimal colouring of a tiny multigraph")
    p.add_argument("graph")
    p.add_argument("--max-exact-m", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="check a colouring document against a multigraph")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rho", help="density witness report")
    p.add_argument("graph")
    p.add_argument("--fast", action="store_true", help="greedy peeling instead of the exhaustive scan")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("predict", help="theory-side predictions for M(n,m)")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("experiment", help="run an experiment configuration file")
    p.add_argument("config", help="JSON experiment file")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None, help="base seed")
    p.add_argument("--model", choices=MODELS, default=None)
    p.add_argument("--format", choices=FORMATS, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--summary", action="store_true", help="emit per-cell summaries instead of records")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    setup_logging(args.log_level or settings.log_level)
    init_sentry(settings.sentry_dsn, settings.environment, settings.version, component="cli")
    handler: Callable[[argparse.Namespace], int] = args.func
    try:
        return handler(args)
    except (MulticolorError, ValueError, OSError) as exc:
        logger.debug("command %s failed", args.command, exc_info=True)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID

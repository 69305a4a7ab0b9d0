"""Command-line interface: run experiments, analyze base games, export topologies."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import harness
from .engine import derive_stream
from .gametheory import BaseGame, GameError, format_analysis
from .network import (
    TopologyError,
    build_core_edge,
    build_fully_connected,
    build_line,
    build_ring,
)

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dagsim",
        description="Simulate fee-greedy transaction selection attacks on "
        "DAG-style proof-of-work networks and analyze the underlying 2x2 game.",
    )
    parser.add_argument(
        "--list", action="store_true", help="list available experiments and exit"
    )
    sub = parser.add_subparsers(dest="command")

    run_p = sub.add_parser("run", help="execute an experiment sweep and write CSVs")
    run_p.add_argument("experiment", help="experiment name (see --list) or 'custom'")
    run_p.add_argument("--out", default="results", help="output directory")
    run_p.add_argument("--seed", type=int, default=None, help="base seed")
    run_p.add_argument("--runs", type=int, default=None, help="repetitions per sweep point")
    run_p.add_argument(
        "--scale",
        type=int,
        default=1,
        help="divide large-network node counts by this factor (desk-scale mode)",
    )
    run_p.add_argument("--jobs", type=int, default=None, help="worker processes")
    run_p.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a run parameter (duration, block_interval, block_capacity, "
        "mempool_target, injection_period, fee_model); repeatable",
    )
    run_p.add_argument("--config", default=None, help="INI file for the custom experiment")

    game_p = sub.add_parser("game", help="analyze a symmetric 2x2 base game")
    game_p.add_argument("payoffs", nargs=4, metavar="P", help="payoff levels a b c d")

    topo_p = sub.add_parser("topo", help="build a topology and export it as an edge list")
    topo_p.add_argument("kind", choices=("ring", "line", "fully_connected", "core_edge"))
    topo_p.add_argument("--n", type=int, required=True, help="node count")
    topo_p.add_argument("--hop-delay", type=float, default=1.0, help="per-edge delay in seconds")
    topo_p.add_argument("--seed", type=int, default=harness.DEFAULT_SEED)
    topo_p.add_argument("--core-fraction", type=float, default=0.1)
    topo_p.add_argument("--core-degree", type=int, default=30)
    topo_p.add_argument("--edge-degree", type=int, default=3)
    topo_p.add_argument("--out", required=True, help="output edge-list file")
    return parser


def _parse_params(pairs: list[str]) -> dict:
    overrides = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise ValueError(f"--param expects KEY=VALUE, got {pair!r}")
        overrides[key.strip()] = value.strip()
    return overrides


def _cmd_run(args) -> int:
    overrides = _parse_params(args.param)
    if args.experiment == "custom":
        if not args.config:
            raise ValueError("the custom experiment needs --config <file.ini>")
        spec = harness.parse_custom_config(args.config)
        result = harness.run_custom(
            spec, seed=args.seed, runs=args.runs, jobs=args.jobs, overrides=overrides
        )
    elif args.experiment in harness.EXPERIMENTS:
        result = harness.run_experiment(
            args.experiment,
            seed=args.seed if args.seed is not None else harness.DEFAULT_SEED,
            runs=args.runs,
            scale=args.scale,
            jobs=args.jobs,
            overrides=overrides,
        )
    else:
        valid = ", ".join(harness.experiment_names() + ["custom"])
        raise ValueError(f"unknown experiment {args.experiment!r}; valid: {valid}")
    paths = harness.write_csvs(result, args.out)
    for label in ("profit", "collision", "summary"):
        print(f"{label}: {paths[label]}")
    return 0


def _cmd_game(args) -> int:
    try:
        payoffs = [Fraction(text) for text in args.payoffs]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"payoffs must be numbers, got {args.payoffs!r}") from exc
    print(format_analysis(BaseGame(*payoffs)))
    return 0


def _cmd_topo(args) -> int:
    if args.kind == "ring":
        topo = build_ring(args.n, args.hop_delay)
    elif args.kind == "line":
        topo = build_line(args.n, args.hop_delay)
    elif args.kind == "fully_connected":
        topo = build_fully_connected(args.n, args.hop_delay)
    else:
        topo = build_core_edge(
            args.n,
            core_fraction=args.core_fraction,
            core_degree=args.core_degree,
            edge_degree=args.edge_degree,
            rng=derive_stream(args.seed, "topology"),
            hop_delay=args.hop_delay,
        )
    topo.to_edge_list_file(args.out)
    print(f"{args.kind}: {len(topo)} nodes, {topo.edge_count} edges -> {args.out}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.list:
            for name in harness.experiment_names():
                print(f"{name}: {harness.EXPERIMENTS[name].description}")
            print("custom: single point described by an INI file (--config)")
            return 0
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "game":
            return _cmd_game(args)
        if args.command == "topo":
            return _cmd_topo(args)
        parser.print_usage(sys.stderr)
        return 2
    except (ValueError, GameError, TopologyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``generate``, ``run``, ``batch`` and ``analyze``."""

from __future__ import annotations

import argparse
import csv
import math
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .errors import DisinfoError
from .experiment import (
    ExperimentConfig, default_workers, derive_run_seed, make_config, read_config_file,
    read_rows, run_batch, simulate, write_results, write_trajectory,
)
from .graph import generate, is_connected, write_edge_list
from .metrics import mean_path_length
from .stats import correlation_report

EXIT_USAGE = 2
EXIT_ERROR = 1
EXIT_IO = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D401 - argparse hook
        raise UsageError(message)


# flag -> config field; flags mirror field names
_SIM_FLAGS = (
    ("--topology", "topology", str),
    ("--n", "n", int),
    ("--n-conspirators", "n_conspirators", int),
    ("--p-interaction", "p_interaction", float),
    ("--epsilon", "epsilon", float),
    ("--max-steps", "max_steps", int),
    ("--ws-k", "ws_k", int),
    ("--ws-beta", "ws_beta", float),
    ("--ba-m", "ba_m", int),
    ("--seed", "master_seed", lambda s: int(s, 0)),
)


def _add_sim_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value configuration file; flags override it")
    for flag, dest, kind in _SIM_FLAGS:
        kw = {"choices": ("ws", "ba")} if dest == "topology" else {}
        p.add_argument(flag, dest=dest, type=kind, default=None, **kw)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="disinfonet", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="generate one network and write its edge list")
    g.add_argument("--topology", choices=("ws", "ba"), required=True)
    g.add_argument("--n", type=int, default=100)
    g.add_argument("--ws-k", type=int, default=4)
    g.add_argument("--ws-beta", type=float, default=0.1)
    g.add_argument("--ba-m", type=int, default=2)
    g.add_argument("--seed", type=lambda s: int(s, 0), default=0)
    g.add_argument("--out", required=True, help="edge-list CSV path")

    r = sub.add_parser("run", help="simulate one run and write its trajectory")
    _add_sim_flags(r)
    r.add_argument("--run-id", type=int, default=0,
                   help="run index whose derived seed is used (matches batch row run_id)")
    r.add_argument("--out", required=True, help="trajectory CSV path")

    b = sub.add_parser("batch", help="run a seeded batch and correlate the results")
    _add_sim_flags(b)
    b.add_argument("--runs", type=int, default=None)
    b.add_argument("--connect-retry-limit", dest="connect_retry_limit", type=int, default=None)
    b.add_argument("--record-trajectories", dest="record_trajectories",
                   action="store_const", const=True, default=None)
    b.add_argument("--workers", type=int, default=None)
    b.add_argument("--out", dest="output_path", default=None, help="results CSV path")

    a = sub.add_parser("analyze", help="correlate two columns of a results CSV")
    a.add_argument("--in", dest="input", required=True)
    a.add_argument("--x", default="mean_path_length")
    a.add_argument("--y", default="convergence_steps")
    a.add_argument("--scatter", help="write the (x, y) pairs used to this CSV")
    return parser


def _config_from(args: argparse.Namespace, extra: Sequence[str] = (),
                 defaults: dict | None = None) -> ExperimentConfig:
    values: dict = dict(defaults or {})
    if args.config:
        values.update(read_config_file(args.config))
    for _, dest, _ in _SIM_FLAGS:
        if getattr(args, dest) is not None:
            values[dest] = getattr(args, dest)
    for dest in extra:
        if getattr(args, dest, None) is not None:
            values[dest] = getattr(args, dest)
    return make_config(values)


def cmd_generate(args: argparse.Namespace) -> int:
    g = generate(args.topology, args.n, np.random.default_rng(args.seed),
                 ws_k=args.ws_k, ws_beta=args.ws_beta, ba_m=args.ba_m)
    write_edge_list(g, args.out)
    connected = is_connected(g)
    mpl = mean_path_length(g) if connected and g.node_count >= 2 else math.nan
    print(f"nodes={g.node_count} edges={g.edge_count} connected={str(connected).lower()} "
          f"mean_path_length={mpl!r}")
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    config = _config_from(args)
    run_seed = derive_run_seed(config.sim.master_seed, args.run_id)
    _, _, res, _, _, _ = simulate(run_seed, config, record_trajectory=True)
    write_trajectory(res.trajectory, args.out)
    print(f"converged={str(res.converged).lower()} steps={res.steps} "
          f"final={res.final_collective_thought!r}")
    return 0


def cmd_batch(args: argparse.Namespace) -> int:
    config = _config_from(args, ("runs", "connect_retry_limit", "record_trajectories",
                                 "workers", "output_path"),
                          defaults={"workers": default_workers()})
    result = run_batch(config)
    sim = config.sim
    print(f"topology={sim.topology} runs={len(result.records)} failed={result.n_failed} "
          f"unconverged={result.n_unconverged} "
          f"mean_steps={_mean_steps(result.records)!r}")
    if result.n_unconverged:
        print(f"excluded {result.n_unconverged} non-converged runs from correlations")
    for rep in result.reports:
        print(rep.line())
    for msg in result.report_errors:
        print(f"correlation unavailable: {msg}")
    return 0


def _mean_steps(records) -> float:
    steps = [r.convergence_steps for r in records if r.converged]
    return float(np.mean(steps)) if steps else math.nan


def cmd_analyze(args: argparse.Namespace) -> int:
    rows = read_rows(args.input)
    if not rows:
        raise DisinfoError("results file has no rows")
    for col in (args.x, args.y):
        if col not in rows[0]:
            raise UsageError(f"column {col!r} not in {args.input}")
    kept = [r for r in rows if r.get("converged", "true") == "true"]
    xs = [float(r[args.x]) for r in kept]
    ys = [float(r[args.y]) for r in kept]
    rep = correlation_report(xs, ys, args.x, args.y, len(rows) - len(kept))
    if args.scatter:
        with open(args.scatter, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow([args.x, args.y])
            w.writerows((r[args.x], r[args.y]) for r in kept)
    print(rep.line())
    if rep.n_excluded:
        print(f"excluded {rep.n_excluded} non-converged runs")
    return 0


_COMMANDS = {"generate": cmd_generate, "run": cmd_run, "batch": cmd_batch, "analyze": cmd_analyze}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DisinfoError as exc:
        print(f"error: {exc.category}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: parameter: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

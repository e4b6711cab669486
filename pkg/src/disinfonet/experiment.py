"""Seeded Monte-Carlo batches: build network, measure covariates, simulate, record."""

from __future__ import annotations

import configparser
import csv
import dataclasses
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .dynamics import ConvergenceResult, SimConfig, collective_thought, init_sim, run_to_convergence
from .errors import DisinfoError, DomainError, ParameterError
from .graph import Network, generate, is_connected
from .metrics import conspirator_centrality_sum, eigenvector_centrality, mean_path_length
from .stats import CorrelationReport, correlate

log = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
# Golden-ratio increment of splitmix64; odd, so run_id * GOLDEN is a bijection mod 2**64.
GOLDEN = 0x9E3779B97F4A7C15
_NET_SALT = 0xD1B54A32D192ED03
_SIM_SALT = 0x8CB92BA72F3D8DD7

RESULTS_HEADER = (
    "run_id", "run_seed", "topology", "n", "n_conspirators", "p_interaction", "epsilon",
    "mean_path_length", "conspirator_centrality_sum", "initial_collective_thought",
    "convergence_steps", "converged",
)


def mix64(z: int) -> int:
    """splitmix64 output finaliser (Stafford variant 13)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_run_seed(master_seed: int, run_id: int) -> int:
    return mix64(master_seed ^ ((run_id * GOLDEN) & MASK64))


def network_seed(run_seed: int, attempt: int) -> int:
    return mix64(run_seed ^ (((attempt + 1) * _NET_SALT) & MASK64))


def dynamics_seed(run_seed: int) -> int:
    return mix64(run_seed ^ _SIM_SALT)


class ConnectivityError(DisinfoError):
    category = "connectivity"


@dataclass(frozen=True)
class ExperimentConfig:
    sim: SimConfig = field(default_factory=SimConfig)
    runs: int = 1000
    connect_retry_limit: int = 100
    output_path: str | None = None
    record_trajectories: bool = False
    workers: int = 1

    def __post_init__(self) -> None:
        if self.runs < 1:
            raise ParameterError(f"runs must be >= 1, got {self.runs}")
        if self.connect_retry_limit < 1:
            raise ParameterError(f"connect_retry_limit must be >= 1, got {self.connect_retry_limit}")
        if self.workers < 1:
            raise ParameterError(f"workers must be >= 1, got {self.workers}")


@dataclass
class RunRecord:
    run_id: int
    run_seed: int
    topology: str
    n: int
    n_conspirators: int
    p_interaction: float
    epsilon: float
    mean_path_length: float
    conspirator_centrality_sum: float
    initial_collective_thought: float
    convergence_steps: int
    converged: bool
    trajectory: list[float] | None = field(default=None, compare=False, repr=False)
    error: str | None = field(default=None, compare=False)


def build_network(run_seed: int, config: ExperimentConfig) -> Network:
    """Generate the run's network, regenerating from fresh sub-seeds until connected."""
    sim = config.sim
    for attempt in range(config.connect_retry_limit):
        rng = np.random.default_rng(network_seed(run_seed, attempt))
        g = generate(sim.topology, sim.n, rng, ws_k=sim.ws_k, ws_beta=sim.ws_beta, ba_m=sim.ba_m)
        if is_connected(g):
            return g
    raise ConnectivityError(
        f"no connected {sim.topology} graph after {config.connect_retry_limit} attempts")


def simulate(run_seed: int, config: ExperimentConfig,
             record_trajectory: bool = False) -> tuple[Network, Any, ConvergenceResult, float, float, float]:
    g = build_network(run_seed, config)
    rng = np.random.default_rng(dynamics_seed(run_seed))
    state = init_sim(g, config.sim, rng)
    mpl = mean_path_length(g)
    csum = conspirator_centrality_sum(eigenvector_centrality(g), state.conspirators)
    ct0 = collective_thought(state)
    result = run_to_convergence(state, config.sim, rng, record_trajectory)
    return g, state, result, mpl, csum, ct0


def run_one(run_id: int, config: ExperimentConfig) -> RunRecord:
    sim = config.sim
    run_seed = derive_run_seed(sim.master_seed, run_id)
    _, _, res, mpl, csum, ct0 = simulate(run_seed, config, config.record_trajectories)
    return RunRecord(run_id, run_seed, sim.topology, sim.n, sim.n_conspirators,
                     sim.p_interaction, sim.epsilon, mpl, csum, ct0, res.steps,
                     res.converged, res.trajectory)


def _run_one_safe(args: tuple[int, ExperimentConfig]) -> RunRecord:
    run_id, config = args
    try:
        return run_one(run_id, config)
    except ConnectivityError as exc:
        sim = config.sim
        nan = math.nan
        return RunRecord(run_id, derive_run_seed(sim.master_seed, run_id), sim.topology, sim.n,
                         sim.n_conspirators, sim.p_interaction, sim.epsilon, nan, nan, nan,
                         0, False, error=str(exc))


@dataclass
class BatchResult:
    records: list[RunRecord]
    reports: list[CorrelationReport]
    report_errors: list[str]

    @property
    def n_failed(self) -> int:
        return sum(r.error is not None for r in self.records)

    @property
    def n_unconverged(self) -> int:
        return sum(not r.converged for r in self.records)


def run_records(config: ExperimentConfig) -> list[RunRecord]:
    """Execute runs ``0..runs-1``; ordering of the result is by run_id regardless of workers."""
    jobs = [(i, config) for i in range(config.runs)]
    if config.workers <= 1 or config.runs == 1:
        return [_run_one_safe(j) for j in jobs]
    chunk = max(1, config.runs // (4 * config.workers))
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(_run_one_safe, jobs, chunksize=chunk))


def batch_reports(records: Sequence[RunRecord]) -> tuple[list[CorrelationReport], list[str]]:
    reports, errors = [], []
    for x in ("mean_path_length", "conspirator_centrality_sum"):
        try:
            reports.append(correlate(records, x, "convergence_steps"))
        except DisinfoError as exc:
            errors.append(f"{x} vs convergence_steps: {exc}")
    return reports, errors


def run_batch(config: ExperimentConfig) -> BatchResult:
    if config.output_path is not None:
        # Fail on an unwritable destination before spending time on runs.
        with open(config.output_path, "w"):
            pass
    records = run_records(config)
    for rec in records:
        if rec.error:
            log.warning("run %d failed: %s", rec.run_id, rec.error)
    if config.output_path is not None:
        write_results(records, config.output_path)
        if config.record_trajectories:
            write_trajectories(records, trajectory_dir(config.output_path))
    reports, errors = batch_reports(records)
    return BatchResult(records, reports, errors)


def topology_ordering(ws_records: Sequence[RunRecord], ba_records: Sequence[RunRecord]) -> dict:
    """Mean convergence steps per topology and whether WS converges faster, as expected."""
    ws = [r.convergence_steps for r in ws_records if r.converged]
    ba = [r.convergence_steps for r in ba_records if r.converged]
    if not ws or not ba:
        raise DomainError("both batches need converged runs")
    ws_mean, ba_mean = float(np.mean(ws)), float(np.mean(ba))
    return {"ws_mean_steps": ws_mean, "ba_mean_steps": ba_mean,
            "ws_more_vulnerable": ws_mean < ba_mean}


# ---- results file -------------------------------------------------------

def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_results(records: Iterable[RunRecord], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RESULTS_HEADER)
        for rec in records:
            w.writerow([_fmt(getattr(rec, k)) for k in RESULTS_HEADER])


_PARSERS = {
    "run_id": int, "run_seed": int, "topology": str, "n": int, "n_conspirators": int,
    "p_interaction": float, "epsilon": float, "mean_path_length": float,
    "conspirator_centrality_sum": float, "initial_collective_thought": float,
    "convergence_steps": int,
}


def _parse_bool(text: str) -> bool:
    if text == "true":
        return True
    if text == "false":
        return False
    raise ParameterError(f"expected true/false, got {text!r}")


def read_rows(path: str | Path) -> list[dict[str, str]]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def read_results(path: str | Path) -> list[RunRecord]:
    rows = read_rows(path)
    missing = set(RESULTS_HEADER) - set(rows[0] if rows else RESULTS_HEADER)
    if missing:
        raise ParameterError(f"results file lacks columns: {sorted(missing)}")
    out = []
    for row in rows:
        kw = {k: parse(row[k]) for k, parse in _PARSERS.items()}
        out.append(RunRecord(**kw, converged=_parse_bool(row["converged"])))
    return out


def trajectory_dir(results_path: str | Path) -> Path:
    p = Path(results_path)
    return p.with_name(p.stem + "_trajectories")


def write_trajectory(traj: Sequence[float], path: str | Path, start: int = 0) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["step", "collective_thought"])
        for k, v in enumerate(traj, start):
            w.writerow([k, repr(float(v))])


def write_trajectories(records: Iterable[RunRecord], directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for rec in records:
        if rec.trajectory is not None:
            write_trajectory(rec.trajectory, directory / f"run_{rec.run_id:05d}.csv")


# ---- configuration ------------------------------------------------------

_SIM_FIELDS = {f.name: f for f in dataclasses.fields(SimConfig)}
_EXP_FIELDS = {f.name: f for f in dataclasses.fields(ExperimentConfig) if f.name != "sim"}
_ALIASES = {"seed": "master_seed", "out": "output_path"}


def _coerce(name: str, raw: Any) -> Any:
    if not isinstance(raw, str):
        return raw
    kind = {**_SIM_FIELDS, **_EXP_FIELDS}[name].type
    if "bool" in str(kind):
        low = raw.strip().lower()
        if low in ("true", "1", "yes"):
            return True
        if low in ("false", "0", "no"):
            return False
        raise ParameterError(f"{name}: expected a boolean, got {raw!r}")
    if "int" in str(kind):
        return int(raw, 0)
    if "float" in str(kind):
        return float(raw)
    return raw.strip()


def read_config_file(path: str | Path) -> dict[str, str]:
    """Parse a flat ``key = value`` file (``#`` comments) into a raw dict."""
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    with open(path) as fh:
        parser.read_string("[config]\n" + fh.read())
    return dict(parser["config"])


def make_config(values: Mapping[str, Any]) -> ExperimentConfig:
    """Build an ``ExperimentConfig`` from flat key/value pairs (field names or aliases)."""
    sim_kw, exp_kw = {}, {}
    for key, raw in values.items():
        name = _ALIASES.get(key, key)
        if name in _SIM_FIELDS:
            sim_kw[name] = _coerce(name, raw)
        elif name in _EXP_FIELDS:
            exp_kw[name] = _coerce(name, raw)
        else:
            raise ParameterError(f"unknown configuration key {key!r}")
    try:
        return ExperimentConfig(sim=SimConfig(**sim_kw), **exp_kw)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DisinfoError):
            raise
        raise ParameterError(str(exc)) from exc


def default_workers() -> int:
    return os.cpu_count() or 1

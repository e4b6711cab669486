import math

import pytest

from disinfonet import experiment
from disinfonet.dynamics import SimConfig
from disinfonet.errors import ParameterError
from disinfonet.experiment import (
    GOLDEN, RESULTS_HEADER, ExperimentConfig, build_network, ConnectivityError, derive_run_seed,
    make_config, mix64, read_config_file, read_results, run_batch, run_one, trajectory_dir,
    write_results,
)


def small(topology="ba", **kw):
    sim = SimConfig(n=40, n_conspirators=2, topology=topology, master_seed=7)
    return ExperimentConfig(sim=sim, **kw)


def test_mix64_matches_splitmix64_reference():
    # first output of splitmix64 seeded with 0
    assert mix64(GOLDEN) == 0xE220A8397B1DCDAF
    assert derive_run_seed(0, 1) == 0xE220A8397B1DCDAF


def test_seed_derivation_golden():
    assert [derive_run_seed(42, i) for i in range(3)] == [
        mix64(42), mix64(42 ^ GOLDEN), mix64(42 ^ ((2 * GOLDEN) % 2**64))]
    assert len({derive_run_seed(42, i) for i in range(1000)}) == 1000


def test_run_one_deterministic():
    cfg = small()
    assert run_one(3, cfg) == run_one(3, cfg)
    assert run_one(0, cfg).run_seed != run_one(1, cfg).run_seed


def test_run_one_defaults_ba():
    rec = run_one(0, ExperimentConfig(sim=SimConfig(topology="ba", master_seed=1)))
    assert rec.converged and rec.mean_path_length >= 1.0
    assert rec.n == 100 and rec.n_conspirators == 4 and rec.topology == "ba"
    assert 0.0 < rec.conspirator_centrality_sum < 2.0
    assert 0.8 < rec.initial_collective_thought < 1.2


def test_results_round_trip(tmp_path):
    recs = run_batch(small(runs=6, output_path=str(tmp_path / "r.csv"))).records
    back = read_results(tmp_path / "r.csv")
    assert back == recs
    assert (tmp_path / "r.csv").read_text().splitlines()[0] == ",".join(RESULTS_HEADER)
    write_results(back, tmp_path / "again.csv")
    assert (tmp_path / "again.csv").read_bytes() == (tmp_path / "r.csv").read_bytes()


def test_batch_single_run_has_no_correlation():
    res = run_batch(small(runs=1))
    assert len(res.records) == 1 and res.reports == []
    assert len(res.report_errors) == 2


def test_batch_reports_pairings():
    res = run_batch(small(runs=20))
    assert [r.x_label for r in res.reports] == ["mean_path_length", "conspirator_centrality_sum"]
    assert all(r.y_label == "convergence_steps" and r.n == 20 for r in res.reports)


def test_batch_independent_of_workers(tmp_path):
    a = run_batch(small("ws", runs=12, workers=1, output_path=str(tmp_path / "a.csv")))
    b = run_batch(small("ws", runs=12, workers=3, output_path=str(tmp_path / "b.csv")))
    assert a.records == b.records
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_batch_unwritable_output_fails_first(tmp_path):
    with pytest.raises(OSError):
        run_batch(small(runs=1000, output_path=str(tmp_path / "missing" / "r.csv")))


def test_connectivity_retry_exhaustion(tmp_path, monkeypatch):
    monkeypatch.setattr(experiment, "is_connected", lambda g: False)
    cfg = small("ws", runs=3, connect_retry_limit=2, output_path=str(tmp_path / "r.csv"))
    with pytest.raises(ConnectivityError, match="after 2 attempts"):
        build_network(derive_run_seed(0, 0), cfg)
    res = run_batch(cfg)
    assert res.n_failed == 3 and not any(r.converged for r in res.records)
    assert all(math.isnan(r.mean_path_length) for r in res.records)
    assert read_results(tmp_path / "r.csv")[0].converged is False
    assert res.reports == []


def test_ws_regenerates_until_connected():
    # sparse, fully rewired WS is often disconnected; the retry loop must still return a connected graph
    sim = SimConfig(n=300, topology="ws", ws_k=2, ws_beta=1.0)
    g = build_network(derive_run_seed(0, 0), ExperimentConfig(sim=sim, connect_retry_limit=100))
    assert experiment.is_connected(g) and g.edge_count == 300


def test_trajectories_written(tmp_path):
    out = tmp_path / "r.csv"
    res = run_batch(small(runs=2, record_trajectories=True, output_path=str(out)))
    files = sorted(trajectory_dir(out).iterdir())
    assert [f.name for f in files] == ["run_00000.csv", "run_00001.csv"]
    rows = files[0].read_text().splitlines()
    assert rows[0] == "step,collective_thought"
    assert len(rows) - 1 == res.records[0].convergence_steps + 1


def test_config_file_and_overrides(tmp_path):
    path = tmp_path / "exp.cfg"
    path.write_text("# batch setup\ntopology = ws\nn = 50\nws_beta = 0.2  # more rewiring\n"
                    "runs = 10\nmaster_seed = 0x10\nrecord_trajectories = false\n")
    raw = read_config_file(path)
    cfg = make_config({**raw, "n": 60})
    assert cfg.sim.topology == "ws" and cfg.sim.n == 60 and cfg.sim.ws_beta == 0.2
    assert cfg.runs == 10 and cfg.sim.master_seed == 16 and cfg.record_trajectories is False
    with pytest.raises(ParameterError):
        make_config({"bogus": 1})
    with pytest.raises(ParameterError):
        make_config({"runs": 0})

# %% [markdown]
# # One run: collective thought drifting to zero
#
# Four conspirators among 100 agents pull the mean susceptible belief from
# about 1 down below the 0.01 threshold. The trajectory is written as CSV
# for any plotting tool.

# %%
import numpy as np

from disinfonet import SimConfig, init_sim, run_to_convergence
from disinfonet.experiment import ExperimentConfig, build_network, derive_run_seed, dynamics_seed, write_trajectory

for topology in ("ws", "ba"):
    config = ExperimentConfig(sim=SimConfig(topology=topology, master_seed=7))
    run_seed = derive_run_seed(config.sim.master_seed, 0)
    g = build_network(run_seed, config)
    rng = np.random.default_rng(dynamics_seed(run_seed))
    state = init_sim(g, config.sim, rng)
    res = run_to_convergence(state, config.sim, rng, record_trajectory=True)
    traj = res.trajectory
    checkpoints = [0, 10, 50, 100, res.steps]
    print(topology, "converged" if res.converged else "did not converge", "after", res.steps, "steps")
    print("   ", ", ".join(f"k={k}: {traj[k]:.4f}" for k in checkpoints if k <= res.steps))
    write_trajectory(traj, f"trajectory_{topology}.csv")

# %% [markdown]
# The smallest possible population: one susceptible at belief 1 linked to a
# conspirator. With certain interaction the belief halves every step, so it
# crosses 0.01 at step 7.

# %%
from disinfonet import AgentRole, Network, SimState

pair = SimState(Network.from_edges(2, [(0, 1)]), (AgentRole.SUSCEPTIBLE, AgentRole.CONSPIRATOR), [1.0, 0.0])
cfg = SimConfig(n=2, n_conspirators=1, p_interaction=1.0)
res = run_to_convergence(pair, cfg, np.random.default_rng(0), record_trajectory=True)
print(res.steps, res.trajectory)

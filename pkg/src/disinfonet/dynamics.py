"""Belief dynamics with susceptible and conspirator agents on a fixed network.

Conspirators hold belief 0 forever. Each timestep activates every edge
once in a fresh random order; with probability ``p_interaction`` the two
endpoints exchange beliefs, sequentially and in place.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError, ParameterError
from .graph import Network

# Ground-truth value of the underlying state. Reporting only; nothing reads it.
THETA_TRUE = 1.0


class AgentRole(enum.Enum):
    SUSCEPTIBLE = "S"
    CONSPIRATOR = "C"


@dataclass(frozen=True)
class SimConfig:
    n: int = 100
    n_conspirators: int = 4
    p_interaction: float = 0.5
    epsilon: float = 0.01
    max_steps: int = 100_000
    topology: str = "ba"
    ws_k: int = 4
    ws_beta: float = 0.1
    ba_m: int = 2
    master_seed: int = 0
    theta_true: float = THETA_TRUE

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError(f"n must be positive, got {self.n}")
        if not 0 <= self.n_conspirators < self.n:
            raise ParameterError(
                f"n_conspirators must satisfy 0 <= n_conspirators < n, got {self.n_conspirators}")
        if not 0.0 <= self.p_interaction <= 1.0:
            raise ParameterError(f"p_interaction must lie in [0, 1], got {self.p_interaction}")
        if not self.epsilon > 0.0:
            raise ParameterError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_steps < 0:
            raise ParameterError(f"max_steps must be non-negative, got {self.max_steps}")
        if self.topology not in ("ws", "ba"):
            raise ParameterError(f"topology must be 'ws' or 'ba', got {self.topology!r}")
        if not 0 <= self.master_seed < 2**64:
            raise ParameterError("master_seed must be an unsigned 64-bit integer")


@dataclass
class SimState:
    """Mutable state of one run. ``beliefs`` is a plain list for fast scalar access."""

    network: Network
    roles: tuple[AgentRole, ...]
    beliefs: list[float]
    step: int = 0
    _susceptibles: tuple[int, ...] = field(init=False, repr=False)
    _is_conspirator: list[bool] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.roles) != self.network.node_count or len(self.beliefs) != self.network.node_count:
            raise ParameterError("roles and beliefs must have one entry per node")
        self._susceptibles = tuple(
            i for i, r in enumerate(self.roles) if r is AgentRole.SUSCEPTIBLE)
        self._is_conspirator = [r is AgentRole.CONSPIRATOR for r in self.roles]

    @property
    def conspirators(self) -> tuple[int, ...]:
        return tuple(i for i, r in enumerate(self.roles) if r is AgentRole.CONSPIRATOR)

    @property
    def susceptibles(self) -> tuple[int, ...]:
        return self._susceptibles


@dataclass
class ConvergenceResult:
    converged: bool
    steps: int
    final_collective_thought: float
    trajectory: list[float] | None = None


def init_sim(network: Network, config: SimConfig, rng: np.random.Generator,
             conspirators: Sequence[int] | None = None) -> SimState:
    """Place conspirators (uniformly, unless given) and draw susceptible beliefs from U[0, 2)."""
    n = network.node_count
    if n != config.n:
        raise ParameterError(f"network has {n} nodes but config.n = {config.n}")
    if conspirators is None:
        chosen = {int(i) for i in rng.choice(n, size=config.n_conspirators, replace=False)}
    else:
        chosen = {int(i) for i in conspirators}
        if len(chosen) != len(conspirators) or any(not 0 <= i < n for i in chosen):
            raise ParameterError("conspirator ids must be distinct valid node indices")
        if len(chosen) >= n:
            raise ParameterError("at least one susceptible agent is required")
    draws = rng.uniform(0.0, 2.0, size=n)
    roles = tuple(AgentRole.CONSPIRATOR if i in chosen else AgentRole.SUSCEPTIBLE
                  for i in range(n))
    beliefs = [0.0 if i in chosen else float(draws[i]) for i in range(n)]
    return SimState(network, roles, beliefs)


def midpoint(a: float, b: float) -> float:
    """``(a + b) / 2`` rounded so that twice the result never exceeds ``a + b``.

    Round-to-nearest can land one ulp above the exact sum, which would let
    a pure averaging exchange raise the population total. The exact rounding
    error of ``a + b`` (TwoSum) tells us when to step down.
    """
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    m = s * 0.5
    while (m + m) - s > err:
        m = math.nextafter(m, 0.0)
    return m


def pairwise_update(belief_i: float, role_i: AgentRole, belief_j: float,
                    role_j: AgentRole) -> tuple[float, float]:
    s_i = role_i is AgentRole.SUSCEPTIBLE
    s_j = role_j is AgentRole.SUSCEPTIBLE
    if s_i and s_j:
        m = midpoint(belief_i, belief_j)
        return m, m
    if s_i:
        return belief_i * 0.5, belief_j
    if s_j:
        return belief_i, belief_j * 0.5
    return belief_i, belief_j


def step(state: SimState, config: SimConfig, rng: np.random.Generator) -> SimState:
    """Advance ``state`` by one timestep in place and return it."""
    edges = state.network.edges
    m = len(edges)
    if m:
        order = rng.permutation(m)
        active = rng.random(m) < config.p_interaction
        x = state.beliefs
        cons = state._is_conspirator
        nextafter = math.nextafter
        for e in order[active[order]].tolist():
            u, v = edges[e]
            cu, cv = cons[u], cons[v]
            if cu:
                if not cv:
                    x[v] *= 0.5
            elif cv:
                x[u] *= 0.5
            else:
                # inlined midpoint(); this loop dominates runtime
                a, b = x[u], x[v]
                s = a + b
                bb = s - a
                err = (a - (s - bb)) + (b - bb)
                h = s * 0.5
                while (h + h) - s > err:
                    h = nextafter(h, 0.0)
                x[u] = x[v] = h
    state.step += 1
    return state


def collective_thought(state: SimState) -> float:
    """Mean susceptible belief, summed exactly (``math.fsum``)."""
    idx = state.susceptibles
    if not idx:
        raise DomainError("no susceptible agents")
    x = state.beliefs
    return math.fsum([x[i] for i in idx]) / len(idx)


def run_to_convergence(state: SimState, config: SimConfig, rng: np.random.Generator,
                       record_trajectory: bool = False) -> ConvergenceResult:
    """Step until collective thought drops below ``epsilon`` or ``max_steps`` is reached.

    The trajectory, when recorded, starts with the value at the current step.
    """
    ct = collective_thought(state)
    traj = [ct] if record_trajectory else None
    while ct >= config.epsilon and state.step < config.max_steps:
        step(state, config, rng)
        ct = collective_thought(state)
        if traj is not None:
            traj.append(ct)
    return ConvergenceResult(ct < config.epsilon, state.step, ct, traj)

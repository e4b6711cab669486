"""Agent-based model of disinformation spread on small-world and scale-free networks."""

__version__ = "0.1.0"

from .dynamics import (
    AgentRole, ConvergenceResult, SimConfig, SimState, collective_thought, init_sim,
    pairwise_update, run_to_convergence, step,
)
from .errors import DisinfoError, DomainError, NumericError, ParameterError
from .experiment import ExperimentConfig, RunRecord, run_batch, run_one
from .graph import BaParams, Network, WsParams, generate, generate_ba, generate_ws, is_connected
from .metrics import conspirator_centrality_sum, eigenvector_centrality, mean_path_length
from .stats import CorrelationReport, correlate, p_value_two_tailed, pearson_r

__all__ = [
    "AgentRole", "BaParams", "ConvergenceResult", "CorrelationReport", "DisinfoError",
    "DomainError", "ExperimentConfig", "Network", "NumericError", "ParameterError",
    "RunRecord", "SimConfig", "SimState", "WsParams", "collective_thought",
    "conspirator_centrality_sum", "correlate", "eigenvector_centrality", "generate",
    "generate_ba", "generate_ws", "init_sim", "is_connected", "mean_path_length",
    "p_value_two_tailed", "pairwise_update", "pearson_r", "run_batch", "run_one",
    "run_to_convergence", "step",
]

"""Deterministic round-based simulator for LEACH and O-LEACH clustering."""

from .config import RunSpec, load_config, parse_config
from .leach import (ClusterAssignment, RoundReport, TdmaSchedule,
                    build_tdma_schedule, elect_cluster_heads, form_clusters,
                    run_steady_state_leach, threshold)
from .metrics import RoundMetrics, SimulationTrace, accumulate_trace, compute_round_metrics
from .model import (Network, NetworkConfig, Node, Protocol, Role, RoundLedger,
                    debit_energy, deploy_network, distance)
from .oleach import (OrphanReport, SubCluster, detect_orphans,
                     elect_sub_cluster_head, extend_tdma, gateway_handshake,
                     run_steady_state_oleach)
from .radio import RadioParams, aggregation_cost, crossover_distance, rx_cost, tx_cost
from .report import emit_csv, emit_summary, render_csv
from .simulate import (ProtocolRun, RoundResult, divergence_round, run_protocol,
                       run_round, run_simulation)

__version__ = "0.1.0"

__all__ = [
    "ClusterAssignment", "Network", "NetworkConfig", "Node", "OrphanReport",
    "Protocol", "ProtocolRun", "RadioParams", "Role", "RoundLedger",
    "RoundMetrics", "RoundReport", "RoundResult", "RunSpec", "SimulationTrace",
    "SubCluster", "TdmaSchedule", "accumulate_trace", "aggregation_cost",
    "build_tdma_schedule", "compute_round_metrics", "crossover_distance",
    "debit_energy", "deploy_network", "detect_orphans", "distance",
    "divergence_round", "elect_cluster_heads", "elect_sub_cluster_head",
    "emit_csv", "emit_summary", "extend_tdma", "form_clusters",
    "gateway_handshake", "load_config", "parse_config", "render_csv",
    "run_protocol", "run_round", "run_simulation", "run_steady_state_leach",
    "run_steady_state_oleach", "rx_cost", "threshold", "tx_cost",
]

"""Top-level round loop and comparison runs.

Each round runs head election, cluster formation and TDMA scheduling,
then (O-LEACH only) the orphan recovery choreography, then the steady
state, and finally records a metrics row.  In comparison mode both
protocols start from the same seed, so deployment and election draws are
identical until their death sequences diverge: the orphan phase itself
consumes no randomness.
"""

import dataclasses
from dataclasses import dataclass, field

from .leach import (ClusterAssignment, build_tdma_schedule, elect_cluster_heads,
                    form_clusters, run_steady_state_leach)
from .metrics import RoundMetrics, SimulationTrace, TraceBuilder, compute_round_metrics
from .model import Network, NetworkConfig, Protocol, RoundLedger, deploy_network
from .oleach import (OrphanReport, SubCluster, detect_orphans,
                     elect_sub_cluster_head, extend_tdma, gateway_handshake,
                     run_steady_state_oleach)
from .radio import RadioParams

TERMINATED_MAX_ROUNDS = "max_rounds"
TERMINATED_ALL_DEAD = "all_dead"


@dataclass
class ProtocolRun:
    """One finished simulation: its trace, the final network state, the
    chronological death log as (round, node id, phase) events, and the
    per-round elected head sets."""

    protocol: Protocol
    trace: SimulationTrace
    network: Network
    death_log: list[tuple[int, int, str]] = field(default_factory=list)
    head_log: list[list[int]] = field(default_factory=list)


@dataclass
class RoundResult:
    """Everything one round produced, for callers that inspect structure."""

    metrics: RoundMetrics
    ledger: RoundLedger
    assignment: ClusterAssignment
    orphans: list[int]
    subs: list[SubCluster]


def run_round(net: Network, round_index: int, radio: RadioParams) -> RoundResult:
    """Execute one full round: election, clustering, scheduling, the orphan
    phase when the protocol is O-LEACH, the steady state, and metrics."""
    ledger = RoundLedger()
    alive_start = net.alive_count()

    heads = elect_cluster_heads(net, round_index)
    assignment = form_clusters(net, heads, ledger, radio)
    schedule = build_tdma_schedule(assignment)

    if net.config.protocol is Protocol.OLEACH:
        orphans = detect_orphans(net, assignment)
        subs = gateway_handshake(net, assignment, orphans, ledger, radio)
        live_subs = []
        for sub in subs:
            if any(net.nodes[i].alive for i in sub.members):
                elect_sub_cluster_head(sub, net)
                live_subs.append(sub)
        schedule = extend_tdma(schedule, live_subs, net, ledger, radio)
        recovered = sum(1 + len(sub.members) for sub in live_subs)
        orphan_report = OrphanReport(
            total_orphans=len(orphans),
            recovered=recovered,
            unreachable=len(orphans) - recovered,
            gateways=len(live_subs),
        )
        ledger.phase = "steady"
        report = run_steady_state_oleach(net, assignment, schedule, live_subs,
                                         ledger, radio)
    else:
        orphans = list(assignment.unassigned)
        live_subs = []
        orphan_report = OrphanReport(len(orphans), 0, len(orphans), 0)
        ledger.phase = "steady"
        report = run_steady_state_leach(net, assignment, schedule, ledger, radio)

    metrics = compute_round_metrics(net, round_index, assignment, orphan_report,
                                    report, alive_start, ledger.total)
    return RoundResult(metrics, ledger, assignment, orphans, live_subs)


def run_protocol(config: NetworkConfig, radio: RadioParams) -> ProtocolRun:
    """Run one protocol from deployment to termination."""
    radio.validate()
    net = deploy_network(config)
    builder = TraceBuilder(config.n_nodes, config, radio)
    death_log: list[tuple[int, int, str]] = []
    head_log: list[list[int]] = []
    termination = TERMINATED_MAX_ROUNDS
    for round_index in range(config.max_rounds):
        if net.alive_count() == 0:
            termination = TERMINATED_ALL_DEAD
            break
        result = run_round(net, round_index, radio)
        builder.append(result.metrics)
        head_log.append(list(result.assignment.heads))
        death_log.extend((round_index, node, phase)
                         for node, phase in result.ledger.deaths)
    return ProtocolRun(config.protocol, builder.finish(termination), net,
                       death_log, head_log)


def run_simulation(config: NetworkConfig, radio: RadioParams | None = None,
                   compare: bool = False) -> list[ProtocolRun]:
    """Run the configured protocol, or both protocols on the same seed.

    In comparison mode each protocol gets its own deployment from the
    shared seed, so positions and election draws coincide round by round
    until the death sequences diverge.
    """
    radio = radio if radio is not None else RadioParams()
    if compare:
        protocols = [Protocol.LEACH, Protocol.OLEACH]
    else:
        protocols = [config.protocol]
    runs = []
    for protocol in protocols:
        cfg = dataclasses.replace(config, protocol=protocol)
        runs.append(run_protocol(cfg, radio))
    return runs


def divergence_round(a: ProtocolRun, b: ProtocolRun) -> int | None:
    """First round whose death events differ between two runs, or None.

    Death events compare as (node id, phase) sets per round; a difference
    in either the dying nodes or the phase they die in marks the round
    where the two runs stop being state-comparable.
    """
    per_round_a = _deaths_by_round(a)
    per_round_b = _deaths_by_round(b)
    last = max(len(a.trace.rounds), len(b.trace.rounds))
    for r in range(last):
        if per_round_a.get(r, set()) != per_round_b.get(r, set()):
            return r
    return None


def _deaths_by_round(run: ProtocolRun) -> dict[int, set[tuple[int, str]]]:
    out: dict[int, set[tuple[int, str]]] = {}
    for round_index, node, phase in run.death_log:
        out.setdefault(round_index, set()).add((node, phase))
    return out

"""Per-round metric records and whole-run trace accumulation.

Rates use the number of nodes alive at the start of the round as the
denominator (the round's participants), while the alive column records
the count at the end of the round so node deaths show up in the round
they happen.  With zero participants both rates are defined as 0.
"""

import dataclasses
from dataclasses import dataclass

from .errors import SimulationInvariantError
from .leach import ClusterAssignment, RoundReport
from .model import Network, NetworkConfig
from .oleach import OrphanReport
from .radio import RadioParams


@dataclass(frozen=True)
class RoundMetrics:
    round: int
    alive: int
    heads: int
    orphans_total: int
    orphans_recovered: int
    gateways: int
    connectivity_rate: float
    coverage_rate: float
    energy_dissipated: float
    energy_remaining: float
    packets_to_bs: int
    sources_delivered: int


CSV_FIELDS = tuple(f.name for f in dataclasses.fields(RoundMetrics))
FLOAT_FIELDS = frozenset(
    f.name for f in dataclasses.fields(RoundMetrics) if f.type in (float, "float")
)


def compute_round_metrics(net: Network, round_index: int,
                          assignment: ClusterAssignment,
                          orphan_report: OrphanReport,
                          report: RoundReport,
                          alive_start: int,
                          energy_dissipated: float) -> RoundMetrics:
    """Assemble one round's record from the round's structures.

    connectivity = (heads + members + recovered orphans) / participants;
    coverage = distinct sources delivered to the sink / participants.
    """
    connected = (len(assignment.heads) + len(assignment.membership)
                 + orphan_report.recovered)
    if alive_start > 0:
        connectivity = connected / alive_start
        coverage = report.sources_delivered / alive_start
    else:
        connectivity = 0.0
        coverage = 0.0
    return RoundMetrics(
        round=round_index,
        alive=net.alive_count(),
        heads=len(assignment.heads),
        orphans_total=orphan_report.total_orphans,
        orphans_recovered=orphan_report.recovered,
        gateways=orphan_report.gateways,
        connectivity_rate=connectivity,
        coverage_rate=coverage,
        energy_dissipated=energy_dissipated,
        energy_remaining=net.total_energy(),
        packets_to_bs=report.packets_to_bs,
        sources_delivered=report.sources_delivered,
    )


@dataclass
class SimulationTrace:
    """Ordered per-round records for one protocol run."""

    n_initial: int
    rounds: list[RoundMetrics]
    termination: str
    config: NetworkConfig | None = None
    radio: RadioParams | None = None

    def first_node_death(self) -> int | None:
        for m in self.rounds:
            if m.alive < self.n_initial:
                return m.round
        return None

    def half_alive_round(self) -> int | None:
        for m in self.rounds:
            if m.alive <= self.n_initial / 2:
                return m.round
        return None

    def last_node_death(self) -> int | None:
        for m in self.rounds:
            if m.alive == 0:
                return m.round
        return None


class TraceBuilder:
    """Accumulates round records in order, enforcing trace invariants:
    dense round indices from 0 and a non-increasing alive count."""

    def __init__(self, n_initial: int, config: NetworkConfig | None = None,
                 radio: RadioParams | None = None):
        self.n_initial = n_initial
        self.config = config
        self.radio = radio
        self.rounds: list[RoundMetrics] = []

    def append(self, metrics: RoundMetrics) -> None:
        expected = len(self.rounds)
        if metrics.round != expected:
            raise SimulationInvariantError(
                f"round {metrics.round} out of order, expected {expected}"
            )
        if self.rounds and metrics.alive > self.rounds[-1].alive:
            raise SimulationInvariantError(
                f"alive count increased from {self.rounds[-1].alive} "
                f"to {metrics.alive} at round {metrics.round}"
            )
        if metrics.alive > self.n_initial:
            raise SimulationInvariantError(
                f"alive count {metrics.alive} exceeds deployment {self.n_initial}"
            )
        self.rounds.append(metrics)

    def finish(self, termination: str) -> SimulationTrace:
        return SimulationTrace(self.n_initial, self.rounds, termination,
                               self.config, self.radio)


def accumulate_trace(metrics_stream, n_initial: int,
                     termination: str = "max_rounds",
                     config: NetworkConfig | None = None,
                     radio: RadioParams | None = None) -> SimulationTrace:
    """Build a trace from an in-order metrics stream (validating as it goes)."""
    builder = TraceBuilder(n_initial, config, radio)
    for metrics in metrics_stream:
        builder.append(metrics)
    return builder.finish(termination)

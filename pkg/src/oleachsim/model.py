"""Sensor field state: node identity, placement, energy bookkeeping.

A deployed Network owns a seeded generator whose stream is consumed in a
fixed, documented order: all x coordinates, then all y coordinates at
deployment, then one uniform draw per alive node (ascending id) in each
round's head election.  Every downstream quantity is therefore a pure
function of the configuration.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigError, SimulationInvariantError


class Protocol(str, Enum):
    LEACH = "leach"
    OLEACH = "oleach"


class Role(Enum):
    MEMBER = "member"
    CLUSTER_HEAD = "cluster_head"
    GATEWAY = "gateway"
    SUB_CLUSTER_HEAD = "sub_cluster_head"
    ORPHAN = "orphan"
    DEAD = "dead"


def distance(a: tuple[float, float], b: tuple[float, float]) -> float:
    """Euclidean distance in meters between two (x, y) positions."""
    return math.hypot(a[0] - b[0], a[1] - b[1])


@dataclass
class Node:
    """One sensor.

    rounds_since_ch is None until the node serves as cluster head and is
    reset to None whenever the election pool G is rebuilt; None means the
    node currently belongs to G.
    """

    id: int
    x: float
    y: float
    energy: float
    alive: bool = True
    rounds_since_ch: int | None = None
    role: Role = Role.MEMBER

    @property
    def pos(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class NetworkConfig:
    n_nodes: int = 500
    field_width: float = 300.0
    field_height: float = 300.0
    sink_pos: tuple[float, float] = (0.0, 0.0)
    initial_energy: float = 0.5
    ch_probability: float = 0.1
    clustering_rate_cap: float = 0.1
    tx_range: float = 70.0
    packet_bits: int = 2000
    control_bits: int = 200
    max_rounds: int = 2000
    seed: int = 1
    protocol: Protocol = Protocol.LEACH

    def validate(self) -> None:
        if self.n_nodes < 0:
            raise ConfigError(f"n_nodes must be >= 0, got {self.n_nodes}")
        if self.field_width < 0 or self.field_height < 0:
            raise ConfigError(
                f"field dimensions must be >= 0, got "
                f"{self.field_width} x {self.field_height}"
            )
        if not 0 < self.ch_probability < 1:
            raise ConfigError(
                f"ch_probability must lie in (0, 1), got {self.ch_probability}"
            )
        if not 0 < self.clustering_rate_cap <= 1:
            raise ConfigError(
                f"clustering_rate_cap must lie in (0, 1], got "
                f"{self.clustering_rate_cap}"
            )
        if not self.tx_range > 0:
            raise ConfigError(f"tx_range must be > 0, got {self.tx_range}")
        if not self.packet_bits > 0:
            raise ConfigError(f"packet_bits must be > 0, got {self.packet_bits}")
        if self.control_bits < 0:
            raise ConfigError(f"control_bits must be >= 0, got {self.control_bits}")
        if not self.initial_energy > 0:
            raise ConfigError(
                f"initial_energy must be > 0, got {self.initial_energy}"
            )
        if self.max_rounds < 0:
            raise ConfigError(f"max_rounds must be >= 0, got {self.max_rounds}")


class Network:
    """The deployed field.  Nodes are ordered by id; positions never move
    after deployment and are cached as arrays for vectorized distance math."""

    def __init__(self, config: NetworkConfig, nodes: list[Node],
                 rng: np.random.Generator | None = None):
        self.config = config
        self.nodes = nodes
        self.rng = rng if rng is not None else np.random.default_rng(config.seed)
        self.xs = np.array([n.x for n in nodes], dtype=float)
        self.ys = np.array([n.y for n in nodes], dtype=float)

    def alive_nodes(self) -> list[Node]:
        return [n for n in self.nodes if n.alive]

    def alive_count(self) -> int:
        return sum(1 for n in self.nodes if n.alive)

    def total_energy(self) -> float:
        return math.fsum(n.energy for n in self.nodes)

    def node_distance(self, a: int, b: int) -> float:
        return math.hypot(self.xs[a] - self.xs[b], self.ys[a] - self.ys[b])

    def distance_to_sink(self, node_id: int) -> float:
        sx, sy = self.config.sink_pos
        return math.hypot(self.xs[node_id] - sx, self.ys[node_id] - sy)


def deploy_network(config: NetworkConfig) -> Network:
    """Place n_nodes at independent uniform positions inside the field.

    Consumes the generator stream in a fixed order (all x, then all y) so
    two deployments from the same config are bit identical.
    """
    config.validate()
    rng = np.random.default_rng(config.seed)
    n = config.n_nodes
    xs = rng.uniform(0.0, config.field_width, n)
    ys = rng.uniform(0.0, config.field_height, n)
    nodes = [
        Node(i, float(xs[i]), float(ys[i]), config.initial_energy)
        for i in range(n)
    ]
    return Network(config, nodes, rng)


class RoundLedger:
    """Per-round record of every energy debit and death event.

    Debits hold the energy actually drained (a dying node drains only its
    residual), so summing them against residual energy is exact."""

    def __init__(self):
        self.debits: dict[int, float] = {}
        self.total = 0.0
        self.deaths: list[tuple[int, str]] = []
        self.phase = "setup"

    def record(self, node: Node, drained: float) -> None:
        self.total += drained
        self.debits[node.id] = self.debits.get(node.id, 0.0) + drained
        if not node.alive:
            self.deaths.append((node.id, self.phase))


def debit_energy(node: Node, cost: float, ledger: RoundLedger | None = None) -> float:
    """Drain `cost` joules from an alive node, clamping at zero.

    Marks the node dead (role included) when its energy reaches zero.
    Returns the energy actually drained, which is below `cost` when the
    node hits the floor.  Debiting a dead node is a simulator bug.
    """
    if not node.alive:
        raise SimulationInvariantError(f"energy debit on dead node {node.id}")
    if cost < 0:
        raise SimulationInvariantError(f"negative energy cost {cost!r}")
    before = node.energy
    after = before - cost
    if after <= 0.0:
        after = 0.0
        node.alive = False
        node.role = Role.DEAD
    node.energy = after
    drained = before - after
    if ledger is not None:
        ledger.record(node, drained)
    return drained

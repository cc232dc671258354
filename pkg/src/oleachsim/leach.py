"""Baseline LEACH round machinery.

One round has a set-up phase (probabilistic head election, nearest-head
clustering with control-message costs, TDMA frame construction) and a
steady-state phase (members transmit in their slots, heads receive,
aggregate, and forward one packet to the sink).

Election pool semantics: a node that serves as head leaves the pool G
for the remainder of the current epoch of round(1/P) rounds and rejoins
when the next epoch starts; if every alive node has already served
within the epoch the pool is rebuilt immediately.  With the cap disabled
each node therefore serves exactly once per epoch.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .model import Network, Node, Role, RoundLedger, debit_energy
from .radio import RadioParams, aggregation_cost, rx_cost, tx_cost


def epoch_length(p: float) -> int:
    """Election epoch in rounds: 1/p rounded to the nearest integer."""
    return max(1, int(round(1.0 / p)))


def threshold(p: float, round_index: int, in_g: bool) -> float:
    """Head-election threshold for the current round.

    Nodes outside the pool G get 0; pool members get p / (1 - p * (r mod
    epoch)), clamped into [0, 1].  The clamp matters at the final epoch
    slot where the exact value is 1.
    """
    if not in_g:
        return 0.0
    t = p / (1.0 - p * (round_index % epoch_length(p)))
    return min(max(t, 0.0), 1.0)


@dataclass
class ClusterAssignment:
    """Per-round partition of the alive nodes.

    heads, membership keys and unassigned are pairwise disjoint and
    together cover every node alive at the end of the set-up phase.
    """

    heads: list[int]
    membership: dict[int, int]
    unassigned: list[int]
    clusters: dict[int, list[int]] = field(default_factory=dict)

    def members_of(self, head: int) -> list[int]:
        return self.clusters.get(head, [])


@dataclass(frozen=True)
class Slot:
    node: int
    relay: bool = False


@dataclass
class TdmaSchedule:
    """Per-head frames plus (after orphan recovery) per-CH' sub-frames.

    A frame slot is either a member's base data slot or a gateway's extra
    relay slot carrying a sub-cluster aggregate.
    """

    frames: dict[int, list[Slot]]
    subframes: dict[int, list[int]] = field(default_factory=dict)

    def frame_length(self, head: int) -> int:
        return len(self.frames[head])


@dataclass(frozen=True)
class RoundReport:
    """Steady-state outcome: packets that reached the sink and how many
    distinct nodes' readings they carried."""

    packets_to_bs: int
    sources_delivered: int


def in_pool(node: Node, round_index: int, epoch: int) -> bool:
    """Membership in the election pool G for this round.

    A node is eligible when it has never served, or when its last service
    predates the current epoch (rounds_since_ch exceeds the rounds already
    spent in this epoch).
    """
    if node.rounds_since_ch is None:
        return True
    return node.rounds_since_ch > round_index % epoch


def elect_cluster_heads(net: Network, round_index: int) -> list[int]:
    """Run the per-round head election over alive nodes in ascending id.

    Resets every alive role to member first (roles are recomputed from
    scratch each round), ages the served counters, rebuilds G immediately
    when every alive node has served within the epoch, then draws one
    uniform number per alive node.  A node is elected while the running
    head count stays below ceil(cap * alive).  Zero heads is a legal
    outcome and is simply returned as such.
    """
    p = net.config.ch_probability
    cap_rate = net.config.clustering_rate_cap
    epoch = epoch_length(p)
    alive = net.alive_nodes()
    for node in alive:
        node.role = Role.MEMBER
        if node.rounds_since_ch is not None:
            node.rounds_since_ch += 1
    if alive and not any(in_pool(n, round_index, epoch) for n in alive):
        for node in alive:
            node.rounds_since_ch = None
    cap = math.ceil(cap_rate * len(alive))
    draws = net.rng.random(len(alive))
    heads: list[int] = []
    for i, node in enumerate(alive):
        if len(heads) >= cap:
            break
        if draws[i] < threshold(p, round_index, in_pool(node, round_index, epoch)):
            node.rounds_since_ch = 0
            node.role = Role.CLUSTER_HEAD
            heads.append(node.id)
    return heads


def form_clusters(net: Network, heads: list[int],
                  ledger: RoundLedger | None = None,
                  radio: RadioParams | None = None) -> ClusterAssignment:
    """Advertise heads and join each alive non-head to its nearest head.

    Joins require distance <= tx_range; ties go to the lower head id.
    Energy: each head pays one ADV broadcast at tx_range, each joining
    member pays a control transmit over its join distance, and the head
    pays a control receive per join heard.  Nodes with no reachable head
    are left unassigned (role orphan).  Heads that die during set-up are
    dropped and their members fall back to unassigned.
    """
    radio = radio if radio is not None else RadioParams()
    cfg = net.config
    ctrl = cfg.control_bits
    nodes = net.nodes

    live_heads: list[int] = []
    for head_id in heads:
        head = nodes[head_id]
        debit_energy(head, tx_cost(ctrl, cfg.tx_range, radio), ledger)
        if head.alive:
            live_heads.append(head_id)

    membership: dict[int, int] = {}
    unassigned: list[int] = []
    head_set = set(heads)
    member_ids = [n.id for n in nodes if n.alive and n.id not in head_set]

    if live_heads and member_ids:
        hx = net.xs[live_heads]
        hy = net.ys[live_heads]
        mx = net.xs[member_ids]
        my = net.ys[member_ids]
        dists = np.hypot(mx[:, None] - hx[None, :], my[:, None] - hy[None, :])
        in_range = dists <= cfg.tx_range
        for row, member_id in enumerate(member_ids):
            member = nodes[member_id]
            choice = _pick_head(net, live_heads, dists[row], in_range[row])
            if choice is None:
                unassigned.append(member_id)
                continue
            head_id, d = choice
            head = nodes[head_id]
            debit_energy(member, tx_cost(ctrl, d, radio), ledger)
            debit_energy(head, rx_cost(ctrl, radio), ledger)
            if member.alive:
                membership[member_id] = head_id
    else:
        unassigned.extend(member_ids)

    # Heads killed by join receives cannot run a cluster; their members
    # become recoverable orphans for this round.
    final_heads = [h for h in live_heads if nodes[h].alive]
    final_set = set(final_heads)
    surviving = {}
    for member_id, head_id in membership.items():
        if head_id in final_set:
            surviving[member_id] = head_id
        else:
            unassigned.append(member_id)
    unassigned.sort()
    for orphan_id in unassigned:
        nodes[orphan_id].role = Role.ORPHAN

    clusters: dict[int, list[int]] = {h: [] for h in final_heads}
    for member_id in sorted(surviving):
        clusters[surviving[member_id]].append(member_id)
    return ClusterAssignment(final_heads, surviving, unassigned, clusters)


def _pick_head(net: Network, live_heads: list[int],
               dist_row: np.ndarray, range_row: np.ndarray):
    """Nearest in-range head that is still alive, ties to the lower id."""
    if not range_row.any():
        return None
    idx = int(np.argmin(np.where(range_row, dist_row, np.inf)))
    if net.nodes[live_heads[idx]].alive:
        return live_heads[idx], float(dist_row[idx])
    # Rare path: the nearest head died from earlier join receives.
    order = np.argsort(dist_row, kind="stable")
    for idx in order:
        if range_row[idx] and net.nodes[live_heads[idx]].alive:
            return live_heads[int(idx)], float(dist_row[idx])
    return None


def build_tdma_schedule(assignment: ClusterAssignment) -> TdmaSchedule:
    """One base slot per member, ordered by ascending node id per head."""
    frames = {
        head: [Slot(m) for m in assignment.members_of(head)]
        for head in assignment.heads
    }
    return TdmaSchedule(frames)


def run_steady_state_leach(net: Network, assignment: ClusterAssignment,
                           schedule: TdmaSchedule,
                           ledger: RoundLedger | None = None,
                           radio: RadioParams | None = None) -> RoundReport:
    """Baseline data collection: slot transmissions, aggregation, sink send.

    Unassigned nodes transmit nothing; their readings are lost.
    """
    return run_head_frames(net, assignment, schedule, {}, ledger, radio)


def run_head_frames(net: Network, assignment: ClusterAssignment,
                    schedule: TdmaSchedule,
                    relay_payloads: dict[int, set[int]],
                    ledger: RoundLedger | None = None,
                    radio: RadioParams | None = None) -> RoundReport:
    """Execute every head's frame in slot order and forward to the sink.

    relay_payloads maps a gateway to the source-id set its relay slot
    carries (from the sub-cluster phase); a gateway with nothing to relay
    skips its relay slot.  A node that dies on its own transmit still gets
    that packet out; later actions do not happen.  Readings count as
    delivered only when the whole chain up to the sink transmit completes.
    """
    radio = radio if radio is not None else RadioParams()
    bits = net.config.packet_bits
    nodes = net.nodes
    packets = 0
    sources = 0
    for head_id in assignment.heads:
        head = nodes[head_id]
        received = 0
        delivered: set[int] = set()
        for slot in schedule.frames.get(head_id, ()):
            sender = nodes[slot.node]
            if not sender.alive:
                continue
            if slot.relay:
                payload = relay_payloads.get(slot.node)
                if payload is None:
                    continue
                debit_energy(sender, tx_cost(bits, net.node_distance(slot.node, head_id), radio), ledger)
                if head.alive:
                    debit_energy(head, rx_cost(bits, radio), ledger)
                    received += 1
                    delivered |= payload
            else:
                debit_energy(sender, tx_cost(bits, net.node_distance(slot.node, head_id), radio), ledger)
                if head.alive:
                    debit_energy(head, rx_cost(bits, radio), ledger)
                    received += 1
                    delivered.add(slot.node)
        if not head.alive:
            continue
        debit_energy(head, aggregation_cost(bits, received + 1, radio), ledger)
        if not head.alive:
            continue
        debit_energy(head, tx_cost(bits, net.distance_to_sink(head_id), radio), ledger)
        packets += 1
        sources += len(delivered) + 1
    return RoundReport(packets, sources)

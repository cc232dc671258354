"""O-LEACH orphan recovery.

After cluster formation, nodes left without a reachable head broadcast a
status message.  Cluster members that hear one become gateway candidates;
each orphan attaches to its nearest candidate, the candidate turns
gateway, and the orphan nearest the gateway is elected sub-cluster head
(CH').  Data then flows orphan -> CH' -> gateway -> CH -> sink, with the
gateway owning two slots in its head's frame: the relayed aggregate and
its own reading.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import SimulationInvariantError
from .leach import ClusterAssignment, RoundReport, Slot, TdmaSchedule, run_head_frames
from .model import Network, Role, RoundLedger, debit_energy
from .radio import RadioParams, aggregation_cost, rx_cost, tx_cost


@dataclass
class SubCluster:
    """An orphan group bridged to a cluster by one gateway member.

    members holds the orphan members excluding CH'; reserved_slots is the
    number of sub-frame slots the orphans occupy under CH'.
    """

    gateway: int
    parent_head: int
    head_prime: int | None = None
    members: list[int] = field(default_factory=list)
    reserved_slots: int = 0


@dataclass(frozen=True)
class OrphanReport:
    total_orphans: int
    recovered: int
    unreachable: int
    gateways: int


def detect_orphans(net: Network, assignment: ClusterAssignment) -> list[int]:
    """Alive nodes with no head within range this round, ascending id."""
    return sorted(i for i in assignment.unassigned if net.nodes[i].alive)


def gateway_handshake(net: Network, assignment: ClusterAssignment,
                      orphans: list[int],
                      ledger: RoundLedger | None = None,
                      radio: RadioParams | None = None) -> list[SubCluster]:
    """Attach orphans to gateways: status broadcast, candidacy, join.

    Every orphan broadcasts a status message at tx_range.  Each alive
    cluster member hearing at least one status pays a control receive per
    status heard and becomes a candidate.  Each orphan then joins its
    nearest alive candidate (ties to the lower id); candidates that were
    chosen turn gateway, pay one reply broadcast, and their orphans pay a
    control receive.  One sub-cluster is returned per gateway, ordered by
    gateway id; orphans that heard no candidate stay out of every
    sub-cluster and count as unreachable.
    """
    if not orphans:
        return []
    radio = radio if radio is not None else RadioParams()
    cfg = net.config
    ctrl = cfg.control_bits
    nodes = net.nodes

    broadcast_ids = []
    for orphan_id in orphans:
        debit_energy(nodes[orphan_id], tx_cost(ctrl, cfg.tx_range, radio), ledger)
        broadcast_ids.append(orphan_id)

    member_ids = sorted(assignment.membership)
    candidates: list[int] = []
    if member_ids and broadcast_ids:
        ox = net.xs[broadcast_ids]
        oy = net.ys[broadcast_ids]
        mx = net.xs[member_ids]
        my = net.ys[member_ids]
        dists = np.hypot(mx[:, None] - ox[None, :], my[:, None] - oy[None, :])
        heard = (dists <= cfg.tx_range).sum(axis=1)
        for row, member_id in enumerate(member_ids):
            member = nodes[member_id]
            if heard[row] == 0 or not member.alive:
                continue
            debit_energy(member, int(heard[row]) * rx_cost(ctrl, radio), ledger)
            if member.alive:
                candidates.append(member_id)

    attachments: dict[int, list[int]] = {}
    if candidates:
        cx = net.xs[candidates]
        cy = net.ys[candidates]
        for orphan_id in orphans:
            orphan = nodes[orphan_id]
            if not orphan.alive:
                continue
            d = np.hypot(cx - net.xs[orphan_id], cy - net.ys[orphan_id])
            reachable = np.array(
                [dd <= cfg.tx_range and nodes[candidates[i]].alive
                 for i, dd in enumerate(d)]
            )
            if not reachable.any():
                continue
            idx = int(np.argmin(np.where(reachable, d, np.inf)))
            attachments.setdefault(candidates[idx], []).append(orphan_id)

    subs: list[SubCluster] = []
    for gateway_id in sorted(attachments):
        gateway = nodes[gateway_id]
        debit_energy(gateway, tx_cost(ctrl, cfg.tx_range, radio), ledger)
        if not gateway.alive:
            continue
        joined = []
        for orphan_id in attachments[gateway_id]:
            orphan = nodes[orphan_id]
            if not orphan.alive:
                continue
            debit_energy(orphan, rx_cost(ctrl, radio), ledger)
            if orphan.alive:
                joined.append(orphan_id)
        if joined:
            gateway.role = Role.GATEWAY
            subs.append(SubCluster(gateway_id, assignment.membership[gateway_id],
                                   members=joined))
    return subs


def elect_sub_cluster_head(sub: SubCluster, net: Network) -> int:
    """Pick CH' as the orphan nearest the gateway (ties to the lower id).

    The remaining orphans within range of CH' stay members of the
    sub-cluster; the rest are dropped back out and stay unrecovered for
    this round.  Mutates the sub-cluster in place and returns CH'.
    """
    pool = [i for i in sub.members if net.nodes[i].alive]
    if not pool:
        raise SimulationInvariantError(
            f"sub-cluster of gateway {sub.gateway} has no alive orphans"
        )
    head_prime = min(pool, key=lambda i: (net.node_distance(i, sub.gateway), i))
    sub.head_prime = head_prime
    net.nodes[head_prime].role = Role.SUB_CLUSTER_HEAD
    sub.members = [
        i for i in pool
        if i != head_prime and net.node_distance(i, head_prime) <= net.config.tx_range
    ]
    return head_prime


def extend_tdma(schedule: TdmaSchedule, subs: list[SubCluster],
                net: Network | None = None,
                ledger: RoundLedger | None = None,
                radio: RadioParams | None = None) -> TdmaSchedule:
    """Add one relay slot per sub-cluster to the parent frame and build the
    CH' sub-frames.

    The gateway ends up owning two slots: its base data slot and the relay
    slot appended here.  CH' needs no slot in its own sub-frame.  Control
    costs: the gateway notifies CH' of its slots (transmit over their
    distance, receive at CH'), and CH' broadcasts its sub-frame at
    tx_range, mirroring a head's ADV broadcast.
    """
    if not subs:
        return schedule
    radio = radio if radio is not None else RadioParams()
    frames = {head: list(slots) for head, slots in schedule.frames.items()}
    subframes = dict(schedule.subframes)
    for sub in subs:
        if sub.head_prime is None:
            raise SimulationInvariantError(
                f"sub-cluster of gateway {sub.gateway} has no CH' elected"
            )
        if net is not None:
            ctrl = net.config.control_bits
            gateway = net.nodes[sub.gateway]
            head_prime = net.nodes[sub.head_prime]
            if gateway.alive:
                debit_energy(
                    gateway,
                    tx_cost(ctrl, net.node_distance(sub.gateway, sub.head_prime), radio),
                    ledger,
                )
                if head_prime.alive:
                    debit_energy(head_prime, rx_cost(ctrl, radio), ledger)
            if head_prime.alive:
                debit_energy(head_prime, tx_cost(ctrl, net.config.tx_range, radio), ledger)
        frames.setdefault(sub.parent_head, []).append(Slot(sub.gateway, relay=True))
        subframes[sub.head_prime] = sorted(sub.members)
        sub.reserved_slots = len(sub.members)
    return TdmaSchedule(frames, subframes)


def run_steady_state_oleach(net: Network, assignment: ClusterAssignment,
                            schedule: TdmaSchedule, subs: list[SubCluster],
                            ledger: RoundLedger | None = None,
                            radio: RadioParams | None = None) -> RoundReport:
    """O-LEACH data collection: sub-frames first, then the head frames.

    Per sub-cluster, orphan members transmit to CH' in their sub-frame
    slots; CH' aggregates what it heard plus its own reading and sends the
    result to the gateway.  The gateway then relays it unmodified in its
    extra head-frame slot.  With no sub-clusters this is exactly the
    baseline steady state.
    """
    radio = radio if radio is not None else RadioParams()
    bits = net.config.packet_bits
    nodes = net.nodes
    relay_payloads: dict[int, set[int]] = {}
    for sub in subs:
        head_prime = nodes[sub.head_prime]
        gateway = nodes[sub.gateway]
        received: set[int] = set()
        for orphan_id in schedule.subframes.get(sub.head_prime, ()):
            orphan = nodes[orphan_id]
            if not orphan.alive:
                continue
            debit_energy(orphan, tx_cost(bits, net.node_distance(orphan_id, sub.head_prime), radio), ledger)
            if head_prime.alive:
                debit_energy(head_prime, rx_cost(bits, radio), ledger)
                received.add(orphan_id)
        if not head_prime.alive:
            continue
        debit_energy(head_prime, aggregation_cost(bits, len(received) + 1, radio), ledger)
        if not head_prime.alive:
            continue
        debit_energy(head_prime, tx_cost(bits, net.node_distance(sub.head_prime, sub.gateway), radio), ledger)
        if gateway.alive:
            debit_energy(gateway, rx_cost(bits, radio), ledger)
            relay_payloads[sub.gateway] = received | {sub.head_prime}
    return run_head_frames(net, assignment, schedule, relay_payloads, ledger, radio)

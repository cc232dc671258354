"""Field deployment, geometry, and energy bookkeeping checks."""

import math

import pytest

from oleachsim.errors import ConfigError, SimulationInvariantError
from oleachsim.model import (Network, NetworkConfig, Node, Role, RoundLedger,
                             debit_energy, deploy_network, distance)


class TestDistance:
    def test_identity(self):
        assert distance((0, 0), (0, 0)) == 0.0
        assert distance((12.5, -3), (12.5, -3)) == 0.0

    def test_pythagorean(self):
        assert distance((0, 0), (3, 4)) == 5.0

    def test_hand_computed(self):
        # sqrt(30^2 + 40^2) = 50
        assert distance((10, 20), (40, 60)) == 50.0

    def test_symmetric(self):
        assert distance((1, 2), (7, -5)) == distance((7, -5), (1, 2))


class TestDeploy:
    def test_empty_network(self):
        net = deploy_network(NetworkConfig(n_nodes=0))
        assert net.nodes == []
        assert net.alive_count() == 0

    def test_determinism(self):
        cfg = NetworkConfig(n_nodes=50, seed=42)
        a = deploy_network(cfg)
        b = deploy_network(cfg)
        assert [(n.x, n.y) for n in a.nodes] == [(n.x, n.y) for n in b.nodes]

    def test_positions_within_bounds(self):
        cfg = NetworkConfig(n_nodes=500, field_width=300, field_height=300, seed=1)
        net = deploy_network(cfg)
        assert len(net.nodes) == 500
        for node in net.nodes:
            assert 0.0 <= node.x <= 300.0
            assert 0.0 <= node.y <= 300.0

    def test_initial_state(self):
        net = deploy_network(NetworkConfig(n_nodes=10, initial_energy=0.5, seed=9))
        for i, node in enumerate(net.nodes):
            assert node.id == i
            assert node.energy == 0.5
            assert node.alive
            assert node.rounds_since_ch is None
            assert node.role is Role.MEMBER

    def test_rejects_negative_dimensions(self):
        with pytest.raises(ConfigError):
            deploy_network(NetworkConfig(field_width=-1.0))

    def test_rejects_bad_probability(self):
        with pytest.raises(ConfigError, match="ch_probability"):
            NetworkConfig(ch_probability=1.5).validate()
        with pytest.raises(ConfigError, match="ch_probability"):
            NetworkConfig(ch_probability=0.0).validate()

    def test_rejects_bad_cap_and_range(self):
        with pytest.raises(ConfigError, match="clustering_rate_cap"):
            NetworkConfig(clustering_rate_cap=0.0).validate()
        with pytest.raises(ConfigError, match="tx_range"):
            NetworkConfig(tx_range=0.0).validate()


class TestDebitEnergy:
    def node(self, energy):
        return Node(0, 0.0, 0.0, energy)

    def test_zero_cost(self):
        n = self.node(0.5)
        drained = debit_energy(n, 0.0)
        assert n.energy == 0.5 and n.alive and drained == 0.0

    def test_exact_depletion_kills(self):
        n = self.node(0.5)
        drained = debit_energy(n, 0.5)
        assert n.energy == 0.0
        assert not n.alive
        assert n.role is Role.DEAD
        assert drained == 0.5

    def test_overdraw_clamps_to_zero(self):
        n = self.node(1e-7)
        drained = debit_energy(n, 5.01e-5)
        assert n.energy == 0.0
        assert not n.alive
        assert drained == 1e-7

    def test_dead_node_rejected(self):
        n = self.node(0.1)
        debit_energy(n, 0.1)
        with pytest.raises(SimulationInvariantError):
            debit_energy(n, 0.01)

    def test_negative_cost_rejected(self):
        with pytest.raises(SimulationInvariantError):
            debit_energy(self.node(0.5), -1e-9)

    def test_energy_never_increases(self):
        n = self.node(1.0)
        last = n.energy
        for cost in (0.1, 0.0, 0.3, 0.7, 0.2):
            if not n.alive:
                break
            debit_energy(n, cost)
            assert n.energy <= last
            last = n.energy


class TestRoundLedger:
    def test_records_drain_and_death(self):
        ledger = RoundLedger()
        a = Node(3, 0, 0, 0.5)
        b = Node(7, 0, 0, 1e-9)
        debit_energy(a, 0.1, ledger)
        debit_energy(a, 0.2, ledger)
        ledger.phase = "steady"
        debit_energy(b, 1.0, ledger)
        assert ledger.debits[3] == pytest.approx(0.3, rel=1e-12)
        assert ledger.debits[7] == 1e-9
        assert ledger.total == pytest.approx(0.3 + 1e-9, rel=1e-12)
        assert ledger.deaths == [(7, "steady")]

    def test_drain_matches_energy_delta_exactly(self):
        ledger = RoundLedger()
        n = Node(0, 0, 0, 0.5)
        before = n.energy
        debit_energy(n, 1e-20, ledger)  # rounds away against 0.5
        assert ledger.debits[0] == before - n.energy


class TestNetworkHelpers:
    def test_node_distance_and_sink(self):
        cfg = NetworkConfig(n_nodes=2, sink_pos=(0.0, 0.0))
        nodes = [Node(0, 0.0, 0.0, 0.5), Node(1, 3.0, 4.0, 0.5)]
        net = Network(cfg, nodes)
        assert net.node_distance(0, 1) == 5.0
        assert net.distance_to_sink(1) == 5.0

    def test_total_energy(self):
        cfg = NetworkConfig(n_nodes=3)
        nodes = [Node(i, 0.0, 0.0, 0.5) for i in range(3)]
        net = Network(cfg, nodes)
        assert net.total_energy() == 1.5
        nodes[1].energy = 0.0
        nodes[1].alive = False
        assert net.total_energy() == 1.0
        assert net.alive_count() == 2

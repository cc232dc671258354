import pytest

from oleachsim.model import Network, NetworkConfig, Node
from oleachsim.radio import RadioParams
from oleachsim.simulate import run_simulation


def make_net(positions, energy=0.5, **config_kwargs):
    """Hand-build a network from (x, y) positions with ids 0..n-1."""
    defaults = dict(n_nodes=len(positions), field_width=300.0, field_height=300.0)
    defaults.update(config_kwargs)
    cfg = NetworkConfig(**defaults)
    nodes = [Node(i, float(x), float(y), energy) for i, (x, y) in enumerate(positions)]
    return Network(cfg, nodes)


@pytest.fixture(scope="session")
def table1_runs():
    """Both protocols on the Table-1 default configuration, shared seed."""
    return run_simulation(NetworkConfig(), RadioParams(), compare=True)

"""Run configuration: flat key=value files over documented defaults.

One key per line, `#` starts a comment, unknown keys are rejected with
their line number, and missing keys fall back to the defaults below
(field 300x300, 500 nodes, sink at the origin, 0.5 J per node,
P = 0.1, TR = 0.1, 2000-bit packets, 2000 rounds).
"""

from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError
from .model import NetworkConfig, Protocol
from .radio import RadioParams

PROTOCOL_COMPARE = "compare"

_INT_KEYS = {"n_nodes", "packet_bits", "control_bits", "max_rounds", "seed"}
_FLOAT_KEYS = {
    "field_width", "field_height", "sink_x", "sink_y", "initial_energy",
    "ch_probability", "clustering_rate_cap", "tx_range",
    "e_elec", "eps_fs", "eps_amp", "e_da",
}
_STR_KEYS = {"protocol"}
KNOWN_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS

DEFAULTS: dict[str, object] = {
    "n_nodes": 500,
    "field_width": 300.0,
    "field_height": 300.0,
    "sink_x": 0.0,
    "sink_y": 0.0,
    "initial_energy": 0.5,
    "ch_probability": 0.1,
    "clustering_rate_cap": 0.1,
    "tx_range": 70.0,
    "packet_bits": 2000,
    "control_bits": 200,
    "e_elec": 50e-12,
    "eps_fs": 10e-12,
    "eps_amp": 0.0013e-12,
    "e_da": 5e-12,
    "max_rounds": 2000,
    "seed": 1,
    "protocol": PROTOCOL_COMPARE,
}


@dataclass(frozen=True)
class RunSpec:
    """Everything one invocation needs: the network and radio parameters,
    whether to run both protocols, and where outputs go."""

    network: NetworkConfig
    radio: RadioParams
    compare: bool
    out_dir: Path | None = None


def parse_config(text: str) -> RunSpec:
    """Parse a flat key=value config into a validated RunSpec."""
    values = dict(DEFAULTS)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            if key in _INT_KEYS:
                values[key] = int(value)
            elif key in _FLOAT_KEYS:
                values[key] = float(value)
            else:
                values[key] = value
        except ValueError:
            raise ConfigError(
                f"line {lineno}: cannot parse value {value!r} for key {key!r}"
            ) from None
    return build_spec(values)


def build_spec(values: dict[str, object]) -> RunSpec:
    """Assemble and validate a RunSpec from a complete value mapping."""
    protocol_name = str(values["protocol"]).lower()
    if protocol_name == PROTOCOL_COMPARE:
        compare = True
        protocol = Protocol.LEACH
    else:
        compare = False
        try:
            protocol = Protocol(protocol_name)
        except ValueError:
            raise ConfigError(
                f"protocol must be one of leach|oleach|compare, "
                f"got {values['protocol']!r}"
            ) from None
    network = NetworkConfig(
        n_nodes=values["n_nodes"],
        field_width=values["field_width"],
        field_height=values["field_height"],
        sink_pos=(values["sink_x"], values["sink_y"]),
        initial_energy=values["initial_energy"],
        ch_probability=values["ch_probability"],
        clustering_rate_cap=values["clustering_rate_cap"],
        tx_range=values["tx_range"],
        packet_bits=values["packet_bits"],
        control_bits=values["control_bits"],
        max_rounds=values["max_rounds"],
        seed=values["seed"],
        protocol=protocol,
    )
    network.validate()
    radio = RadioParams(
        e_elec=values["e_elec"],
        eps_fs=values["eps_fs"],
        eps_amp=values["eps_amp"],
        e_da=values["e_da"],
    )
    radio.validate()
    return RunSpec(network, radio, compare)


def load_config(path: str | Path) -> RunSpec:
    """Read and parse a config file; a missing file is a config error."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config(text)


def spec_to_lines(spec: RunSpec) -> str:
    """Echo a RunSpec back into the flat key=value format (re-parseable)."""
    net, radio = spec.network, spec.radio
    protocol = PROTOCOL_COMPARE if spec.compare else net.protocol.value
    pairs = [
        ("n_nodes", net.n_nodes),
        ("field_width", net.field_width),
        ("field_height", net.field_height),
        ("sink_x", net.sink_pos[0]),
        ("sink_y", net.sink_pos[1]),
        ("initial_energy", net.initial_energy),
        ("ch_probability", net.ch_probability),
        ("clustering_rate_cap", net.clustering_rate_cap),
        ("tx_range", net.tx_range),
        ("packet_bits", net.packet_bits),
        ("control_bits", net.control_bits),
        ("e_elec", radio.e_elec),
        ("eps_fs", radio.eps_fs),
        ("eps_amp", radio.eps_amp),
        ("e_da", radio.e_da),
        ("max_rounds", net.max_rounds),
        ("seed", net.seed),
        ("protocol", protocol),
    ]
    return "".join(f"{key}={value!r}\n" if isinstance(value, float)
                   else f"{key}={value}\n" for key, value in pairs)

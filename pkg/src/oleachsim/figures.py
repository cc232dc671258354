"""Matplotlib renderings of a run: per-round curves and the field map.

Figures are side outputs for eyeballing a run; the CSV traces remain the
authoritative, deterministic artifact.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .model import Role
from .simulate import ProtocolRun

ROLE_STYLE = {
    Role.CLUSTER_HEAD: ("tab:red", "^", "cluster head"),
    Role.GATEWAY: ("tab:purple", "s", "gateway"),
    Role.SUB_CLUSTER_HEAD: ("tab:orange", "v", "sub-cluster head"),
    Role.ORPHAN: ("tab:brown", "x", "orphan"),
    Role.MEMBER: ("tab:blue", ".", "node"),
    Role.DEAD: ("0.7", ".", "dead node"),
}


def _rounds(trace):
    return [m.round for m in trace.rounds]


def render_figures(runs: list[ProtocolRun], out_dir: str | Path) -> list[Path]:
    """Write the standard figure set as PNGs and return their paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    written.append(_curves(runs, out_dir / "orphans_gateways.png",
                           [("orphans_total", "-"), ("orphans_recovered", "--"),
                            ("gateways", ":")],
                           "count", "Orphan and gateway counts per round"))
    written.append(_curves(runs, out_dir / "alive_nodes.png",
                           [("alive", "-")], "alive nodes",
                           "Network lifetime"))
    written.append(_curves(runs, out_dir / "energy_remaining.png",
                           [("energy_remaining", "-")], "energy (J)",
                           "Residual network energy"))
    written.append(_curves(runs, out_dir / "rates.png",
                           [("connectivity_rate", "-"), ("coverage_rate", "--")],
                           "rate", "Connectivity and coverage rates"))
    for run in runs:
        written.append(_field_map(run, out_dir / f"field_{run.protocol.value}.png"))
    return written


def _curves(runs, path, fields, ylabel, title):
    fig, ax = plt.subplots(figsize=(7, 4.2))
    for run in runs:
        xs = _rounds(run.trace)
        for name, style in fields:
            label = name.replace("_", " ")
            if len(runs) > 1:
                label = f"{run.protocol.value} {label}"
            ax.plot(xs, [getattr(m, name) for m in run.trace.rounds],
                    style, label=label, linewidth=1.2)
    ax.set_xlabel("round")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    if runs and runs[0].trace.rounds:
        ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _field_map(run: ProtocolRun, path: Path) -> Path:
    """Scatter the field with each node drawn in its final-round role."""
    net = run.network
    fig, ax = plt.subplots(figsize=(5.5, 5.5))
    for role, (color, marker, label) in ROLE_STYLE.items():
        xs = [n.x for n in net.nodes if n.role is role]
        ys = [n.y for n in net.nodes if n.role is role]
        if xs:
            ax.scatter(xs, ys, c=color, marker=marker, s=22, label=label)
    sx, sy = net.config.sink_pos
    ax.scatter([sx], [sy], c="black", marker="*", s=120, label="sink")
    ax.set_xlabel("x (m)")
    ax.set_ylabel("y (m)")
    ax.set_title(f"{run.protocol.value}: field after final round")
    ax.legend(fontsize=7, loc="upper right")
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path

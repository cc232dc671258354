"""Delimited trace output and the human-readable run summary.

CSV bytes are a pure function of the trace: fixed header order, floats in
scientific notation with 13 significant digits, LF line endings, trailing
newline.
"""

import math
from pathlib import Path

from .metrics import CSV_FIELDS, FLOAT_FIELDS, SimulationTrace
from .simulate import ProtocolRun


def render_csv(trace: SimulationTrace) -> str:
    """Render a trace as deterministic CSV text."""
    lines = [",".join(CSV_FIELDS)]
    for m in trace.rounds:
        row = []
        for name in CSV_FIELDS:
            value = getattr(m, name)
            row.append(f"{value:.12e}" if name in FLOAT_FIELDS else str(value))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def emit_csv(trace: SimulationTrace, path: str | Path) -> Path:
    """Write the trace CSV; byte output is deterministic."""
    path = Path(path)
    try:
        path.write_bytes(render_csv(trace).encode("ascii"))
    except OSError as exc:
        raise OSError(f"cannot write trace to {path}: {exc}") from exc
    return path


def _fmt_round(value: int | None) -> str:
    return "not reached" if value is None else f"round {value}"


def _mean(values) -> float:
    values = list(values)
    return math.fsum(values) / len(values) if values else 0.0


def summarize_run(run: ProtocolRun) -> dict[str, float]:
    t = run.trace
    return {
        "rounds": len(t.rounds),
        "first_death": t.first_node_death(),
        "half_alive": t.half_alive_round(),
        "last_death": t.last_node_death(),
        "mean_connectivity": _mean(m.connectivity_rate for m in t.rounds),
        "mean_coverage": _mean(m.coverage_rate for m in t.rounds),
        "orphans_total": sum(m.orphans_total for m in t.rounds),
        "orphans_recovered": sum(m.orphans_recovered for m in t.rounds),
        "gateways_total": sum(m.gateways for m in t.rounds),
        "packets_to_bs": sum(m.packets_to_bs for m in t.rounds),
        "sources_delivered": sum(m.sources_delivered for m in t.rounds),
        "energy_dissipated": math.fsum(m.energy_dissipated for m in t.rounds),
    }


def emit_summary(runs: list[ProtocolRun]) -> str:
    """Per-run lifetime and totals; side-by-side deltas in comparison mode."""
    blocks = []
    stats = {}
    for run in runs:
        s = summarize_run(run)
        stats[run.protocol.value] = s
        t = run.trace
        blocks.append("\n".join([
            f"protocol: {run.protocol.value}",
            f"  rounds executed:        {s['rounds']} (termination: {t.termination})",
            f"  first node death:       {_fmt_round(s['first_death'])}",
            f"  half alive:             {_fmt_round(s['half_alive'])}",
            f"  last node death:        {_fmt_round(s['last_death'])}",
            f"  mean connectivity rate: {s['mean_connectivity']:.6f}",
            f"  mean coverage rate:     {s['mean_coverage']:.6f}",
            f"  orphans (total):        {s['orphans_total']}",
            f"  orphans recovered:      {s['orphans_recovered']}",
            f"  gateways (total):       {s['gateways_total']}",
            f"  packets to BS:          {s['packets_to_bs']}",
            f"  sources delivered:      {s['sources_delivered']}",
            f"  energy dissipated (J):  {s['energy_dissipated']:.6f}",
        ]))
    text = "\n\n".join(blocks)
    if len(runs) == 2 and {"leach", "oleach"} <= stats.keys():
        leach, oleach = stats["leach"], stats["oleach"]
        text += "\n\ndelta (oleach - leach):\n" + "\n".join([
            f"  packets to BS:          {oleach['packets_to_bs'] - leach['packets_to_bs']:+d}",
            f"  sources delivered:      {oleach['sources_delivered'] - leach['sources_delivered']:+d}",
            f"  orphans recovered:      {oleach['orphans_recovered'] - leach['orphans_recovered']:+d}",
            f"  mean connectivity rate: {oleach['mean_connectivity'] - leach['mean_connectivity']:+.6f}",
            f"  mean coverage rate:     {oleach['mean_coverage'] - leach['mean_coverage']:+.6f}",
        ])
    return text + "\n"

"""Command-line front end.

Runs the configured simulation, writes one CSV trace per protocol plus a
text summary and the rendered figures into the output directory, and
prints the summary.  Exit codes: 0 success, 1 configuration error, 2 I/O
error, 3 internal invariant violation.
"""

import argparse
import dataclasses
import sys
from pathlib import Path

from .config import DEFAULTS, PROTOCOL_COMPARE, RunSpec, build_spec, load_config, spec_to_lines
from .errors import ConfigError, SimulationInvariantError
from .model import Protocol
from .report import emit_csv, emit_summary
from .simulate import run_simulation

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_INTERNAL = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oleach-sim",
        description="Deterministic LEACH / O-LEACH round simulator.",
    )
    parser.add_argument("--config", metavar="PATH",
                        help="flat key=value config file (defaults used when omitted)")
    parser.add_argument("--out", metavar="DIR", default="out",
                        help="output directory (default: ./out)")
    parser.add_argument("--seed", type=int, default=None,
                        help="override the configured seed")
    parser.add_argument("--protocol", choices=["leach", "oleach", "compare"],
                        default=None, help="override the configured protocol")
    parser.add_argument("--no-plots", action="store_true",
                        help="skip figure rendering, keep CSV and summary only")
    return parser


def _resolve_spec(args) -> RunSpec:
    if args.config is not None:
        spec = load_config(args.config)
    else:
        spec = build_spec(dict(DEFAULTS))
    network = spec.network
    compare = spec.compare
    if args.seed is not None:
        network = dataclasses.replace(network, seed=args.seed)
    if args.protocol is not None:
        if args.protocol == PROTOCOL_COMPARE:
            compare = True
        else:
            compare = False
            network = dataclasses.replace(network, protocol=Protocol(args.protocol))
    return RunSpec(network, spec.radio, compare, Path(args.out))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = _resolve_spec(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        out_dir = spec.out_dir
        out_dir.mkdir(parents=True, exist_ok=True)
        runs = run_simulation(spec.network, spec.radio, spec.compare)
        for run in runs:
            emit_csv(run.trace, out_dir / f"{run.protocol.value}_trace.csv")
        summary = emit_summary(runs)
        (out_dir / "summary.txt").write_text(summary)
        (out_dir / "config_used.txt").write_text(spec_to_lines(spec))
        if not args.no_plots:
            from .figures import render_figures

            render_figures(runs, out_dir)
        print(summary, end="")
        return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SimulationInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

"""Command-line scenario runner.

Subcommands: ``run`` executes a scenario config, ``validate`` checks one
without executing, ``list-scenarios`` enumerates the known scenarios.
Exit codes: 0 success, 1 configuration error, 2 bound violation, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .config import SCENARIOS, ConfigError, describe_defaults, load_config
from .runner import BoundViolationError, run_scenario

_SCENARIO_HELP = {
    "qubit_autocorr": "two-level autocorrelation with decay floors and the imaginary ceiling",
    "goe_autocorr": "random-matrix autocorrelation, raw and normalized curves with bounds",
    "goe_fidelity": "coherent-Gibbs fidelity decay under a random Hamiltonian with its floor",
    "response_qubit": "two-level dynamical susceptibility against three ceilings",
    "qfi_sweep": "quantum Fisher information: spectral vs integral route, ceiling, variance floor",
    "custom_matrix": "autocorrelation pipeline on user-supplied H and O matrices",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowlimits",
        description="Run operator-flow speed-limit experiments and emit CSV curves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a scenario config")
    validate_p = sub.add_parser("validate", help="check a config without executing it")
    for p in (run_p, validate_p):
        p.add_argument("--config", required=True, metavar="PATH", help="scenario file")
        p.add_argument(
            "--override",
            action="append",
            default=[],
            metavar="section.key=value",
            help="override a config field (repeatable)",
        )
    run_p.add_argument("--out", metavar="DIR", help="output directory (overrides output.dir)")

    sub.add_parser("list-scenarios", help="list known scenario names")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "list-scenarios":
        for name in SCENARIOS:
            print(f"{name:>16}  {_SCENARIO_HELP[name]}")
        return 0

    try:
        cfg = load_config(args.config, overrides=tuple(args.override))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3

    if args.command == "validate":
        print("ok")
        for line in describe_defaults(cfg):
            print(f"  {line}")
        return 0

    try:
        summary = run_scenario(cfg, out_override=args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except BoundViolationError as exc:
        print(f"bound violation: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3

    print(f"{cfg.scenario}: wrote {len(summary.files)} curve file(s)")
    for name in summary.files:
        print(f"  {name}")
    for key, value in sorted(summary.margins.items()):
        print(f"  margin {key} = {value:.6g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 2 configuration error, 3 solver non-convergence,
4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .config import ConfigError, RunConfig, load_config
from .sweep import COLUMNS, run_sweep
from .verify import run_checks

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NONCONVERGED = 3
EXIT_VERIFY = 4


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return repr(value) if isinstance(value, float) else str(value)


def render(records, fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for rec in records:
            row = rec.as_row()
            w.writerow([_fmt(row[c]) for c in COLUMNS])
    else:
        for rec in records:
            buf.write(json.dumps(rec.as_row()) + "\n")
    return buf.getvalue()


def _emit(text: str, path: str | None):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _sweep_command(config: RunConfig, command: str) -> int:
    if command in ("simulate", "convergence") and config.monte_carlo is None:
        raise ConfigError("monte_carlo: required for the simulate and convergence commands")
    if command == "convergence" and config.sweep.variable != "antennas":
        raise ConfigError("sweep.variable: convergence needs an antennas sweep")
    records = run_sweep(config, monte_carlo=command != "asymptotic")
    _emit(render(records, config.output.format), config.output.path)
    if command == "convergence" and len(records) > 1:
        spreads = [r.mi_mc_max - r.mi_mc_min for r in records]
        if any(b >= a for a, b in zip(spreads, spreads[1:])):
            print("warning: Monte Carlo spread does not shrink monotonically with K",
                  file=sys.stderr)
    bad = [r.sweep_value for r in records if not r.converged]
    if bad:
        print(f"error: solver did not converge at sweep values {bad}", file=sys.stderr)
        return EXIT_NONCONVERGED
    return EXIT_OK


def _verify_command(config: RunConfig) -> int:
    seed = config.monte_carlo.seed if config.monte_carlo else 0
    results = run_checks(config.verify, seed)
    lines = [json.dumps(r.as_dict()) for r in results]
    _emit("\n".join(lines) + "\n", config.output.path)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name}: deviation {r.deviation:.3e} (tolerance {r.tolerance:.1e}, "
              f"{r.wall_ms:.0f} ms) {r.detail}".rstrip(), file=sys.stderr)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relaymi",
        description="Asymptotic and simulated mutual information of multi-hop MIMO relay networks.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "asymptotic": "asymptotic MI over the sweep grid",
        "simulate": "asymptotic MI plus seeded Monte Carlo statistics",
        "convergence": "Monte Carlo scatter versus antenna count",
        "verify-transforms": "numerical checks of transform identities and power bookkeeping",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=True, help="YAML run configuration")
        p.add_argument("--output", help="output file (default: stdout)")
        p.add_argument("--seed", type=int, help="Monte Carlo seed (overrides the config)")
        p.add_argument("--format", choices=("csv", "jsonl"), help="output format")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.seed is not None and not 0 <= args.seed < 2**64:
            raise ConfigError("--seed: must be an unsigned 64-bit integer")
        config = load_config(args.config).with_overrides(
            seed=args.seed, path=args.output, fmt=args.format)
        if args.command == "verify-transforms":
            return _verify_command(config)
        return _sweep_command(config, args.command)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

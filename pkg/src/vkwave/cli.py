"""Command-line entry point.

    vkwave check --scenario file.yaml [--out report.json]
                 [--format json|csv|human] [--seed N]

Exit status: 0 when every check passes, 1 when any check fails, 2 on
validation or runtime errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .errors import VkwaveError
from .report import emit_report, run_scenario
from .scenario import load_scenario


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vkwave",
        description="verification checks for plate-bending conservation laws",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", help="run the checks declared in a scenario file")
    check.add_argument("--scenario", required=True, help="path to a scenario YAML file")
    check.add_argument("--out", help="write the report here instead of stdout")
    check.add_argument(
        "--format",
        choices=("json", "csv", "human"),
        default="human",
        help="report serialization (default: human)",
    )
    check.add_argument(
        "--seed", type=int, default=None, help="override the scenario's random seed"
    )
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.seed is not None and args.seed < 0:
        print("error: --seed must be nonnegative", file=sys.stderr)
        return 2
    try:
        scenario = load_scenario(args.scenario)
        if args.seed is not None:
            scenario = replace(scenario, seed=args.seed)
        report = run_scenario(scenario)
        payload = emit_report(report, args.format)
    except VkwaveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.out:
        try:
            with open(args.out, "wb") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

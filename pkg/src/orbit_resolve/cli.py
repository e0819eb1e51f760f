"""orbit-resolve: enumerate nilpotent orbits, verify polarization claims, certify deformations."""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .partitions import LieTypeRank, Partition
from .report import COMMANDS, FORMATS, RunConfig, UsageError, render, run

SEED_ENV = "ORBIT_RESOLVE_SEED"


def _parse_orbit(text: str):
    body, _, tag = text.partition("#")
    return Partition.parse(body), (tag or None)


def _parse_t_values(text: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(tok.strip()) for tok in text.split(",") if tok.strip())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orbit-resolve", description=__doc__)
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("type_rank", metavar="TypeRank", help="family letter and rank, e.g. C3 or D4")
    p.add_argument("--orbit", help="restrict to one orbit, e.g. [2,2] or [2,2,2,2]#I")
    p.add_argument("--seed", type=int, default=None, help=f"random seed (default ${SEED_ENV} or 0)")
    p.add_argument("--trials", type=int, default=5, help="Richardson samples per round (>= 3)")
    p.add_argument("--samples", type=int, default=20, help="characteristic polynomial samples per fiber (>= 3)")
    p.add_argument("--t-values", default="0,1,-1,2,1/2", help="comma separated rationals, must include 0")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--q-slack", type=int, default=0, help="widen the parity filter (negative controls only)")
    p.add_argument("--timing", action="store_true", help="record wall-clock duration in the report")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        seed = args.seed if args.seed is not None else int(os.environ.get(SEED_ENV, "0"))
        orbit, tag = _parse_orbit(args.orbit) if args.orbit else (None, None)
        config = RunConfig(
            type_rank=LieTypeRank.parse(args.type_rank),
            orbit_filter=orbit,
            orbit_tag=tag,
            seed=seed,
            trials=args.trials,
            samples=args.samples,
            t_values=_parse_t_values(args.t_values),
            output_format=args.format,
            q_slack=args.q_slack,
        )
        report = run(args.command, config, timing=args.timing)
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"orbit-resolve: error: {exc}", file=sys.stderr)
        return 2
    text = render(report, config.output_format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

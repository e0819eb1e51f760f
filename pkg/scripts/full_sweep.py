"""Run verify and deform over every rank of the acceptance suite and write reports.

    python3 scripts/full_sweep.py --out-dir reports --format markdown
"""

import argparse
import sys
from pathlib import Path

from orbit_resolve.partitions import LieTypeRank
from orbit_resolve.report import RunConfig, render, run

RANKS = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "C2", "C3", "D2", "D3", "D4"]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="reports")
    ap.add_argument("--format", choices=("json", "markdown", "csv"), default="json")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--ranks", nargs="*", default=RANKS)
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    suffix = {"json": "json", "markdown": "md", "csv": "csv"}[args.format]
    worst = 0
    for t in args.ranks:
        config = RunConfig(LieTypeRank.parse(t), seed=args.seed, output_format=args.format)
        for command in ("verify", "deform"):
            report = run(command, config, timing=True)
            (out / f"{command}_{t}.{suffix}").write_text(render(report, args.format))
            worst = max(worst, report.exit_code)
            print(f"{command:6s} {t:3s} exit {report.exit_code}  {report.summary}  {report.duration_seconds}s")
    return worst


if __name__ == "__main__":
    sys.exit(main())

"""Print which Kraus convention reproduces each tabulated closed form.

Usage: python scripts/consistency_table.py [--samples 4] [--step 0.1] [--seed 0] [--csv FILE]
"""
import argparse
import sys
from pathlib import Path

from bellcoherence.consistency import NEITHER, consistency_report, format_table, report_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=4)
    ap.add_argument("--step", type=float, default=0.1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--csv")
    args = ap.parse_args()

    rows = consistency_report(state_samples=args.samples, grid_step=args.step, seed=args.seed)
    print(format_table(rows))
    if args.csv:
        Path(args.csv).write_bytes(report_csv(rows))
    return 2 if any(r.convention == NEITHER for r in rows) else 0


if __name__ == "__main__":
    sys.exit(main())

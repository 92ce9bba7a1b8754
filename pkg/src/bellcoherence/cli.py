"""Command-line entry point.

Exit codes: 0 success, 1 usage or parse error, 2 numerical invariant violation.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .coherence import Measure, frozen_scan
from .consistency import NEITHER, consistency_report, format_table, report_csv
from .core import BellCoeffs
from .errors import (
    BellCoherenceError,
    InvalidDensityMatrix,
    IterationCapExceeded,
    NotHermitian,
    PhysicalityViolation,
)
from .presets import DEFAULT_STATE, PRESET_NAMES, figure_preset
from .sweep import Convention, Engine, Grid, SweepConfig, emit_csv, measure_column, run_sweep

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _state(text: str) -> BellCoeffs:
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"--state expects c1,c2,c3, got {text!r}") from None
    if len(vals) != 3:
        raise UsageError(f"--state expects three comma-separated numbers, got {text!r}")
    try:
        return BellCoeffs(*vals)
    except PhysicalityViolation as exc:
        raise UsageError(str(exc)) from None


def _grid(text: str) -> Grid:
    try:
        return Grid.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--n expects comma-separated integers, got {text!r}") from None


def _measures(text: str) -> tuple[Measure, ...]:
    try:
        return tuple(Measure.parse(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _add_sweep_args(sp, measure_flag="--measures"):
    sp.add_argument("--state", default="0.3,-0.4,0.56", help="c1,c2,c3 (default: %(default)s)")
    sp.add_argument("--spec", required=True, help='channel spec, e.g. "A:bf(p)^2; B:pf(q)"')
    sp.add_argument("--engine", choices=[e.value for e in Engine], default="closedform")
    sp.add_argument("--convention", choices=[c.value for c in Convention], default="one_sided",
                    help="Kraus application convention for the oracle engine")
    sp.add_argument("--p-grid", default="0:1:0.01", help="start:stop:step (default: %(default)s)")
    sp.add_argument("--q-grid", default="0:1:0.01")
    sp.add_argument("--n", default="1", help="comma-separated repetition multipliers")
    if measure_flag == "--measures":
        sp.add_argument("--measures", default="l1,rel")
    else:
        sp.add_argument("--measure", choices=["l1", "rel"], required=True)


def _config(args, measures) -> SweepConfig:
    return SweepConfig(
        state=_state(args.state),
        spec=args.spec,
        p_grid=_grid(args.p_grid),
        q_grid=_grid(args.q_grid),
        n_list=_ints(args.n),
        engine=args.engine,
        measures=measures,
        convention=args.convention,
    )


def _write(data: bytes, out: str):
    if out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(out).write_bytes(data)


def cmd_sweep(args) -> int:
    cfg = _config(args, _measures(args.measures))
    _write(emit_csv(run_sweep(cfg), cfg), args.out)
    return EXIT_OK


def cmd_figure(args) -> int:
    names = PRESET_NAMES if args.preset == "all" else (args.preset,)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in names:
        for cfg in figure_preset(name, step=args.step, engine=Engine(args.engine), state=_state(args.state)):
            path = out_dir / f"{cfg.name}.csv"
            path.write_bytes(emit_csv(run_sweep(cfg), cfg))
            print(path)
    return EXIT_OK


def cmd_frozen(args) -> int:
    measure = Measure.parse(args.measure)
    cfg = _config(args, (measure,))
    report = frozen_scan(measure_column(run_sweep(cfg), measure), measure)
    print(report)
    return EXIT_OK


def cmd_check(args) -> int:
    rows = consistency_report(state_samples=args.samples, grid_step=args.step, seed=args.seed)
    print(format_table(rows))
    if args.out:
        Path(args.out).write_bytes(report_csv(rows))
    if any(r.convention == NEITHER for r in rows):
        print("error: some closed forms match neither Kraus convention", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bellcoh", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("sweep", help="sweep a channel spec over (n, p, q) and write CSV")
    _add_sweep_args(sp)
    sp.add_argument("--out", default="-", help="output file ('-' for stdout)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("figure", help="write the CSV data behind a figure panel")
    sp.add_argument("preset", choices=PRESET_NAMES + ("all",), metavar="preset",
                    help=f"one of {', '.join(PRESET_NAMES)}, or all")
    sp.add_argument("--out-dir", required=True)
    sp.add_argument("--step", type=float, default=0.01)
    sp.add_argument("--engine", choices=[e.value for e in Engine], default="closedform")
    sp.add_argument("--state", default=",".join(repr(x) for x in DEFAULT_STATE.as_tuple()))
    sp.set_defaults(func=cmd_figure)

    sp = sub.add_parser("frozen", help="check whether a coherence curve stays constant")
    _add_sweep_args(sp, measure_flag="--measure")
    sp.set_defaults(func=cmd_frozen)

    sp = sub.add_parser("check-consistency", help="match closed forms against Kraus conventions")
    sp.add_argument("--step", type=float, default=0.1)
    sp.add_argument("--samples", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="also write the table as CSV")
    sp.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidDensityMatrix, NotHermitian, PhysicalityViolation) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, BellCoherenceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Write the CSV data behind every figure panel and print a short summary.

Usage: python scripts/reproduce_figures.py [OUT_DIR] [--step 0.01] [--engine closedform|oracle]
"""
import argparse
from pathlib import Path

from bellcoherence.presets import PRESET_NAMES, figure_preset
from bellcoherence.sweep import Engine, emit_csv, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out_dir", nargs="?", default="figures")
    ap.add_argument("--step", type=float, default=0.01)
    ap.add_argument("--engine", choices=[e.value for e in Engine], default="closedform")
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name in PRESET_NAMES:
        for cfg in figure_preset(name, step=args.step, engine=Engine(args.engine)):
            rows = run_sweep(cfg)
            (out / f"{cfg.name}.csv").write_bytes(emit_csv(rows, cfg))
            col = [r.C_r if r.C_r is not None else r.C_l1 for r in rows]
            print(f"{cfg.name:<12} {cfg.spec.render():<22} rows={len(rows):6d}  "
                  f"min={min(col):.4f} max={max(col):.4f}")


if __name__ == "__main__":
    main()

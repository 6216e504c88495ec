#!/usr/bin/env python3
"""Plasmon launch next to the silver nanowire.

Writes decay curves for both dipole orientations, the solved mode
summary, and a field map of the guided mode; plots them when
matplotlib is importable.
"""

import argparse
import json
import sys
from pathlib import Path

from mesoqed.cli import main as cli_main


def emit(argv, path: Path) -> None:
    rc = cli_main(argv + ["--out", str(path)])
    if rc != 0:
        raise SystemExit(rc)
    print(f"wrote {path}")


def read_rows(path: Path):
    rows = []
    with path.open(encoding="utf-8") as fh:
        for line in fh:
            if not line.startswith("#"):
                rows.append(line.strip().split(","))
    header, data = rows[0], rows[1:]
    col = {name: i for i, name in enumerate(header)}
    return col, data


def plot(out_dir: Path) -> None:
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not available, skipping the figure")
        return

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    for name, style in (("axial", "-"), ("radial", "--")):
        col, data = read_rows(out_dir / f"nanowire_{name}.csv")
        d = [float(r[col["d"]]) for r in data]
        ax1.plot(d, [float(r[col["total_direct"]]) for r in data],
                 style, label=f"{name}, direct")
        ax1.plot(d, [float(r[col["total_inverted"]]) for r in data],
                 style, alpha=0.5, label=f"{name}, inverted")
        ax2.plot(d, [float(r[col["gamma0_pl"]]) for r in data],
                 style, label=f"{name}, plasmon channel")
    ax1.axhline(1.0, color="0.7", lw=0.8)
    ax1.set_xlabel("distance d (nm)")
    ax1.set_ylabel("rate / bulk rate")
    ax1.set_yscale("log")
    ax1.legend(fontsize=8)
    ax2.set_xlabel("distance d (nm)")
    ax2.set_ylabel("rate / bulk rate")
    ax2.set_yscale("log")
    ax2.legend(fontsize=8)
    fig.tight_layout()
    png = out_dir / "nanowire_decay.png"
    fig.savefig(png, dpi=150)
    print(f"wrote {png}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", type=Path, default=Path("out"))
    ap.add_argument("--min", type=float, default=10.0)
    ap.add_argument("--max", type=float, default=300.0)
    ap.add_argument("--step", type=float, default=5.0)
    args = ap.parse_args(argv)
    args.out_dir.mkdir(parents=True, exist_ok=True)

    sweep = f"{args.min}:{args.max}:{args.step}"
    emit(["nanowire-sweep", "--range", sweep, "--orientation", "axial"],
         args.out_dir / "nanowire_axial.csv")
    emit(["nanowire-sweep", "--range", sweep, "--orientation", "radial"],
         args.out_dir / "nanowire_radial.csv")
    emit(["dispersion"], args.out_dir / "nanowire_mode.json")
    emit(["field-map", "--nr", "61", "--nz", "121"],
         args.out_dir / "nanowire_field.csv")

    mode = json.loads((args.out_dir / "nanowire_mode.json").read_text())
    n_eff = mode["n_eff"]["value"]
    print(f"guided mode: n_eff = {n_eff['re']:.4f} + {n_eff['im']:.4f}i, "
          f"v_g = {mode['v_g']['value']:.2f} {mode['v_g']['units']}")

    plot(args.out_dir)
    return 0


if __name__ == "__main__":
    sys.exit(main())

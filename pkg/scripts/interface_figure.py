#!/usr/bin/env python3
"""Decay curves above the planar silver interface.

Writes interface_decay.csv (both mountings plus channel split) and, if
matplotlib is importable, interface_decay.png next to it.
"""

import argparse
import csv
import sys
from pathlib import Path

from mesoqed.cli import main as cli_main


def run(out_dir: Path, lo: float, hi: float, step: float) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "interface_decay.csv"
    rc = cli_main([
        "interface-sweep",
        "--range", f"{lo}:{hi}:{step}",
        "--out", str(csv_path),
    ])
    if rc != 0:
        raise SystemExit(rc)
    return csv_path


def plot(csv_path: Path) -> None:
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not available, skipping the figure")
        return

    rows = []
    with csv_path.open(encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("#"):
                continue
            rows.append(line.strip().split(","))
    header, data = rows[0], rows[1:]
    col = {name: i for i, name in enumerate(header)}
    h = [float(r[col["h"]]) for r in data]

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4), sharex=True)
    for key, label in (("total_direct", "direct mounting"),
                       ("total_inverted", "inverted mounting"),
                       ("gamma0", "point-dipole term")):
        ax1.plot(h, [float(r[col[key]]) for r in data], label=label)
    ax1.axhline(1.0, color="0.7", lw=0.8)
    ax1.set_xlabel("height h (nm)")
    ax1.set_ylabel("rate / bulk rate")
    ax1.legend()

    for key, label in (("rad", "radiative"), ("pl", "plasmon"),
                       ("ls", "lossy surface")):
        ax2.plot(h, [float(r[col[key]]) for r in data], label=label)
    ax2.set_xlabel("height h (nm)")
    ax2.set_ylabel("channel contribution")
    ax2.legend()

    fig.tight_layout()
    png = csv_path.with_suffix(".png")
    fig.savefig(png, dpi=150)
    print(f"wrote {png}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", type=Path, default=Path("out"))
    ap.add_argument("--min", type=float, default=20.0)
    ap.add_argument("--max", type=float, default=1000.0)
    ap.add_argument("--step", type=float, default=5.0)
    args = ap.parse_args(argv)

    csv_path = run(args.out_dir, args.min, args.max, args.step)
    print(f"wrote {csv_path}")
    plot(csv_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Plot the panel CSVs written by fig1_sweep.py (needs matplotlib, not a package dependency).

    python3 scripts/plot_fig1.py --in-dir results/fig1 --out fig1.png
"""

import argparse
import csv
from pathlib import Path

from energylines.panels import PANELS, ZETAS


def read(path):
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    return [float(r["E"]) for r in rows], [float(r["ratio"]) for r in rows]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--in-dir", default="results/fig1")
    ap.add_argument("--out", default="results/fig1.png")
    args = ap.parse_args(argv)
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        raise SystemExit("matplotlib is required for plotting: pip install matplotlib")

    fig, axes = plt.subplots(2, 2, figsize=(9, 7))
    for ax, panel in zip(axes.flat, PANELS):
        for zeta in ZETAS:
            E, ratio = read(Path(args.in_dir) / panel.csv_name(zeta))
            ax.semilogx(E, ratio, label=f"zeta = {zeta:g}")
            ax.axhline(panel.asymptote(zeta), ls=":", lw=0.8, color="grey")
        name = "eta" if panel.family == "attenuator" else "mu"
        ax.set_title(f"{panel.label}) {name} = {panel.strength:g}")
        ax.set_xlabel("E")
        ax.set_ylabel("max ergotropy / E")
        ax.legend()
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()

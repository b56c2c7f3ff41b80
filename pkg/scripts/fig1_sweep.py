"""Write the ratio-vs-energy CSVs for the four panels (one file per panel and zeta).

    python3 scripts/fig1_sweep.py --out-dir results/fig1 --points 41
"""

import argparse
from pathlib import Path

import numpy as np

from energylines.cli import SweepSpec, write_scan_csv
from energylines.panels import PANELS, ZETAS


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="results/fig1")
    ap.add_argument("--e-min", type=float, default=1e-2)
    ap.add_argument("--e-max", type=float, default=1e4)
    ap.add_argument("--points", type=int, default=41)
    ap.add_argument("--normalization", choices=("input", "output"), default="input")
    args = ap.parse_args(argv)

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    energies = np.geomspace(args.e_min, args.e_max, args.points).tolist()
    for panel in PANELS:
        for zeta in ZETAS:
            spec = SweepSpec(panel.channel_spec(zeta), energies, normalization=args.normalization)
            path = out / panel.csv_name(zeta)
            with open(path, "w", newline="") as fh:
                write_scan_csv(spec, fh)
            print(f"wrote {path}")


if __name__ == "__main__":
    main()

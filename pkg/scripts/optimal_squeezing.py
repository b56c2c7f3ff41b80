"""Unclamped optimal squeezing of amplified squeezers versus gain.

Prints z* from the optimizer and from the best stationarity root, side by side.

    python3 scripts/optimal_squeezing.py --zeta 2 --zeta 4
"""

import argparse

import numpy as np

from energylines.channels import amplified_squeezer
from energylines.optimize import maximize, normalize
from energylines.verify import best_stationary


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--zeta", type=float, action="append")
    ap.add_argument("--mu-max", type=float, default=10.0)
    ap.add_argument("--points", type=int, default=10)
    ap.add_argument("--energy", type=float, default=1e4, help="large enough that nothing clamps")
    args = ap.parse_args(argv)

    print("zeta,mu,z_star_optimizer,z_star_roots,clamped")
    for zeta in args.zeta or [2.0, 4.0]:
        for mu in np.linspace(1.0, args.mu_max, args.points):
            nf = normalize(amplified_squeezer(mu, zeta))
            res = maximize(nf, args.energy)
            z_root, _ = best_stationary(nf, args.energy)
            print(f"{zeta:g},{mu:.17g},{res.z_star:.17g},{z_root:.17g},{int(res.clamped)}")


if __name__ == "__main__":
    main()

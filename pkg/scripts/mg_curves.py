"""High-SNR multiplexing gain curves and finite-SNR slope estimates."""
import argparse

import numpy as np

from sqbf.asymptotics import MG_STRATEGIES, mg_curve, mg_empirical
from sqbf.config import SystemConfig, TrainingType


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--theta", type=float, default=0.1)
    ap.add_argument("--P-dB", dest="P_dB", type=float, nargs="+", default=[40, 60, 80])
    args = ap.parse_args()
    zetas = np.round(np.arange(0, 1.21, 0.1), 10)
    print("zeta  " + "  ".join(f"{k:>15s}" for k in MG_STRATEGIES))
    curves = {k: mg_curve(k, args.theta, zetas) for k in MG_STRATEGIES}
    for i, z in enumerate(zetas):
        print(f"{z:4.1f}  " + "  ".join(f"{curves[k][i].r:7.4f} {curves[k][i].regime[:7]:>7s}"
                                       for k in MG_STRATEGIES))
    M = 8
    T = int(round(M * (M - 1) / args.theta))
    print(f"\nfinite-SNR slopes, M={M}, T={T}, P in {args.P_dB} dB")
    for training in TrainingType:
        base = SystemConfig.from_db(M, T, 15.0, 0.1, 0.3, training)
        for strategy in ("sqbf", "hf"):
            slopes = [mg_empirical(strategy, base, z, args.P_dB) for z in (0.3, 0.5, 0.8)]
            print(f"  {strategy}/{training.value}: zeta 0.3/0.5/0.8 -> "
                  + "/".join(f"{s:.3f}" for s in slopes))


if __name__ == "__main__":
    main()

"""Percent spectral-efficiency gain of sequential beamforming over half duplex."""
import argparse

import numpy as np

from sqbf.config import SystemConfig, TrainingType
from sqbf.optimizer import exact_opt_ttr
from sqbf.strategy import se_improvement


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--M", type=int, default=8)
    ap.add_argument("--P-dB", dest="P_dB", type=float, default=15.0)
    ap.add_argument("--f", type=float, default=0.1)
    ap.add_argument("--alpha", type=float, nargs="+", default=[0.0, 0.3, 1.0])
    ap.add_argument("--T", type=int, nargs="+", default=[500, 1000, 2000, 3000, 5000])
    args = ap.parse_args()
    print("alpha  training  " + "  ".join(f"T={T:>5d}" for T in args.T))
    for alpha in args.alpha:
        for training in TrainingType:
            vals = []
            for T in args.T:
                cfg = SystemConfig.from_db(args.M, T, args.P_dB, args.f, alpha, training)
                vals.append(se_improvement(cfg, exact_opt_ttr(cfg, "sqbf").se_at_opt,
                                           exact_opt_ttr(cfg, "hf").se_at_opt))
            print(f"{alpha:5.2f}  {training.value:8s}  " + "  ".join(f"{v:6.2f}%" for v in vals))


if __name__ == "__main__":
    main()

"""Monte Carlo against the analytic rate and spectral-efficiency bounds."""
import argparse

from sqbf.config import SystemConfig, TrainingType
from sqbf.montecarlo import SimOptions, run_monte_carlo
from sqbf.rates import rate_data_lower_bound, rate_tr_lower_bound
from sqbf.strategy import se_hf, se_sqbf_bound


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--iters", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--T", type=int, default=500)
    ap.add_argument("--T-tr", dest="T_tr", type=int, nargs="+", default=[80, 160, 240, 320])
    ap.add_argument("--feedback", choices=["rvq", "fixed_point"], default="rvq")
    args = ap.parse_args()
    opts = SimOptions(n_iter=args.iters, seed=args.seed, workers=args.workers,
                      feedback=args.feedback)
    print("training  T_tr   R_tr sim (bound)       R_data sim (bound)     SE SqBf sim (bound)    SE Hf sim (bound)")
    for training in TrainingType:
        cfg = SystemConfig.from_db(8, args.T, 15.0, 0.1, 0.3, training)
        for T_tr in args.T_tr:
            sq = run_monte_carlo(cfg, T_tr, "sqbf", opts)
            hf = run_monte_carlo(cfg, T_tr, "hf", opts)
            print(f"{training.value:8s}  {sq.T_tr:4d}   "
                  f"{sq.r_tr_mean:5.3f}±{sq.r_tr_ci95:.3f} ({rate_tr_lower_bound(cfg, sq.T_tr):5.3f})   "
                  f"{sq.r_data_mean:5.3f}±{sq.r_data_ci95:.3f} ({rate_data_lower_bound(cfg, sq.T_tr):5.3f})   "
                  f"{sq.se_mean:5.3f}±{sq.se_ci95:.3f} ({se_sqbf_bound(cfg, sq.T_tr).se_total:5.3f})   "
                  f"{hf.se_mean:5.3f}±{hf.se_ci95:.3f} ({se_hf(cfg, sq.T_tr).se_total:5.3f})")


if __name__ == "__main__":
    main()

"""Optimal training fraction T_tr*/T versus block length, exact and closed form."""
import argparse

from sqbf.cli import PRESETS, parse_spec, run_spec, to_csv, write_atomic


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="fig3_training_fraction.csv")
    args = ap.parse_args()
    header, rows = run_spec(parse_spec(PRESETS["fig3"]))
    write_atomic(args.out, to_csv(header, rows))
    for row in rows:
        print(f"T={row[0]:6.0f}  " + "  ".join(f"{v:.3f}" for v in row[1:5]))
    print(f"columns: {', '.join(header[1:5])}; full table in {args.out}")


if __name__ == "__main__":
    main()

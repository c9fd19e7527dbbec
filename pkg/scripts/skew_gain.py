"""Sample-size savings of the skew-aware bound for iid variables on [-r, 1].

For each skew ratio r the script prints the smallest n meeting
P(mean >= t) <= delta under the original and the improved scale.

    python scripts/skew_gain.py --t 0.1 --delta 0.01
"""
import argparse

from improved_hoeffding import MgfBoundKind, invert_for_n, make_interval


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--t", type=float, default=0.1)
    ap.add_argument("--delta", type=float, default=0.01)
    ap.add_argument("--ratios", type=str, default="1,1.5,2,4,8,16,32")
    args = ap.parse_args()

    print("r,A,G,n_original,n_improved,saving")
    for r in [float(x) for x in args.ratios.split(",")]:
        iv = make_interval(-r, 1.0)
        n_o = invert_for_n(iv, args.t, args.delta, MgfBoundKind.ORIGINAL)
        n_i = invert_for_n(iv, args.t, args.delta, MgfBoundKind.IMPROVED)
        print(f"{r:g},{iv.A:.6g},{iv.G:.6g},{n_o},{n_i},{1 - n_i / n_o:.4f}")


if __name__ == "__main__":
    main()

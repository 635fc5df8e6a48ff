"""Peak space of the streaming algorithms as n grows (k = n/2 unless overridden).

Prints a CSV table: algorithm, n, mean peak words over the seeds, and the
ratio to sqrt(n).
"""
import argparse
import csv
import math
import statistics
import sys

from swstream.instances import gen_random
from swstream.runner import solve


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--algos", default="baseline,two-pass,small-int,ksmin")
    ap.add_argument("--n-list", default="1000,4000,16000,64000")
    ap.add_argument("--k-frac", type=float, default=0.5)
    ap.add_argument("--r", type=int, default=None, help="value bound (default n)")
    ap.add_argument("--l", type=int, default=1, help="rank used for ksmin")
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["algo", "n", "k", "r", "mean_peak_words", "peak_over_sqrt_n"])
    for algo in args.algos.split(","):
        for n in map(int, args.n_list.split(",")):
            k = max(1, int(n * args.k_frac))
            r = args.r if args.r is not None else n
            l = args.l if algo == "ksmin" else 1
            peaks = [solve(algo, gen_random(n, k, r, l, s), verify=False).metrics.peak_words
                     for s in range(args.seeds)]
            mean = statistics.mean(peaks)
            w.writerow([algo, n, k, r, f"{mean:.1f}", f"{mean / math.sqrt(n):.3f}"])


if __name__ == "__main__":
    main()

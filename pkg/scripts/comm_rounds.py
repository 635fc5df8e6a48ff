"""Communication of the two-party protocols as the round budget grows.

For comm-smin the budget runs over odd p >= 3; for comm-ksmin over
p >= 2l+2. Bits are averaged over the seeds.
"""
import argparse
import csv
import statistics
import sys

from swstream.instances import gen_random
from swstream.runner import solve


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2 ** 14)
    ap.add_argument("--k-frac", type=float, default=0.5)
    ap.add_argument("--l", type=int, default=2)
    ap.add_argument("--max-rounds", type=int, default=11)
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args()
    n = args.n
    k = max(1, int(n * args.k_frac))

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["algo", "n", "k", "l", "p", "mean_comm_bits", "mean_value_bits", "rounds_used"])
    budgets = {
        "comm-smin": (1, range(3, args.max_rounds + 1, 2)),
        "comm-ksmin": (args.l, range(2 * args.l + 2, args.max_rounds + 2 * args.l)),
    }
    for algo, (l, rounds) in budgets.items():
        for p in rounds:
            runs = [solve(algo, gen_random(n, k, n, l, s), p, verify=False) for s in range(args.seeds)]
            bits = statistics.mean(r.metrics.comm_bits for r in runs)
            vbits = statistics.mean(r.details["value_bits"] for r in runs)
            used = max(r.metrics.rounds for r in runs)
            w.writerow([algo, n, k, l, p, f"{bits:.1f}", f"{vbits:.1f}", used])


if __name__ == "__main__":
    main()

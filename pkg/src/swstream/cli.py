"""Command-line front end: ``gen``, ``run``, ``verify`` and ``bench``."""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .comm import ProtocolError
from .instances import InvalidParams, gen_hard_majority, gen_hard_min, gen_random
from .model import InvalidInstance, ProblemInstance, RunMetrics, StreamError
from .runner import ALGORITHMS, PROTOCOLS, solve

SEED_ENV = "SWSTREAM_SEED"
BENCH_GRID = ["algo", "n", "k", "r", "l", "rounds_param", "seed"]
BENCH_COLUMNS = BENCH_GRID + RunMetrics.field_names() + ["comm_value_bits"]


class CliError(Exception):
    pass


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


def _instance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="instance file ('N K R l' header, then N integers)")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--k", type=int, default=None, help="window length (default n//2)")
    p.add_argument("--r", type=int, default=None, help="value bound (default n)")
    p.add_argument("--l", type=int, default=1, help="rank")
    p.add_argument("--seed", type=int, default=None, help=f"default from ${SEED_ENV} or 0")


def _load_instance(args, seed_offset: int = 0) -> ProblemInstance:
    if args.input:
        with open(args.input) as fh:
            inst = ProblemInstance.from_text(fh.read())
        if args.l != 1 and args.l != inst.l:
            inst = inst.with_rank(args.l)
        return inst
    seed = default_seed() if args.seed is None else args.seed
    k = args.k if args.k is not None else max(1, args.n // 2)
    r = args.r if args.r is not None else args.n
    return gen_random(args.n, k, r, args.l, seed + seed_offset)


def _write_records(rows: list[dict], fmt: str, columns: list[str], fh) -> None:
    if fmt == "json":
        for row in rows:
            fh.write(json.dumps(row) + "\n")
        return
    writer = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def cmd_gen(args) -> int:
    seed = default_seed() if args.seed is None else args.seed
    if args.family == "random":
        k = args.k if args.k is not None else max(1, args.n // 2)
        r = args.r if args.r is not None else args.n
        inst = gen_random(args.n, k, r, args.l, seed)
    elif args.family == "hard-min":
        k = args.k if args.k is not None else max(2, args.n // 2)
        r = args.r if args.r is not None else k
        inst = gen_hard_min(k, args.m, r, seed, args.i)
    else:
        inst = gen_hard_majority(args.n, seed, args.k, args.passes)
    text = inst.to_text()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_run(args) -> int:
    inst = _load_instance(args)
    res = solve(args.algo, inst, args.rounds, verify=not args.no_verify)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(" ".join(map(str, res.outputs)) + "\n")
    elif args.print_outputs:
        print(" ".join(map(str, res.outputs)))
    _write_records([res.metrics.as_dict()], args.format, RunMetrics.field_names(), sys.stdout)
    if args.transcript and "transcript" in res.details:
        for rnd, sender, kind, bits in res.details["transcript"]:
            print(json.dumps({"round": rnd, "sender": sender, "kind": kind, "bits": bits}))
    return 0


def cmd_verify(args) -> int:
    failures = 0
    for c in range(args.count):
        inst = _load_instance(args, seed_offset=c)
        res = solve(args.algo, inst, args.rounds, verify=True)
        if args.corrupt_window is not None:
            from .oracle import brute_ksmin, first_mismatch
            rank = 1 if args.algo == "comm-smin" else inst.l
            res.outputs[args.corrupt_window] += 1
            res.mismatch = first_mismatch(brute_ksmin(inst.values, inst.k, rank), res.outputs)
        if res.mismatch is not None:
            failures += 1
            print(f"MISMATCH instance {c}: first differing window {res.mismatch}")
            if args.input:
                break
    total = 1 if args.input else args.count
    print(f"{args.algo}: {total - failures}/{total} instances verified")
    return 1 if failures else 0


def _bench_cell(cell: dict) -> dict:
    inst = gen_random(cell["n"], cell["k"], cell["r"], cell["l"], cell["seed"])
    res = solve(cell["algo"], inst, cell["rounds_param"], verify=cell["verify"])
    row = {key: cell[key] for key in BENCH_GRID}
    row["rounds_param"] = "" if cell["rounds_param"] is None else cell["rounds_param"]
    row.update(res.metrics.as_dict())
    row["comm_value_bits"] = res.details.get("value_bits", 0)
    return row


def bench_grid(algos, n_list, k_frac, r_mode, l, rounds_list, repeats, seed, verify=False):
    cells = []
    for algo in algos:
        if algo not in ALGORITHMS:
            raise CliError(f"unknown algorithm {algo!r}")
        for n in n_list:
            k = max(1, int(n * k_frac))
            r = n if r_mode == "n" else int(r_mode)
            if not 1 <= l <= k <= n:
                raise CliError(f"bad grid cell n={n} k={k} l={l}")
            rounds = rounds_list if algo in PROTOCOLS and rounds_list else [None]
            for p in rounds:
                for rep in range(repeats):
                    cells.append({"algo": algo, "n": n, "k": k, "r": r, "l": l,
                                  "rounds_param": p, "seed": seed + rep, "verify": verify})
    return cells


def run_bench(cells: list[dict], jobs: int = 1) -> list[dict]:
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_bench_cell, cells))
    return [_bench_cell(c) for c in cells]


def _int_list(text: str) -> list[int]:
    try:
        return [int(float(x)) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def cmd_bench(args) -> int:
    seed = default_seed() if args.seed is None else args.seed
    cells = bench_grid(args.algos.split(","), args.n_list, args.k_frac, args.r_mode, args.l,
                       args.rounds_list, args.repeats, seed, args.verify)
    rows = run_bench(cells, args.jobs)
    if args.output:
        with open(args.output, "w") as fh:
            _write_records(rows, args.format, BENCH_COLUMNS, fh)
    else:
        _write_records(rows, args.format, BENCH_COLUMNS, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swstream", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write an instance in the text format")
    g.add_argument("--family", choices=["random", "hard-min", "hard-maj"], default="random")
    g.add_argument("--n", type=int, default=64)
    g.add_argument("--k", type=int, default=None)
    g.add_argument("--r", type=int, default=None)
    g.add_argument("--l", type=int, default=1)
    g.add_argument("--m", type=int, default=1, help="hard-min block parameter")
    g.add_argument("--i", type=int, default=None, help="hard-min Bob input index")
    g.add_argument("--passes", type=int, default=1, help="hard-maj pass count for the default window")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--output")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="run one algorithm and print its metrics")
    r.add_argument("--algo", choices=ALGORITHMS, required=True)
    _instance_flags(r)
    r.add_argument("--rounds", type=int, default=None)
    r.add_argument("--output", help="write window answers here")
    r.add_argument("--print-outputs", action="store_true")
    r.add_argument("--format", choices=["json", "csv"], default="json")
    r.add_argument("--no-verify", action="store_true")
    r.add_argument("--transcript", action="store_true", help="dump protocol messages")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="check an algorithm against the brute-force oracle")
    v.add_argument("--algo", choices=ALGORITHMS, required=True)
    _instance_flags(v)
    v.add_argument("--rounds", type=int, default=None)
    v.add_argument("--count", type=int, default=1, help="seeded instances to check")
    v.add_argument("--corrupt-window", type=int, default=None, help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="metrics table over a parameter grid")
    b.add_argument("--algos", default="two-pass")
    b.add_argument("--n-list", type=_int_list, default=[1024])
    b.add_argument("--k-frac", type=float, default=0.5)
    b.add_argument("--r-mode", default="n", help="'n' or a fixed integer bound")
    b.add_argument("--l", type=int, default=1)
    b.add_argument("--rounds-list", type=_int_list, default=[])
    b.add_argument("--repeats", type=int, default=1)
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--format", choices=["csv", "json"], default="csv")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--verify", action="store_true")
    b.add_argument("--output")
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, InvalidInstance, InvalidParams, ProtocolError, StreamError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

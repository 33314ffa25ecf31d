"""Compare the compiled kernels against their pure-Python twins.

Runs each kernel on the same seeded inputs under both backends, checks the
results (counts and instrumented touch totals) agree exactly, and prints a
small table of wall-clock times.

Usage: python3 bench_backends.py [--max-exp 13] [--repeat 3]
"""

import argparse
import random
import time

from permcount import backend
from permcount.perms import random_permutation
from permcount.trees import count_corner_tree, parse_tree

TREE = parse_tree("R(NE(NE,SW),SE)")


def _time(fn, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def bench(name, fn, pi, repeat):
    rows = []
    results = {}
    for which in backend.available_backends():
        backend.set_backend(which)
        dt, result = _time(lambda: fn(pi), repeat)
        rows.append((which, dt))
        results[which] = result
    if len(set(map(str, results.values()))) != 1:
        raise SystemExit("backend mismatch in %s: %r" % (name, results))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-exp", type=int, default=13, help="largest n is 2**max_exp")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=20260815)
    args = ap.parse_args()

    if len(backend.available_backends()) < 2:
        print("only %s available; build the extension to compare" %
              (backend.available_backends(),))

    rng = random.Random(args.seed)
    jobs = [
        ("tree R(NE(NE,SW),SE)", lambda pi: count_corner_tree(TREE, pi), 0),
        ("count_3241", lambda pi: backend.count_3241(pi)[0], -2),
        ("count_3214", lambda pi: backend.count_3214(pi)[0], -2),
    ]
    print("%-22s %10s %12s %12s %9s" % ("kernel", "n", "python", "compiled", "ratio"))
    for name, fn, shift in jobs:
        for exp in range(args.max_exp - 3, args.max_exp + 1 + shift):
            n = 2 ** exp
            pi = random_permutation(n, rng)
            rows = dict(bench(name, fn, pi, args.repeat))
            py, cy = rows.get("python"), rows.get("compiled")
            ratio = "%8.1fx" % (py / cy) if py and cy else "-"
            print("%-22s %10d %11.4fs %11.4fs %9s" % (
                name, n, py or float("nan"), cy or float("nan"), ratio))
    backend.set_backend("compiled" if "compiled" in backend.available_backends() else "python")


if __name__ == "__main__":
    main()

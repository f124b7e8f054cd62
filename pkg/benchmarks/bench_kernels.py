"""Time the compiled and pure-Python kernels on the same workloads.

    python benchmarks/bench_kernels.py [--repeat 3] [--cap 7]
"""

import argparse
import time

from spacewb import kernels
from spacewb.oracle import abelian_weights, bfs_group_space, encode_presentation

GENS = ["a", "b", "c"]
RELS = [("a", "b", "a^-1", "b^-1"), ("c", "c", "c")]
WORDS = [("a", "b", "a^-1", "b^-1"), ("a", "a", "b", "a^-1", "a^-1", "b^-1"),
         ("c", "a", "c", "c", "a^-1"), ("a", "b", "c")]


def bench_search(backend, cap):
    total = 0
    for w in WORDS:
        total += bfs_group_space(GENS, RELS, w, cap, backend=backend).expanded
    return total


def bench_successors(backend, rounds=2000):
    k = kernels.module(backend)
    _, ngens, rels = encode_presentation(GENS, RELS)
    weights = abelian_weights(ngens, rels)
    state = k.canonical(((1, 2, -1), (3, -2), (1,)))
    n = 0
    for _ in range(rounds):
        n += len(k.successors(state, rels, ngens, 10, True, weights))
    return n


def timed(f, *args, repeat=3):
    best = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = f(*args)
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--cap", type=int, default=7)
    args = ap.parse_args(argv)
    backends = kernels.available()
    if len(backends) < 2:
        print("compiled kernels not built; run: python setup.py build_ext --inplace")
    rows = []
    for name, f, extra in (("group search", bench_search, (args.cap,)),
                           ("successors", bench_successors, ())):
        times = {}
        outs = set()
        for b in backends:
            dt, out = timed(f, b, *extra, repeat=args.repeat)
            times[b] = dt
            outs.add(out)
        assert len(outs) == 1, f"{name}: backends disagree"
        rows.append((name, times))
    print(f"{'workload':<14}" + "".join(f"{b:>12}" for b in backends) + "     speedup")
    for name, times in rows:
        cells = "".join(f"{times[b]:>11.3f}s" for b in backends)
        sp = times["python"] / times["compiled"] if "compiled" in times else 1.0
        print(f"{name:<14}{cells}{sp:>11.1f}x")


if __name__ == "__main__":
    main()

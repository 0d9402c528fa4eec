#!/usr/bin/env python3
"""Benchmark the minor-enumeration kernels: compiled extension vs pure twin.

Two workloads per size:
  * member:     totally positive integer matrices (full enumeration, no
                early exit; the hot path of membership scans)
  * nonmember:  random integer matrices (early exit on the first bad minor)

Usage: python benchmarks/bench_minors.py [--sizes 3 4 5] [--reps 200]
"""
import argparse
import time

from tpgl import _minors_py
from tpgl.linalg import clear_denominators
from tpgl.pinning import LOWER, UPPER, ChevalleyWord, TorusElement, standard_word, unipotent_from_word
from tpgl.sampling import SplitMix64

try:
    from tpgl import _minors_cy
except ImportError:
    _minors_cy = None


def member_matrices(rng, n, count):
    """Totally positive integer matrices from positive integer words."""
    word = standard_word(n)
    nu = len(word.letters)
    out = []
    for _ in range(count):
        upper = ChevalleyWord(word, tuple(1 + rng.next_below(5) for _ in range(nu)), UPPER)
        lower = ChevalleyWord(word, tuple(1 + rng.next_below(5) for _ in range(nu)), LOWER)
        diag = TorusElement(tuple(1 + rng.next_below(5) for _ in range(n)))
        g = unipotent_from_word(upper) * diag.matrix() * unipotent_from_word(lower)
        mat, _ = clear_denominators(g)
        out.append(mat)
    return out


def random_matrices(rng, n, count):
    return [[[rng.next_below(19) - 9 for _ in range(n)] for _ in range(n)]
            for _ in range(count)]


def time_scan(backend, mats, reps):
    best = float("inf")
    for _ in range(reps):
        start = time.perf_counter()
        for m in mats:
            backend.scan_total_positivity(m)
        best = min(best, time.perf_counter() - start)
    return best / len(mats)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 5, 6])
    parser.add_argument("--reps", type=int, default=30)
    parser.add_argument("--count", type=int, default=40, help="matrices per workload")
    args = parser.parse_args()

    if _minors_cy is None:
        print("compiled backend not built; timing the pure backend only")
    rng = SplitMix64(4242)
    header = f"{'n':>3} {'workload':>10} {'python us/op':>14}"
    if _minors_cy is not None:
        header += f" {'cython us/op':>14} {'speedup':>8}"
    print(header)
    for n in args.sizes:
        for label, mats in (("member", member_matrices(rng, n, args.count)),
                            ("nonmember", random_matrices(rng, n, args.count))):
            t_py = time_scan(_minors_py, mats, args.reps)
            line = f"{n:>3} {label:>10} {t_py * 1e6:>14.1f}"
            if _minors_cy is not None:
                t_cy = time_scan(_minors_cy, mats, args.reps)
                line += f" {t_cy * 1e6:>14.1f} {t_py / t_cy:>7.2f}x"
            print(line)


if __name__ == "__main__":
    main()

"""Compare the two enumeration kernels on a few presentations.

    python benchmarks/bench_enumerate.py [--repeat 3]

``dfs`` is the numba-compiled depth-first search, ``bfs`` the pure-numpy
breadth-first filter (what runs when KNOTAUG_DISABLE_NUMBA=1).  The first
dfs call includes JIT compilation (or a cache load); it is timed separately.
"""

import argparse
import time

from knot_aug import _kernels
from knot_aug.augvar import compile_system
from knot_aug.braid import parse_braid
from knot_aug.h0 import presentation

CASES = [
    ("trefoil B_2", "1 1 1", 2, 11),
    ("trefoil B_3", "1 2 2 2", 3, 7),
    ("T(2,5) B_3", "1 2 2 2 2 2", 3, 7),
    ("4_1 B_3", "1 -2 1 -2", 3, 11),
    ("4_1 B_4", "1 2 -3 2 -3", 4, 5),
]


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--budget", type=int, default=10**9)
    args = ap.parse_args()

    if not _kernels.numba_enabled():
        print("numba disabled; dfs falls back to interpreted python")

    warm = compile_system(presentation(parse_braid("1 1 1", 2)).generators, 3)
    t = time.perf_counter()
    _kernels.search_dfs(3, warm.lo, warm.coef, warm.texp, warm.gptr, warm.lptr, warm.pw, 3, args.budget)
    print(f"first dfs call (compile or cache load): {time.perf_counter() - t:.3f}s\n")

    print(f"{'case':<14}{'p':>4}{'points':>8}{'dfs s':>10}{'bfs s':>10}{'speedup':>9}  nodes dfs/bfs")
    for name, word, n, p in CASES:
        s = compile_system(presentation(parse_braid(word, n)).generators, p)
        call = (p, s.lo, s.coef, s.texp, s.gptr, s.lptr, s.pw, 3, args.budget)
        td, (sd, vd, _) = best_of(lambda: _kernels.search("dfs", *call), args.repeat)
        tb, (sb, vb, _) = best_of(lambda: _kernels.search("bfs", *call), args.repeat)
        assert (sd == sb).all(), name
        print(f"{name:<14}{p:>4}{len(sd):>8}{td:>10.4f}{tb:>10.4f}{tb / td:>8.1f}x  {vd}/{vb}")


if __name__ == "__main__":
    main()

"""Compiled vs numpy census kernel.

    python3 benchmarks/bench_kernel.py [--repeat 3]

Each case runs both backends on the same (q, c, r, M) and checks the counts
agree before reporting timings.
"""
import argparse
import time

from cubicorders import kernel
from cubicorders.cubic import type_table

CASES = [
    # q, c, r, M, classify
    (2, 5, 2, 5, True),
    (2, 5, 4, 9, True),
    (3, 7, 2, 5, True),
    (3, 5, 3, 7, True),
    (5, 7, 1, 3, True),
    (5, 7, 2, 5, True),
    (7, 5, 2, 5, True),
    (5, 7, 3, 6, False),
    (7, 13, 3, 6, False),
]


def best_of(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if kernel._ckernel is None:
        raise SystemExit("compiled kernel not built; run pip install -e . --no-build-isolation")
    print(f"{'q':>3} {'c':>4} {'r':>2} {'M':>2} {'mode':>6} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for q, c, r, M, classify in CASES:
        table = type_table(q) if classify else b""
        t_c, res_c = best_of(lambda: kernel.census(q, c, r, M, table, backend="cython"), args.repeat)
        t_p, res_p = best_of(lambda: kernel.census(q, c, r, M, table, backend="python"), args.repeat)
        if res_c != res_p:
            raise SystemExit(f"backends disagree on {(q, c, r, M)}: {res_c} vs {res_p}")
        mode = "types" if classify else "count"
        print(f"{q:>3} {c:>4} {r:>2} {M:>2} {mode:>6} {t_c:>10.4f} {t_p:>10.4f} {t_p / t_c:>7.1f}x")


if __name__ == "__main__":
    main()

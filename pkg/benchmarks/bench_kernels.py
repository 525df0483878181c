"""Compare the compiled closure kernel against the numpy fallback.

Run:  python benchmarks/bench_kernels.py
Times BFS closure and action-table construction on a few representative
groups and verifies both backends return identical arrays.
"""

import time

import numpy as np

from reidemeister import mat_inverse, standard_generators
from reidemeister.kernels import py_fallback

try:
    from reidemeister.kernels import _closure
except ImportError:
    _closure = None

CASES = [
    ("Sp(2, Z_13)", 1, 13),
    ("Sp(2, Z_25)", 1, 25),
    ("Sp(4, Z_3)", 2, 3),
]


def augmented(n, m):
    gens = [g.entries for g in standard_generators(n, m)]
    out = list(gens)
    for g in standard_generators(n, m):
        inv = mat_inverse(g).entries
        if not any(np.array_equal(inv, h) for h in out):
            out.append(inv)
    return np.ascontiguousarray(np.stack(out))


def bench(fn, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    if _closure is None:
        print("compiled kernel not available; timing the fallback only")
    header = f"{'case':<14} {'order':>7} {'python':>10} {'cython':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, n, m in CASES:
        gens = augmented(n, m)
        t_py, (elems, par, pg) = bench(lambda: py_fallback.closure(gens, m, 10**7))
        row = f"{name:<14} {len(elems):>7} {t_py:>9.3f}s"
        if _closure is not None:
            t_cy, (e2, p2, g2) = bench(lambda: _closure.closure(gens, m, 10**7))
            assert np.array_equal(elems, e2)
            assert np.array_equal(par, p2)
            assert np.array_equal(pg, g2)
            row += f" {t_cy:>9.3f}s {t_py / t_cy:>7.1f}x"
        print(row)

        index = {np.ascontiguousarray(elems[i]).tobytes(): i
                 for i in range(len(elems))}
        left, right = elems[1], elems[2]
        t_py, t1 = bench(lambda: py_fallback.action_table(elems, left, right, m, index))
        row = f"{name + ' act':<14} {len(elems):>7} {t_py:>9.3f}s"
        if _closure is not None:
            t_cy, t2 = bench(lambda: _closure.action_table(elems, left, right, m, index))
            assert np.array_equal(t1, t2)
            row += f" {t_cy:>9.3f}s {t_py / t_cy:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()

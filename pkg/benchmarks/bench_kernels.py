#!/usr/bin/env python3
"""Benchmark the numba kernels against their pure-numpy fallbacks.

Run a couple of times: the first numba call per kernel pays JIT compilation
(cached afterwards in __pycache__).  Results of the two backends are checked
for exact equality before timing.  Set GROUPDET_NO_NUMBA=1 to see the
package-wide fallback selection; this script imports both implementations
directly, so it works either way as long as numba is installed.
"""

import time

import numpy as np

from groupdet import kernels
from groupdet.chartab import character_table
from groupdet.groups import conjugacy_classes, cyclic, heisenberg, symmetric
from groupdet.kchar import _coord_context


def timeit(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench(name, fn_nb, fn_np, *args):
    t_nb, r_nb = timeit(fn_nb, *args)
    t_np, r_np = timeit(fn_np, *args)
    if isinstance(r_nb, np.ndarray):
        assert np.array_equal(r_nb, r_np), f"{name}: backend results differ"
    else:
        assert r_nb == r_np, f"{name}: backend results differ"
    speedup = t_np / t_nb if t_nb > 0 else float("inf")
    print(f"{name:<38} numba {t_nb * 1e3:9.3f} ms   numpy {t_np * 1e3:9.3f} ms"
          f"   speedup {speedup:6.1f}x")


def main():
    if not kernels.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return
    print(f"active package backend: {kernels.backend()}")

    c64 = cyclic(64)
    table64 = np.ascontiguousarray(c64.table)
    print("\nwarming up JIT ...")
    kernels.assoc_violation_nb(table64)

    s4 = symmetric(4)
    heis = heisenberg(3)
    groups = {"S4": s4, "Heis3": heis}

    print()
    bench("associativity scan, order 64", kernels.assoc_violation_nb,
          kernels.assoc_violation_np, table64)

    for name, G in groups.items():
        table = np.ascontiguousarray(G.table)
        inv = np.asarray(G.inverse_map())
        cc = conjugacy_classes(G)
        class_of = np.array(cc.class_of, dtype=np.int64)
        reps = np.array(cc.representatives, dtype=np.int64)
        kernels.class_constants_nb(table, inv, class_of, reps)  # JIT warmup
        bench(f"class constants, {name}", kernels.class_constants_nb,
              kernels.class_constants_np, table, inv, class_of, reps)

    for name, G in groups.items():
        T = character_table(G)
        ctx = _coord_context(T)
        j = int(np.argmax(T.degrees))
        V = ctx.values[j]
        kernels.fill_k3_nb(ctx.table, V, ctx.M3)  # JIT warmup
        bench(f"3-character table fill, {name}", kernels.fill_k3_nb,
              kernels.fill_k3_np, ctx.table, V, ctx.M3)
        bench(f"2-character table fill, {name}", kernels.fill_k2_nb,
              kernels.fill_k2_np, ctx.table, V, ctx.M3)


if __name__ == "__main__":
    main()

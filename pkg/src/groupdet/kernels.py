"""Hot integer kernels: numba-jitted loops with a pure-numpy fallback.

Every kernel is exact integer arithmetic on int64 arrays; callers are
responsible for certifying that intermediate magnitudes fit (see
`groupdet.kchar._certify_bound`).  The active backend is numba when it
imports cleanly, unless the environment variable GROUPDET_NO_NUMBA=1 forces
the numpy path.  Both backends compute bit-identical results; the benchmark
script under benchmarks/ compares them.

Cyclotomic coordinate conventions used by the k-character kernels:
  * V is an (n, D) int64 matrix, row g = coordinates of a value attached to
    element g in the power basis of Q(zeta_e), D = phi(e).
  * M3 is the (D, D, D) folding tensor with M3[a, b] = coordinates of
    x^(a+b) mod Phi_e, so the product of coordinate vectors u, v is
    sum_ab u[a] v[b] M3[a, b].
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("GROUPDET_NO_NUMBA", "") != "1"


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# numpy implementations


def assoc_violation_np(table: np.ndarray):
    """First (i, j, k) with (ij)k != i(jk), or None.

    Vectorized over (j, k) per row i to keep memory at O(n^2).
    """
    n = table.shape[0]
    for i in range(n):
        lhs = table[table[i], :]
        rhs = table[i][table]
        if not np.array_equal(lhs, rhs):
            j, k = np.argwhere(lhs != rhs)[0]
            return int(i), int(j), int(k)
    return None


def class_of_np(table: np.ndarray, inv: np.ndarray) -> np.ndarray:
    """Conjugacy class index per element; classes numbered by minimal member."""
    n = table.shape[0]
    class_of = np.full(n, -1, dtype=np.int64)
    next_id = 0
    hs = np.arange(n)
    for g in range(n):
        if class_of[g] >= 0:
            continue
        orbit = np.unique(table[table[hs, g], inv])
        class_of[orbit] = next_id
        next_id += 1
    return class_of


def class_constants_np(
    table: np.ndarray, inv: np.ndarray, class_of: np.ndarray, reps: np.ndarray
) -> np.ndarray:
    """a[i][j][k] = number of (x in C_i, y in C_j) with x*y = rep_k."""
    r = len(reps)
    out = np.zeros((r, r, r), dtype=np.int64)
    for k, z in enumerate(reps):
        ys = table[inv, z]
        np.add.at(out[:, :, k], (class_of, class_of[ys]), 1)
    return out


def mul_coords_np(A: np.ndarray, B: np.ndarray, M3: np.ndarray) -> np.ndarray:
    return np.einsum("xa,xb,abd->xd", A, B, M3)


def fill_k1_np(table: np.ndarray, V: np.ndarray, M3: np.ndarray) -> np.ndarray:
    return V.copy()


def fill_k2_np(table: np.ndarray, V: np.ndarray, M3: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    g, h = [a.ravel() for a in np.meshgrid(np.arange(n), np.arange(n), indexing="ij")]
    return mul_coords_np(V[g], V[h], M3) - V[table[g, h]]


def fill_k3_np(table: np.ndarray, V: np.ndarray, M3: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    idx = np.arange(n)
    g, h, m = [a.ravel() for a in np.meshgrid(idx, idx, idx, indexing="ij")]
    gh = table[g, h]
    hm = table[h, m]
    gm = table[g, m]
    ghm = table[gh, m]
    gmh = table[gm, h]
    out = mul_coords_np(mul_coords_np(V[g], V[h], M3), V[m], M3)
    out -= mul_coords_np(V[g], V[hm], M3)
    out -= mul_coords_np(V[h], V[gm], M3)
    out -= mul_coords_np(V[m], V[gh], M3)
    out += V[ghm]
    out += V[gmh]
    return out


def pair_fold_np(U: np.ndarray, W: np.ndarray, M3: np.ndarray) -> np.ndarray:
    """Coordinates of sum_x product(U[x], W[x])."""
    C = U.T @ W
    return np.einsum("ab,abd->d", C, M3)


# ---------------------------------------------------------------------------
# numba implementations

if HAVE_NUMBA:

    @njit(cache=True)
    def assoc_violation_nb_impl(table):  # pragma: no cover - thin jit wrapper
        n = table.shape[0]
        for i in range(n):
            for j in range(n):
                ij = table[i, j]
                for k in range(n):
                    if table[ij, k] != table[i, table[j, k]]:
                        return i, j, k
        return -1, -1, -1

    def assoc_violation_nb(table):
        i, j, k = assoc_violation_nb_impl(np.ascontiguousarray(table))
        return None if i < 0 else (int(i), int(j), int(k))

    @njit(cache=True)
    def class_of_nb(table, inv):  # pragma: no cover
        n = table.shape[0]
        class_of = np.full(n, -1, dtype=np.int64)
        next_id = 0
        for g in range(n):
            if class_of[g] >= 0:
                continue
            for h in range(n):
                conj = table[table[h, g], inv[h]]
                class_of[conj] = next_id
            next_id += 1
        return class_of

    @njit(cache=True)
    def class_constants_nb(table, inv, class_of, reps):  # pragma: no cover
        r = reps.shape[0]
        n = table.shape[0]
        out = np.zeros((r, r, r), dtype=np.int64)
        for k in range(r):
            z = reps[k]
            for x in range(n):
                y = table[inv[x], z]
                out[class_of[x], class_of[y], k] += 1
        return out

    @njit(cache=True, inline="always")
    def _mul_into(u, v, M3, out):  # pragma: no cover
        D = out.shape[0]
        for d in range(D):
            out[d] = 0
        for a in range(D):
            ua = u[a]
            if ua == 0:
                continue
            for b in range(D):
                vb = v[b]
                if vb == 0:
                    continue
                c = ua * vb
                for d in range(D):
                    out[d] += c * M3[a, b, d]

    @njit(cache=True)
    def fill_k2_nb(table, V, M3):  # pragma: no cover
        n = table.shape[0]
        D = V.shape[1]
        out = np.empty((n * n, D), dtype=np.int64)
        tmp = np.empty(D, dtype=np.int64)
        for g in range(n):
            for h in range(n):
                row = g * n + h
                _mul_into(V[g], V[h], M3, tmp)
                gh = table[g, h]
                for d in range(D):
                    out[row, d] = tmp[d] - V[gh, d]
        return out

    @njit(cache=True)
    def fill_k3_nb(table, V, M3):  # pragma: no cover
        n = table.shape[0]
        D = V.shape[1]
        out = np.empty((n * n * n, D), dtype=np.int64)
        pgh = np.empty(D, dtype=np.int64)
        t1 = np.empty(D, dtype=np.int64)
        t2 = np.empty(D, dtype=np.int64)
        t3 = np.empty(D, dtype=np.int64)
        t4 = np.empty(D, dtype=np.int64)
        for g in range(n):
            for h in range(n):
                gh = table[g, h]
                _mul_into(V[g], V[h], M3, pgh)
                base = (g * n + h) * n
                for m in range(n):
                    hm = table[h, m]
                    gm = table[g, m]
                    ghm = table[gh, m]
                    gmh = table[gm, h]
                    _mul_into(pgh, V[m], M3, t1)
                    _mul_into(V[g], V[hm], M3, t2)
                    _mul_into(V[h], V[gm], M3, t3)
                    _mul_into(V[m], V[gh], M3, t4)
                    row = base + m
                    for d in range(D):
                        out[row, d] = (
                            t1[d] - t2[d] - t3[d] - t4[d] + V[ghm, d] + V[gmh, d]
                        )
        return out

    def fill_k1_nb(table, V, M3):
        return V.copy()


# ---------------------------------------------------------------------------
# dispatch

if USE_NUMBA:
    assoc_violation = assoc_violation_nb
    class_of_kernel = class_of_nb
    class_constants_kernel = class_constants_nb
    fill_k1 = fill_k1_nb
    fill_k2 = fill_k2_nb
    fill_k3 = fill_k3_nb
else:
    assoc_violation = assoc_violation_np
    class_of_kernel = class_of_np
    class_constants_kernel = class_constants_np
    fill_k1 = fill_k1_np
    fill_k2 = fill_k2_np
    fill_k3 = fill_k3_np

pair_fold = pair_fold_np

FILLERS = {1: lambda t, V, M3: fill_k1(t, V, M3), 2: fill_k2, 3: fill_k3}

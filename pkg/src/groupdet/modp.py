"""Linear algebra over F_p on int64 numpy arrays.

p is always a small Dixon prime (p = 1 mod exponent, p > 2*sqrt(|G|)), so
entries fit comfortably in int64 and brute-force scans over F_p are cheap.
"""

from __future__ import annotations

import numpy as np


def inv_mod(a: int, p: int) -> int:
    return pow(int(a) % p, p - 2, p)


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    return (A @ B) % p


def rref_mod(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r] = (M[r] * inv_mod(M[r, c], p)) % p
        for i in range(rows):
            if i != r and M[i, c]:
                M[i] = (M[i] - M[i, c] * M[r]) % p
        pivots.append(c)
        r += 1
    return M[: len(pivots)], pivots


def nullspace_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Row basis of {v : A v = 0 (mod p)}."""
    R, pivots = rref_mod(A, p)
    cols = A.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-R[i, fc]) % p
    return basis


def charpoly_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Coefficients of det(xI - A) mod p, constant term first.

    Berkowitz's division-free algorithm; O(r^4) but r is tiny here.
    """
    n = A.shape[0]
    if n == 0:
        return np.array([1], dtype=np.int64)
    M = np.array(A, dtype=np.int64) % p
    # q holds the charpoly of the leading principal k x k block, leading
    # coefficient first; the update is a lower-triangular Toeplitz product.
    q = [1, (-int(M[0, 0])) % p]
    for k in range(1, n):
        row = M[k, :k]
        col = M[:k, k]
        sub = M[:k, :k]
        t = [1, (-int(M[k, k])) % p]
        v = col.copy()
        for _ in range(k):
            t.append((-int(row @ v)) % p)
            v = (sub @ v) % p
        new = [0] * (k + 2)
        for i in range(k + 2):
            acc = 0
            for j in range(min(i, k) + 1):
                acc += t[i - j] * q[j]
            new[i] = acc % p
        q = new
    return np.array(q[::-1], dtype=np.int64)


def poly_roots_mod(coeffs: np.ndarray, p: int) -> list[int]:
    """All roots in F_p by vectorized Horner evaluation over the whole field."""
    xs = np.arange(p, dtype=np.int64)
    vals = np.zeros(p, dtype=np.int64)
    for c in coeffs[::-1]:
        vals = (vals * xs + int(c)) % p
    return [int(x) for x in np.flatnonzero(vals == 0)]


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a modulo the odd prime p, or None; p is small."""
    a %= p
    if a == 0:
        return 0
    for t in range(1, p // 2 + 1):
        if t * t % p == a:
            return t
    return None


def primitive_root(p: int) -> int:
    """Smallest generator of F_p^*."""
    if p == 2:
        return 1
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise ValueError(f"no primitive root found for {p}")


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out

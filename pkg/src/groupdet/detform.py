"""Group matrix, exact group determinant, its irreducible factors, and the
norm-form coefficients s1, s2, s3.

The group determinant of an assignment a is det of the n x n matrix with
(i, j) entry a(g_i g_j^-1), evaluated exactly by fraction-free Bareiss
elimination after clearing denominators.  The factor attached to an
irreducible character chi of degree f is

    phi(a) = (1/f!) * sum over f-tuples of chi^(f)(t_1..t_f) a(t_1)..a(t_f),

computed here through the equivalent power-sum form (U1 = T1,
U2 = T1^2 - T2, U3 = T1^3 - 3 T1 T2 + 2 T3 with T_k the trace sum of the
k-fold convolution of a), which is O(n^2) per point; the test suite pins the
two forms against each other on small groups.  Degrees above 3 are out of
the supported range.

Polynomial identities (determinant = product of factors, s_k against the
regular k-character sums) are never expanded symbolically; they are checked
at seeded exact rational points, which keeps everything exact and bounded.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .chartab import CharacterTable
from .cyclotomic import Cyclotomic
from .groups import FiniteGroup
from .kchar import k_character, regular_k_character_int


@dataclass(frozen=True)
class GroupMatrix:
    group: FiniteGroup
    entries: np.ndarray  # (n, n) element ids, entry (i, j) = g_i * g_j^-1


def group_matrix(G: FiniteGroup) -> GroupMatrix:
    inv = np.asarray(G.inverse_map())
    entries = G.table[:, inv]
    n = G.order
    idx = np.arange(n)
    assert np.array_equal(np.sort(entries, axis=1), np.tile(idx, (n, 1)))
    assert np.array_equal(np.sort(entries, axis=0), np.tile(idx[:, None], (1, n)))
    assert np.all(np.diagonal(entries) == 0)
    return GroupMatrix(group=G, entries=entries)


def random_assignment(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    """A seeded exact rational point with numerators in +-10^4."""
    return tuple(
        Fraction(rng.randint(-(10 ** 4), 10 ** 4), rng.randint(1, 9))
        for _ in range(n)
    )


def seeded_assignments(n: int, count: int, seed: int) -> list[tuple[Fraction, ...]]:
    rng = random.Random(seed)
    return [random_assignment(rng, n) for _ in range(count)]


def determinant_eval(M: GroupMatrix, a) -> Fraction:
    """Exact determinant of the numeric group matrix at the assignment."""
    n = M.group.order
    a = [Fraction(x) for x in a]
    denom = lcm(*(x.denominator for x in a)) if n else 1
    scaled = [int(x * denom) for x in a]
    matrix = [[scaled[M.entries[i, j]] for j in range(n)] for i in range(n)]
    return Fraction(_bareiss(matrix), denom ** n)


def _bareiss(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def convolve_assignments(G: FiniteGroup, a, b) -> tuple[Fraction, ...]:
    """c(g) = sum_h a(h) * b(h^-1 g); the multiplicativity witness point."""
    inv = G.inverse_map()
    n = G.order
    out = []
    for g in range(n):
        total = Fraction(0)
        for h in range(n):
            total += a[h] * b[G.mul(int(inv[h]), g)]
        out.append(total)
    return tuple(out)


def frobenius_factor_eval(T: CharacterTable, j: int, a) -> Cyclotomic:
    """The determinant factor attached to chi_j, evaluated at the assignment.

    Equals (1/f!) * sum over f-tuples of chi_j^(f) weighted by the
    assignment (f = degree); evaluated in the power-sum form.
    """
    f = T.degrees[j]
    if f > 3:
        raise ValueError(f"factor evaluation supports degree <= 3, got {f}")
    G = T.group
    n = G.order
    a = [Fraction(x) for x in a]
    chi = [T.value_at(j, g) for g in range(n)]
    conv = list(a)
    traces = []
    for _ in range(f):
        total = Cyclotomic.zero(T.conductor)
        for z in range(n):
            if conv[z]:
                total = total + chi[z] * conv[z]
        traces.append(total)
        if len(traces) < f:
            conv = list(convolve_assignments(G, a, conv))
    if f == 1:
        return traces[0]
    if f == 2:
        u = traces[0] * traces[0] - traces[1]
        return u / 2
    t1, t2, t3 = traces
    u = t1 * t1 * t1 - 3 * (t1 * t2) + 2 * t3
    return u / 6


def frobenius_factor_bruteforce(T: CharacterTable, j: int, a) -> Cyclotomic:
    """Defining f-tuple sum, term by term; the oracle for the power-sum form."""
    f = T.degrees[j]
    if f > 3:
        raise ValueError(f"factor evaluation supports degree <= 3, got {f}")
    n = T.group.order
    a = [Fraction(x) for x in a]
    total = Cyclotomic.zero(T.conductor)
    for tup in np.ndindex(*([n] * f)):
        weight = Fraction(1)
        for g in tup:
            weight *= a[g]
        if weight:
            total = total + k_character(T, j, f, tup) * weight
    factorial = 1
    for i in range(2, f + 1):
        factorial *= i
    return total / factorial


def factorization_check(G: FiniteGroup, T: CharacterTable, a) -> dict:
    """determinant(a) versus the product of factors raised to their degrees."""
    if max(T.degrees) > 3:
        raise ValueError("factorization check needs all degrees <= 3")
    det = determinant_eval(group_matrix(G), a)
    product = Cyclotomic.one(T.conductor)
    for j in range(T.count):
        product = product * frobenius_factor_eval(T, j, a) ** T.degrees[j]
    match = product == det
    return {
        "point": [[x.numerator, x.denominator] for x in map(Fraction, a)],
        "det": [det.numerator, det.denominator],
        "product": product.to_json(),
        "match": bool(match),
    }


@dataclass(frozen=True)
class NormCoefficients:
    s1: Fraction
    s2: Fraction
    s3: Fraction


def norm_coefficients(G: FiniteGroup, a) -> NormCoefficients:
    """First three characteristic coefficients of the numeric group matrix,
    from power traces via Newton's identities."""
    n = G.order
    a = [Fraction(x) for x in a]
    denom = lcm(*(x.denominator for x in a)) if n else 1
    scaled = [int(x * denom) for x in a]
    entries = group_matrix(G).entries
    A = [[scaled[entries[i, j]] for j in range(n)] for i in range(n)]
    t1_int = sum(A[i][i] for i in range(n))
    t2_int = sum(A[i][j] * A[j][i] for i in range(n) for j in range(n))
    t3_int = 0
    for i in range(n):
        Ai = A[i]
        for j in range(n):
            Aj = A[j]
            aij = Ai[j]
            if aij:
                t3_int += aij * sum(Aj[k] * A[k][i] for k in range(n))
    t1 = Fraction(t1_int, denom)
    t2 = Fraction(t2_int, denom ** 2)
    t3 = Fraction(t3_int, denom ** 3)
    return NormCoefficients(
        s1=t1,
        s2=(t1 * t1 - t2) / 2,
        s3=(t1 ** 3 - 3 * t1 * t2 + 2 * t3) / 6,
    )


# Constants relating s2, s3 to the regular k-character sums.  Pinned by the
# brute-force oracle on C2 and C3 (tests/test_detform.py), then frozen here.
REGULAR_S2_CONSTANT = Fraction(1, 2)
REGULAR_S3_CONSTANT = Fraction(1, 6)


def regular_sum(G: FiniteGroup, k: int, a) -> Fraction:
    """sum over k-tuples of chi_reg^(k)(tuple) * a(t_1) ... a(t_k)."""
    n = G.order
    a = [Fraction(x) for x in a]
    total = Fraction(0)
    if k == 2:
        for g in range(n):
            for h in range(n):
                v = regular_k_character_int(G, 2, (g, h))
                if v:
                    total += v * a[g] * a[h]
        return total
    if k == 3:
        inv = G.inverse_map()
        for h in range(n):
            for m in range(n):
                weight = a[h] * a[m]
                if not weight:
                    continue
                # chi_reg^(3)(g, h, m) is nonzero only at these g.
                support = {0, int(inv[G.mul(h, m)]), int(inv[G.mul(m, h)])}
                for g in support:
                    v = regular_k_character_int(G, 3, (g, h, m))
                    if v:
                        total += v * a[g] * weight
        return total
    raise ValueError(f"regular sums support k in {{2, 3}}, got {k}")


def regular_identity_check(G: FiniteGroup, a) -> dict:
    """s2, s3 from matrix traces versus the regular k-character tuple sums."""
    coeffs = norm_coefficients(G, a)
    u2 = regular_sum(G, 2, a)
    u3 = regular_sum(G, 3, a)
    lhs2, rhs2 = coeffs.s2, REGULAR_S2_CONSTANT * u2
    lhs3, rhs3 = coeffs.s3, REGULAR_S3_CONSTANT * u3
    return {
        "point": [[x.numerator, x.denominator] for x in map(Fraction, a)],
        "s2": [lhs2.numerator, lhs2.denominator],
        "s2_from_regular": [rhs2.numerator, rhs2.denominator],
        "s3": [lhs3.numerator, lhs3.denominator],
        "s3_from_regular": [rhs3.numerator, rhs3.denominator],
        "match": lhs2 == rhs2 and lhs3 == rhs3,
    }

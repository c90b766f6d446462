import random
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from groupdet.chartab import character_table
from groupdet.cyclotomic import Cyclotomic
from groupdet.detform import (
    convolve_assignments,
    determinant_eval,
    factorization_check,
    frobenius_factor_bruteforce,
    frobenius_factor_eval,
    group_matrix,
    norm_coefficients,
    random_assignment,
    regular_identity_check,
    regular_sum,
    seeded_assignments,
)
from groupdet.groups import FiniteGroup, cyclic, dihedral, quaternion, symmetric
from groupdet import catalog


def test_group_matrix_c2():
    M = group_matrix(cyclic(2))
    assert M.entries.tolist() == [[0, 1], [1, 0]]


def test_group_matrix_diagonal_and_row0(suite):
    for G in suite:
        M = group_matrix(G)
        assert np.all(np.diagonal(M.entries) == 0)
        inv = G.inverse_map()
        assert M.entries[0].tolist() == [int(inv[j]) for j in range(G.order)]


def test_determinant_c2_by_hand():
    c2 = cyclic(2)
    M = group_matrix(c2)
    assert determinant_eval(M, (Fraction(1), Fraction(0))) == 1
    # det [[2,1],[1,2]] = 3 = x_e^2 - x_a^2 at (2, 1).
    assert determinant_eval(M, (Fraction(2), Fraction(1))) == 3


def test_determinant_identity_assignment(suite):
    for G in suite:
        point = tuple(
            Fraction(1) if g == 0 else Fraction(0) for g in range(G.order)
        )
        assert determinant_eval(group_matrix(G), point) == 1


def test_determinant_relabeling_invariance():
    rng = random.Random(11)
    for G in (symmetric(3), dihedral(8)):
        n = G.order
        a = random_assignment(rng, n)
        base = determinant_eval(group_matrix(G), a)
        for _ in range(4):
            perm = [0] + rng.sample(range(1, n), n - 1)
            inv_perm = [0] * n
            for i, p in enumerate(perm):
                inv_perm[p] = i
            table = [
                [perm[G.mul(inv_perm[i], inv_perm[j])] for j in range(n)]
                for i in range(n)
            ]
            relabeled = FiniteGroup(table, name="relabel", validate=False)
            b = tuple(a[inv_perm[g]] for g in range(n))
            assert determinant_eval(group_matrix(relabeled), b) == base


def test_c2_factors_by_hand():
    c2 = cyclic(2)
    T = character_table(c2)
    rng = random.Random(0)
    for _ in range(10):
        a = random_assignment(rng, 2)
        values = sorted(
            (frobenius_factor_eval(T, j, a).as_fraction() for j in range(2)),
        )
        expected = sorted((a[0] + a[1], a[0] - a[1]))
        assert values == expected
        det = determinant_eval(group_matrix(c2), a)
        assert (a[0] + a[1]) * (a[0] - a[1]) == det


def test_factor_power_sum_matches_bruteforce():
    rng = random.Random(5)
    for G in (cyclic(3), symmetric(3), quaternion(8)):
        T = character_table(G)
        for _ in range(3):
            a = random_assignment(rng, G.order)
            for j in range(T.count):
                assert frobenius_factor_eval(T, j, a) == \
                    frobenius_factor_bruteforce(T, j, a)


def test_factorization_check_s3_twenty_points():
    s3 = symmetric(3)
    T = character_table(s3)
    for a in seeded_assignments(6, 20, seed=0):
        report = factorization_check(s3, T, a)
        assert report["match"]


def test_factorization_rejects_large_degrees():
    # No suite group violates the bound, so force a fake degree.
    T = character_table(symmetric(3))
    with pytest.raises(ValueError):
        frobenius_factor_eval(
            type(T)(
                group=T.group,
                classes=T.classes,
                rows=T.rows,
                degrees=(1, 1, 4),
                conductor=T.conductor,
            ),
            2,
            [Fraction(1)] * 6,
        )


def test_factor_multiplicativity():
    rng = random.Random(9)
    for G in (symmetric(3), dihedral(8)):
        T = character_table(G)
        n = G.order
        a = random_assignment(rng, n)
        b = random_assignment(rng, n)
        c = convolve_assignments(G, a, b)
        M = group_matrix(G)
        assert determinant_eval(M, c) == determinant_eval(M, a) * determinant_eval(M, b)
        for j in range(T.count):
            assert frobenius_factor_eval(T, j, c) == \
                frobenius_factor_eval(T, j, a) * frobenius_factor_eval(T, j, b)


def test_norm_coefficients_examples():
    s3 = symmetric(3)
    n = 6
    identity_point = tuple(Fraction(int(g == 0)) for g in range(n))
    coeffs = norm_coefficients(s3, identity_point)
    assert coeffs.s1 == n
    assert coeffs.s2 == comb(n, 2)
    assert coeffs.s3 == comb(n, 3)
    zero = norm_coefficients(s3, tuple(Fraction(0) for _ in range(n)))
    assert (zero.s1, zero.s2, zero.s3) == (0, 0, 0)
    c2 = cyclic(2)
    coeffs = norm_coefficients(c2, (Fraction(0), Fraction(1)))
    assert (coeffs.s1, coeffs.s2, coeffs.s3) == (0, -1, 0)


def test_constant_pinning_oracle():
    """The mandated pre-freeze oracle: on C2 and C3, the ratio between the
    trace-side s_k and the raw regular k-character sums is exactly 1/k!."""
    rng = random.Random(42)
    for G in (cyclic(2), cyclic(3)):
        n = G.order
        for _ in range(8):
            a = random_assignment(rng, n)
            coeffs = norm_coefficients(G, a)
            u2 = regular_sum(G, 2, a)
            u3 = regular_sum(G, 3, a)
            if u2:
                assert coeffs.s2 / u2 == Fraction(1, 2)
            else:
                assert coeffs.s2 == 0
            if u3:
                assert coeffs.s3 / u3 == Fraction(1, 6)
            else:
                assert coeffs.s3 == 0


def test_regular_sum_matches_dense_loop():
    rng = random.Random(17)
    for G in (symmetric(3), quaternion(8)):
        from groupdet.kchar import regular_k_character_int

        n = G.order
        a = random_assignment(rng, n)
        dense = Fraction(0)
        for g in range(n):
            for h in range(n):
                for m in range(n):
                    v = regular_k_character_int(G, 3, (g, h, m))
                    if v:
                        dense += v * a[g] * a[h] * a[m]
        assert regular_sum(G, 3, a) == dense


def test_regular_identity_check_c2_and_s3():
    rng = random.Random(23)
    for G in (cyclic(2), cyclic(3), symmetric(3)):
        for _ in range(10):
            a = random_assignment(rng, G.order)
            report = regular_identity_check(G, a)
            assert report["match"]


def test_all_zero_point():
    s3 = symmetric(3)
    zero = tuple(Fraction(0) for _ in range(6))
    report = regular_identity_check(s3, zero)
    assert report["match"]
    assert report["s2"] == [0, 1]

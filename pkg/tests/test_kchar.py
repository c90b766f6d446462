import itertools
import random

import numpy as np
import pytest

from groupdet import catalog
from groupdet.chartab import character_table
from groupdet.cyclotomic import Cyclotomic
from groupdet.groups import (
    conjugacy_classes,
    cyclic,
    dihedral,
    quaternion,
    symmetric,
)
from groupdet.kchar import (
    EquivalenceVerdict,
    KCharTable,
    build_k_char_table,
    conjugation_orbit_representative,
    equivalence_search,
    k_character,
    k_character_general,
    level_coords,
    orthogonality_sum,
    regular_k_character,
    regular_k_character_int,
)


def test_trivial_character_two_character_vanishes():
    T = character_table(symmetric(3))
    for g in range(6):
        for h in range(6):
            assert k_character(T, 0, 2, (g, h)).is_zero()


def test_s3_degree_two_values():
    s3 = symmetric(3)
    T = character_table(s3)
    j = T.degrees.index(2)
    cc = conjugacy_classes(s3)
    three_cycle = cc.classes[2][0]
    # chi(g)^2 - chi(g^2) = (-1)^2 - (-1) = 2 for a 3-cycle g.
    assert k_character(T, j, 2, (three_cycle, three_cycle)) == 2
    # k above the degree: the 3-character of a degree-2 character vanishes.
    for tup in itertools.product(range(6), repeat=3):
        assert k_character(T, j, 3, tup).is_zero()


def test_vanishing_above_degree(suite_tables):
    for T in suite_tables.values():
        n = T.group.order
        if n > 12:
            continue
        for j in range(T.count):
            d = T.degrees[j]
            if d == 1:
                U, _ = level_coords(T, j, 2)
                assert not U.any()
            if d <= 2:
                U, _ = level_coords(T, j, 3)
                assert not U.any()


def test_recursion_matches_explicit_small(suite_tables):
    for name in ("C4", "S3", "D4", "Q8"):
        T = suite_tables[name]
        n = T.group.order
        for j in range(T.count):
            for pair in itertools.product(range(n), repeat=2):
                assert k_character_general(T, j, pair) == k_character(T, j, 2, pair)
            for tri in itertools.product(range(n), repeat=3):
                assert k_character_general(T, j, tri) == k_character(T, j, 3, tri)


def test_s4_degree3_vanishes_at_k4():
    T = character_table(symmetric(4))
    j = T.degrees.index(3)
    rng = random.Random(0)
    for _ in range(25):
        tup = tuple(rng.randrange(24) for _ in range(4))
        assert k_character_general(T, j, tup).is_zero()
    # k far above the degree returns zero without recursion.
    assert k_character_general(T, 0, (1, 2, 3)).is_zero()


def test_regular_closed_forms():
    s3 = symmetric(3)
    n = 6
    inv = s3.inverse_map()
    for g in range(1, n):
        assert regular_k_character_int(s3, 2, (g, int(inv[g]))) == -n
    assert regular_k_character_int(s3, 3, (0, 0, 0)) == n ** 3 - 3 * n ** 2 + 2 * n
    # Two inverse 3-cycles and the identity: both bracketings hit e.
    cc = conjugacy_classes(s3)
    a = cc.classes[2][0]
    b = int(inv[a])
    assert regular_k_character_int(s3, 3, (a, b, 0)) == -24
    assert regular_k_character(s3, 3, (a, b, 0)) == -24


def test_regular_equals_degree_weighted_formula(suite_tables):
    # chi_reg = sum_j deg_j * chi_j pointwise, and the same combination fed
    # through the k-character formulas reproduces the closed forms.
    for name in ("C6", "S3", "D4", "Q8", "A4"):
        T = suite_tables[name]
        G = T.group
        n = G.order

        def reg_value(g):
            total = Cyclotomic.zero(T.conductor)
            for j in range(T.count):
                total = total + T.degrees[j] * T.value_at(j, g)
            return total

        for g in range(n):
            assert reg_value(g) == (n if g == 0 else 0)
        rng = random.Random(1)
        from groupdet.kchar import _explicit_kchar

        for _ in range(30):
            pair = tuple(rng.randrange(n) for _ in range(2))
            tri = tuple(rng.randrange(n) for _ in range(3))
            assert _explicit_kchar(reg_value, G.mul, 2, pair) == \
                regular_k_character_int(G, 2, pair)
            assert _explicit_kchar(reg_value, G.mul, 3, tri) == \
                regular_k_character_int(G, 3, tri)


def test_symmetry_of_k_characters(suite_tables):
    for name in ("S3", "D4"):
        T = suite_tables[name]
        n = T.group.order
        for j in range(T.count):
            U2, _ = level_coords(T, j, 2)
            A = U2.reshape(n, n, -1)
            assert np.array_equal(A, A.transpose(1, 0, 2))
            U3, _ = level_coords(T, j, 3)
            B = U3.reshape(n, n, n, -1)
            for perm in itertools.permutations(range(3)):
                assert np.array_equal(B, B.transpose(*perm, 3))


def test_conjugation_invariance_exhaustive(suite_tables):
    # All characters, all triples, all conjugators, every group of order <= 12,
    # via the coordinate tables (then a spot check through the scalar path).
    for T in suite_tables.values():
        G = T.group
        n = G.order
        if n > 12:
            continue
        inv = G.inverse_map()
        perms = [
            np.array([G.mul(G.mul(h, g), int(inv[h])) for g in range(n)])
            for h in range(n)
        ]
        for j in range(T.count):
            U3 = level_coords(T, j, 3)[0].reshape(n, n, n, -1)
            U2 = level_coords(T, j, 2)[0].reshape(n, n, -1)
            for p in perms:
                assert np.array_equal(U3, U3[p][:, p][:, :, p])
                assert np.array_equal(U2, U2[p][:, p])
    T = suite_tables["Q8"]
    G = T.group
    inv = G.inverse_map()
    rng = random.Random(3)
    for _ in range(20):
        h = rng.randrange(8)
        conj = lambda g: G.mul(G.mul(h, g), int(inv[h]))
        tri = tuple(rng.randrange(8) for _ in range(3))
        j = rng.randrange(T.count)
        assert k_character(T, j, 3, tri) == k_character(
            T, j, 3, tuple(conj(g) for g in tri)
        )


def test_orthogonality_c2_level1():
    T = character_table(cyclic(2))
    assert orthogonality_sum(T, 0, 1, 1).is_zero()


def test_orthogonality_s3_all_levels():
    T = character_table(symmetric(3))
    for i in range(3):
        for j in range(3):
            for k in (1, 2, 3):
                value = orthogonality_sum(T, i, j, k)
                if i != j:
                    assert value.is_zero()
    # Both degree-1 characters have identically zero 2-characters.
    assert orthogonality_sum(T, 0, 1, 2).is_zero()


def test_orthogonality_kernel_vs_exact():
    for G in (symmetric(3), dihedral(8), cyclic(6)):
        T = character_table(G)
        for i in range(T.count):
            for j in range(T.count):
                for k in (1, 2):
                    assert orthogonality_sum(T, i, j, k, method="kernel") == \
                        orthogonality_sum(T, i, j, k, method="exact")
        for k in (3,):
            assert orthogonality_sum(T, 0, T.count - 1, k, method="kernel") == \
                orthogonality_sum(T, 0, T.count - 1, k, method="exact")


def test_orthogonality_diagonal_returns_value():
    T = character_table(cyclic(2))
    assert orthogonality_sum(T, 0, 0, 1) == 2


def test_kchar_table_export(tmp_path):
    T = character_table(symmetric(3))
    table = build_k_char_table(T, 2, 2)
    assert len(table.values) == 36
    path = tmp_path / "kchar.json"
    table.save(path)
    assert path.exists()
    orb = build_k_char_table(T, 2, 2, orbits_only=True)
    assert len(orb.values) < 36
    reps = set(orb.values)
    for tup in orb.values:
        assert conjugation_orbit_representative(T.group, tup) == tup
    for tup, value in orb.values.items():
        assert table.values[tup] == value


def test_kchar_table_materialization_cap():
    T = character_table(symmetric(4))
    with pytest.raises(ValueError):
        build_k_char_table(T, 0, 3)
    orb = build_k_char_table(T, 0, 3, orbits_only=True)
    assert all(v.is_zero() for v in orb.values.values())


def test_equivalence_self_identity():
    for G in (symmetric(3), quaternion(8)):
        verdict = equivalence_search(G, G, levels=(1, 2, 3))
        assert verdict.equivalent
        beta, pi = verdict.witness
        assert beta == tuple(range(G.order))


def test_equivalence_d4_q8():
    d4, q8 = dihedral(8), quaternion(8)
    level1 = equivalence_search(d4, q8, levels=(1,))
    assert level1.equivalent
    full = equivalence_search(d4, q8, levels=(1, 2, 3))
    assert not full.equivalent
    assert full.nodes > 0


def test_equivalence_rejects_on_orders_and_degrees():
    assert not equivalence_search(cyclic(4), cyclic(5)).equivalent
    assert not equivalence_search(cyclic(4), catalog.klein_four()).equivalent
    a4 = catalog.alternating_4()
    d6 = dihedral(12)
    assert not equivalence_search(a4, d6, levels=(1,)).equivalent


def test_equivalence_witness_transports_values():
    d4, q8 = dihedral(8), quaternion(8)
    verdict = equivalence_search(d4, q8, levels=(1,))
    beta, pi = verdict.witness
    Td = character_table(d4)
    Tq = character_table(q8)
    for j in range(Td.count):
        assert Td.degrees[j] == Tq.degrees[pi[j]]
        for g in range(8):
            assert Td.value_at(j, g) == Tq.value_at(pi[j], beta[g])


def test_equivalence_isomorphic_groups_equivalent():
    g = catalog.klein_four()
    h = cyclic(2)
    from groupdet.groups import direct_product

    h2 = direct_product(h, h, name="V4-bis")
    verdict = equivalence_search(g, h2, levels=(1, 2, 3))
    assert verdict.equivalent

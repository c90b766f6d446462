import itertools
import json

import numpy as np
import pytest

from groupdet import catalog
from groupdet.groups import (
    FiniteGroup,
    GroupTableError,
    anti_isomorphism_search,
    build_group,
    conjugacy_classes,
    cyclic,
    dihedral,
    direct_product,
    from_generators,
    heisenberg,
    inverse_map,
    isomorphism_search,
    opposite_group,
    quaternion,
    symmetric,
    validate_table,
)


def test_cyclic_2_table():
    assert cyclic(2).table.tolist() == [[0, 1], [1, 0]]


def test_dihedral_6_nonabelian_cyclic_6_abelian():
    assert not dihedral(6).is_abelian()
    assert cyclic(6).is_abelian()
    assert dihedral(6).order == cyclic(6).order == 6


def _heisenberg3_bruteforce():
    # Oracle: multiply upper unitriangular 3x3 matrices over F_3 directly.
    els = list(itertools.product(range(3), repeat=3))
    def to_mat(t):
        a, b, c = t
        return ((1, a, c), (0, 1, b), (0, 0, 1))
    def mul(x, y):
        return tuple(
            tuple(sum(x[i][k] * y[k][j] for k in range(3)) % 3 for j in range(3))
            for i in range(3)
        )
    mats = [to_mat(t) for t in els]
    index = {m: i for i, m in enumerate(mats)}
    n = len(els)
    return [[index[mul(mats[i], mats[j])] for j in range(n)] for i in range(n)]


def test_heisenberg3_matches_matrix_oracle():
    G = heisenberg(3)
    assert G.order == 27
    assert G.exponent() == 3
    assert not G.is_abelian()
    assert G.table.tolist() == _heisenberg3_bruteforce()


def test_family_rejections():
    with pytest.raises(ValueError):
        symmetric(5)
    with pytest.raises(ValueError):
        heisenberg(4)
    with pytest.raises(ValueError):
        heisenberg(2)
    with pytest.raises(ValueError):
        quaternion(12)
    with pytest.raises(ValueError):
        dihedral(7)
    with pytest.raises(ValueError):
        cyclic(5000)


def test_all_families_pass_group_axioms():
    for G in catalog.suite_groups():
        validate_table(G.table)


def test_from_generators_examples():
    swap = from_generators([(1, 0)])
    assert swap.order == 2
    s3 = from_generators([(1, 0, 2), (1, 2, 0)])
    assert s3.order == 6
    assert conjugacy_classes(s3).count == 3
    trivial = from_generators([])
    assert trivial.order == 1


def test_from_generators_full_transpositions():
    import math

    for m in range(2, 5):
        gens = []
        for i in range(m):
            for j in range(i + 1, m):
                p = list(range(m))
                p[i], p[j] = p[j], p[i]
                gens.append(tuple(p))
        assert from_generators(gens).order == math.factorial(m)


def test_from_generators_cap():
    with pytest.raises(ValueError):
        from_generators([(1, 2, 0, 3), (1, 0, 3, 2)], max_order=5)


def test_conjugacy_classes():
    for n in (3, 5, 7):
        assert conjugacy_classes(cyclic(n)).count == n
    s3 = symmetric(3)
    cc = conjugacy_classes(s3)
    assert cc.sizes() == (1, 3, 2)
    assert cc.classes[0] == (0,)
    d4 = dihedral(8)
    assert conjugacy_classes(d4).count == 5
    # Class representatives are minimal members and sizes divide the order.
    for G in catalog.suite_groups():
        cc = conjugacy_classes(G)
        assert cc.representatives == tuple(min(c) for c in cc.classes)
        assert all(G.order % len(c) == 0 for c in cc.classes)
        assert sorted(x for c in cc.classes for x in c) == list(range(G.order))


def test_heisenberg_class_count_formula():
    for p in (3, 5):
        assert conjugacy_classes(heisenberg(p)).count == p * p + p - 1


def test_inverse_map():
    assert inverse_map(cyclic(4)) == (0, 3, 2, 1)
    q8 = quaternion(8)
    inv = inverse_map(q8)
    self_inverse = [g for g in range(1, 8) if inv[g] == g]
    assert len(self_inverse) == 1
    for G in catalog.suite_groups():
        inv = inverse_map(G)
        for g in range(G.order):
            assert G.mul(g, inv[g]) == 0
            assert inv[inv[g]] == g


def test_opposite_group():
    c6 = cyclic(6)
    assert np.array_equal(opposite_group(c6).table, c6.table)
    s3 = symmetric(3)
    assert np.array_equal(opposite_group(opposite_group(s3)).table, s3.table)
    assert isomorphism_search(s3, opposite_group(s3)) is not None
    for G in catalog.suite_groups():
        if G.order <= 12:
            assert isomorphism_search(G, opposite_group(G)) is not None


def test_isomorphism_self_and_negatives():
    s3 = symmetric(3)
    w = isomorphism_search(s3, s3)
    assert w is not None and w.verify(s3, s3)
    assert isomorphism_search(cyclic(4), catalog.klein_four()) is None
    assert isomorphism_search(cyclic(4), cyclic(5)) is None


def _brute_force_isomorphic(G, H):
    # Oracle: try all bijections fixing the identity.
    n = G.order
    for perm in itertools.permutations(range(1, n)):
        f = (0,) + perm
        if all(
            f[G.mul(a, b)] == H.mul(f[a], f[b])
            for a in range(n)
            for b in range(n)
        ):
            return True
    return False


def test_d4_q8_not_isomorphic_vs_bruteforce():
    d4, q8 = dihedral(8), quaternion(8)
    assert isomorphism_search(d4, q8) is None
    assert not _brute_force_isomorphic(d4, q8)
    assert isomorphism_search(d4, d4) is not None
    assert _brute_force_isomorphic(d4, d4)


def test_anti_isomorphism_search():
    s4 = symmetric(4)
    w = anti_isomorphism_search(s4, s4)
    assert w is not None
    assert w.kind == "anti-isomorphism"
    assert w.verify(s4, s4)


def test_build_group_parser():
    assert build_group("cyclic(6)").order == 6
    assert build_group("direct_product(cyclic(2), cyclic(2))").order == 4
    g = build_group("direct_product(dihedral(6), cyclic(2))")
    assert g.order == 12
    with pytest.raises(ValueError):
        build_group("simple(60)")
    with pytest.raises(ValueError):
        build_group("cyclic(two)")


def test_json_roundtrip(tmp_path):
    g = dihedral(8)
    path = tmp_path / "d4.json"
    g.save(path)
    back = FiniteGroup.load(path)
    assert back.name == "D4"
    assert np.array_equal(back.table, g.table)


def test_load_reports_first_violation(tmp_path):
    bad = {"name": "broken", "order": 2, "table": [[0, 1], [1, 1]]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    with pytest.raises(GroupTableError) as err:
        FiniteGroup.load(path)
    assert "row 1" in str(err.value)


def test_validation_messages():
    with pytest.raises(GroupTableError, match="identity"):
        FiniteGroup([[1, 0], [0, 1]])
    with pytest.raises(GroupTableError, match="associativity"):
        FiniteGroup(
            [
                [0, 1, 2, 3, 4],
                [1, 0, 3, 4, 2],
                [2, 4, 0, 1, 3],
                [3, 2, 4, 0, 1],
                [4, 3, 1, 2, 0],
            ]
        )
    with pytest.raises(GroupTableError, match="outside"):
        FiniteGroup([[0, 1], [1, 7]])


def test_direct_product_structure():
    g = direct_product(cyclic(2), cyclic(3))
    assert isomorphism_search(g, cyclic(6)) is not None
    h = direct_product(cyclic(2), cyclic(2))
    assert isomorphism_search(h, cyclic(4)) is None


def test_catalog_quintets():
    q8s = catalog.order8_quintet()
    assert [g.order for g in q8s] == [8] * 5
    for a, b in itertools.combinations(q8s, 2):
        assert isomorphism_search(a, b) is None
    q12s = catalog.order12_quintet()
    assert [g.order for g in q12s] == [12] * 5
    for a, b in itertools.combinations(q12s, 2):
        assert isomorphism_search(a, b) is None


def test_dic3_structure():
    dic3 = catalog.dicyclic_12()
    assert dic3.order == 12
    inv = inverse_map(dic3)
    assert sum(1 for g in range(1, 12) if inv[g] == g) == 1  # unique involution
    assert not dic3.is_abelian()

"""Named construction of the small-group test corpus.

Everything is produced through the public family builders; A4 and Dic3 have
no dedicated family, so they come from explicit permutation generators:
A4 = <(0 1 2), (0 1)(2 3)>, and Dic3 acts on its own 12 elements by left
translation (indices 0..5 are a^i, 6..11 are b*a^i with b^2 = a^3,
b*a*b^-1 = a^-1).
"""

from __future__ import annotations

from .groups import (
    FiniteGroup,
    cyclic,
    dihedral,
    direct_product,
    from_generators,
    heisenberg,
    quaternion,
    symmetric,
)


def klein_four() -> FiniteGroup:
    return direct_product(cyclic(2), cyclic(2), name="C2xC2")


def alternating_4() -> FiniteGroup:
    return from_generators([(1, 2, 0, 3), (1, 0, 3, 2)], name="A4")


def dicyclic_12() -> FiniteGroup:
    a = (1, 2, 3, 4, 5, 0, 11, 6, 7, 8, 9, 10)
    b = (6, 7, 8, 9, 10, 11, 3, 4, 5, 0, 1, 2)
    return from_generators([a, b], name="Dic3")


def order8_quintet() -> list[FiniteGroup]:
    return [
        cyclic(8),
        direct_product(cyclic(4), cyclic(2), name="C4xC2"),
        direct_product(klein_four(), cyclic(2), name="C2xC2xC2"),
        dihedral(8),
        quaternion(8),
    ]


def order12_quintet() -> list[FiniteGroup]:
    return [
        cyclic(12),
        direct_product(cyclic(6), cyclic(2), name="C6xC2"),
        dihedral(12),
        alternating_4(),
        dicyclic_12(),
    ]


def groups_of_order(n: int) -> list[FiniteGroup]:
    """All isomorphism types of the given order, for n <= 12."""
    if n == 4:
        return [cyclic(4), klein_four()]
    if n == 6:
        return [cyclic(6), symmetric(3)]
    if n == 8:
        return order8_quintet()
    if n == 9:
        return [cyclic(9), direct_product(cyclic(3), cyclic(3), name="C3xC3")]
    if n == 10:
        return [cyclic(10), dihedral(10)]
    if n == 12:
        return order12_quintet()
    if 1 <= n <= 12:
        return [cyclic(n)]
    raise ValueError(f"no catalog of all groups of order {n}")


def suite_groups() -> list[FiniteGroup]:
    """The acceptance corpus: every group of order <= 12, Heis3, and S4."""
    out: list[FiniteGroup] = []
    for n in range(1, 13):
        out.extend(groups_of_order(n))
    out.append(heisenberg(3))
    out.append(symmetric(4))
    return out

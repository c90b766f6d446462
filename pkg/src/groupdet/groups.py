"""Finite groups as validated Cayley tables, identity pinned at index 0.

Element numbering is fixed per family so that serialized artifacts are
stable:

  * cyclic(n): index i is the i-th power of the generator.
  * dihedral(2m): indices 0..m-1 are r^i, indices m..2m-1 are s*r^i, with
    s^2 = e and s*r*s = r^-1.
  * quaternion(4m), m a power of 2 and 4m >= 8: indices 0..2m-1 are a^i,
    indices 2m..4m-1 are b*a^i, with a^(2m) = e, b^2 = a^m, b*a*b^-1 = a^-1.
  * symmetric(m): elements are the permutations of [0, m) in lexicographic
    order of their image tuples; composition is (s*t)(x) = s(t(x)).
  * heisenberg(p): triples (a, b, c) over F_p encoding the unitriangular
    matrix [[1,a,c],[0,1,b],[0,0,1]], indexed as a*p^2 + b*p + c.
  * direct_product(G, H): index i*|H| + j for the pair (g_i, h_j).
  * from_generators: breadth-first closure, identity first, successors
    appended in generator order by right multiplication.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations
from math import lcm
from pathlib import Path

import numpy as np

from . import kernels

HARD_CAP = 4096


class GroupTableError(ValueError):
    """A Cayley-table axiom failed; the message names the first violation."""


class FiniteGroup:
    """Immutable finite group on elements 0..n-1 given by its Cayley table."""

    def __init__(self, table, name: str = "G", validate: bool = True):
        arr = np.array(table, dtype=np.int64)
        arr.setflags(write=False)
        self.table = arr
        self.order = int(arr.shape[0]) if arr.ndim == 2 else 0
        self.name = str(name)
        self._inv = None
        self._orders = None
        if validate:
            validate_table(arr)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse_map()[a])

    def inverse_map(self) -> np.ndarray:
        if self._inv is None:
            inv = np.argmin(self.table, axis=1)
            self._inv = inv
        return self._inv

    def element_orders(self) -> list[int]:
        if self._orders is None:
            orders = []
            for g in range(self.order):
                k, x = 1, g
                while x != 0:
                    x = self.mul(x, g)
                    k += 1
                orders.append(k)
            self._orders = orders
        return self._orders

    def exponent(self) -> int:
        return lcm(*self.element_orders()) if self.order else 1

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def power(self, g: int, k: int) -> int:
        x = 0
        for _ in range(k):
            x = self.mul(x, g)
        return x

    # -- persistence -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "table": self.table.tolist(),
        }

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), sort_keys=True))

    @classmethod
    def from_json(cls, data: dict, max_order: int = HARD_CAP) -> "FiniteGroup":
        table = data.get("table")
        if not isinstance(table, list) or not table:
            raise GroupTableError("group file is missing a non-empty 'table'")
        n = len(table)
        if n > max_order:
            raise GroupTableError(f"order {n} exceeds the cap {max_order}")
        declared = data.get("order")
        if declared is not None and int(declared) != n:
            raise GroupTableError(
                f"declared order {declared} does not match table size {n}"
            )
        return cls(table, name=data.get("name", "G"))

    @classmethod
    def load(cls, path, max_order: int = HARD_CAP) -> "FiniteGroup":
        return cls.from_json(json.loads(Path(path).read_text()), max_order=max_order)

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"


def validate_table(table: np.ndarray) -> None:
    """Check all group axioms; raise GroupTableError naming the first failure."""
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise GroupTableError("table is not square")
    n = table.shape[0]
    if n == 0:
        raise GroupTableError("table is empty")
    if table.min() < 0 or table.max() >= n:
        bad = np.argwhere((table < 0) | (table >= n))[0]
        raise GroupTableError(
            f"entry at ({bad[0]}, {bad[1]}) is outside [0, {n})"
        )
    idx = np.arange(n)
    if not np.array_equal(table[0], idx):
        j = int(np.argwhere(table[0] != idx)[0, 0])
        raise GroupTableError(f"identity law fails: table[0][{j}] != {j}")
    if not np.array_equal(table[:, 0], idx):
        i = int(np.argwhere(table[:, 0] != idx)[0, 0])
        raise GroupTableError(f"identity law fails: table[{i}][0] != {i}")
    row_sorted = np.sort(table, axis=1)
    if not np.array_equal(row_sorted, np.tile(idx, (n, 1))):
        i = int(np.argwhere((row_sorted != idx).any(axis=1))[0, 0])
        raise GroupTableError(f"row {i} is not a permutation of [0, {n})")
    col_sorted = np.sort(table, axis=0)
    if not np.array_equal(col_sorted, np.tile(idx[:, None], (1, n))):
        j = int(np.argwhere((col_sorted != idx[:, None]).any(axis=0))[0, 0])
        raise GroupTableError(f"column {j} is not a permutation of [0, {n})")
    violation = kernels.assoc_violation(np.ascontiguousarray(table))
    if violation is not None:
        i, j, k = violation
        raise GroupTableError(
            f"associativity fails at ({i}, {j}, {k}): "
            f"table[table[{i}][{j}]][{k}] != table[{i}][table[{j}][{k}]]"
        )
    inv_candidates = np.argmin(table, axis=1)
    for g in range(n):
        h = int(inv_candidates[g])
        if table[g, h] != 0 or table[h, g] != 0:
            raise GroupTableError(f"element {g} has no two-sided inverse")


@dataclass(frozen=True)
class ConjugacyClasses:
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    representatives: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.classes)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


def conjugacy_classes(G: FiniteGroup) -> ConjugacyClasses:
    """Orbits of conjugation; class 0 = {e}; representatives are minimal ids."""
    cached = getattr(G, "_classes", None)
    if cached is not None:
        return cached
    class_of = kernels.class_of_kernel(G.table, np.asarray(G.inverse_map()))
    r = int(class_of.max()) + 1
    classes = tuple(
        tuple(int(x) for x in np.flatnonzero(class_of == c)) for c in range(r)
    )
    result = ConjugacyClasses(
        classes=classes,
        class_of=tuple(int(c) for c in class_of),
        representatives=tuple(c[0] for c in classes),
    )
    G._classes = result
    return result


def inverse_map(G: FiniteGroup) -> tuple[int, ...]:
    return tuple(int(x) for x in G.inverse_map())


def opposite_group(G: FiniteGroup) -> FiniteGroup:
    """The group with reversed multiplication: table'[i][j] = table[j][i]."""
    return FiniteGroup(G.table.T.copy(), name=f"{G.name}^op", validate=False)


# ---------------------------------------------------------------------------
# families


def cyclic(n: int, name: str | None = None, max_order: int = HARD_CAP) -> FiniteGroup:
    _check_order(n, max_order)
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    return FiniteGroup(table, name=name or f"C{n}", validate=False)


def dihedral(order: int, name: str | None = None, max_order: int = HARD_CAP) -> FiniteGroup:
    """Dihedral group of the given (even) order 2m, named D{m}."""
    if order % 2 != 0 or order < 2:
        raise ValueError(f"dihedral order must be even and >= 2, got {order}")
    _check_order(order, max_order)
    m = order // 2
    table = np.zeros((order, order), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            table[i, j] = (i + j) % m
            table[i, m + j] = m + (j - i) % m
            table[m + i, j] = m + (i + j) % m
            table[m + i, m + j] = (j - i) % m
    return FiniteGroup(table, name=name or f"D{m}", validate=False)


def quaternion(order: int, name: str | None = None, max_order: int = HARD_CAP) -> FiniteGroup:
    """Generalized quaternion group of order 8 * 2^k."""
    if order < 8 or order & (order - 1) != 0:
        raise ValueError(f"quaternion order must be 8*2^k, got {order}")
    _check_order(order, max_order)
    m = order // 4
    two_m = 2 * m
    table = np.zeros((order, order), dtype=np.int64)
    for i in range(two_m):
        for j in range(two_m):
            table[i, j] = (i + j) % two_m
            table[i, two_m + j] = two_m + (j - i) % two_m
            table[two_m + i, j] = two_m + (i + j) % two_m
            table[two_m + i, two_m + j] = (m - i + j) % two_m
    return FiniteGroup(table, name=name or f"Q{order}", validate=False)


def symmetric(m: int, name: str | None = None, max_order: int = HARD_CAP) -> FiniteGroup:
    if not 1 <= m <= 4:
        raise ValueError(f"symmetric(m) supports 1 <= m <= 4, got {m}")
    perms = list(permutations(range(m)))
    _check_order(len(perms), max_order)
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.zeros((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[q[x]] for x in range(m))]
    return FiniteGroup(table, name=name or f"S{m}", validate=False)


def heisenberg(p: int, name: str | None = None, max_order: int = HARD_CAP) -> FiniteGroup:
    if p < 3 or p % 2 == 0 or not _is_prime(p):
        raise ValueError(f"heisenberg(p) needs an odd prime, got {p}")
    n = p ** 3
    _check_order(n, max_order)
    table = np.zeros((n, n), dtype=np.int64)
    for a in range(p):
        for b in range(p):
            for c in range(p):
                i = (a * p + b) * p + c
                for a2 in range(p):
                    for b2 in range(p):
                        for c2 in range(p):
                            j = (a2 * p + b2) * p + c2
                            table[i, j] = (
                                ((a + a2) % p * p + (b + b2) % p) * p
                                + (c + c2 + a * b2) % p
                            )
    return FiniteGroup(table, name=name or f"Heis{p}", validate=False)


def direct_product(
    G: FiniteGroup, H: FiniteGroup, name: str | None = None, max_order: int = HARD_CAP
) -> FiniteGroup:
    n = G.order * H.order
    _check_order(n, max_order)
    tg = G.table[:, :, None, None] * H.order
    th = H.table[None, None, :, :]
    table = (tg + th).transpose(0, 2, 1, 3).reshape(n, n)
    return FiniteGroup(table, name=name or f"{G.name}x{H.name}", validate=False)


def from_generators(
    perms, name: str = "G", max_order: int = HARD_CAP
) -> FiniteGroup:
    """Closure of permutation generators on [0, m); identity gets ElementId 0."""
    gens = [tuple(int(x) for x in p) for p in perms]
    m = len(gens[0]) if gens else 1
    for p in gens:
        if sorted(p) != list(range(m)):
            raise ValueError(f"generator {p} is not a permutation of [0, {m})")
    identity = tuple(range(m))
    elems = [identity]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for cur in frontier:
            for gen in gens:
                prod = tuple(cur[gen[x]] for x in range(m))
                if prod not in index:
                    if len(elems) >= max_order:
                        raise ValueError(
                            f"closure exceeds the order cap {max_order}"
                        )
                    index[prod] = len(elems)
                    elems.append(prod)
                    nxt.append(prod)
        frontier = nxt
    n = len(elems)
    table = np.zeros((n, n), dtype=np.int64)
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            table[i, j] = index[tuple(p[q[x]] for x in range(m))]
    return FiniteGroup(table, name=name, validate=False)


def from_table(path, max_order: int = HARD_CAP) -> FiniteGroup:
    return FiniteGroup.load(path, max_order=max_order)


def build_group(spec: str, max_order: int = HARD_CAP) -> FiniteGroup:
    """Build a group from a family spec string.

    Grammar: cyclic(n), dihedral(order), quaternion(order), symmetric(m),
    heisenberg(p), direct_product(spec, spec), nested arbitrarily.
    """
    spec = spec.strip()
    head, args = _split_call(spec)
    if head == "cyclic":
        return cyclic(_one_int(args, spec), max_order=max_order)
    if head == "dihedral":
        return dihedral(_one_int(args, spec), max_order=max_order)
    if head == "quaternion":
        return quaternion(_one_int(args, spec), max_order=max_order)
    if head == "symmetric":
        return symmetric(_one_int(args, spec), max_order=max_order)
    if head == "heisenberg":
        return heisenberg(_one_int(args, spec), max_order=max_order)
    if head == "direct_product":
        parts = _split_args(args)
        if len(parts) != 2:
            raise ValueError(f"direct_product needs two factors in {spec!r}")
        return direct_product(
            build_group(parts[0], max_order=max_order),
            build_group(parts[1], max_order=max_order),
            max_order=max_order,
        )
    raise ValueError(f"unknown group family in {spec!r}")


def _split_call(spec: str) -> tuple[str, str]:
    if not spec.endswith(")") or "(" not in spec:
        raise ValueError(f"malformed group spec {spec!r}")
    head, _, rest = spec.partition("(")
    return head.strip(), rest[:-1]


def _split_args(args: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in args:
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        cur.append(ch)
    parts.append("".join(cur).strip())
    return parts


def _one_int(args: str, spec: str) -> int:
    try:
        return int(args.strip())
    except ValueError:
        raise ValueError(f"expected one integer argument in {spec!r}") from None


def _check_order(n: int, max_order: int) -> None:
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    if n > max_order:
        raise ValueError(f"order {n} exceeds the cap {max_order}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# isomorphism search


@dataclass(frozen=True)
class IsoWitness:
    kind: str  # "isomorphism" | "anti-isomorphism"
    mapping: tuple[int, ...]

    def verify(self, G: FiniteGroup, H: FiniteGroup) -> bool:
        n = G.order
        if H.order != n or sorted(self.mapping) != list(range(n)):
            return False
        f = self.mapping
        for a in range(n):
            for b in range(n):
                image = H.mul(f[a], f[b]) if self.kind == "isomorphism" else H.mul(f[b], f[a])
                if f[G.mul(a, b)] != image:
                    return False
        return True


def _element_signature(G: FiniteGroup):
    classes = conjugacy_classes(G)
    sizes = classes.sizes()
    orders = G.element_orders()
    return [
        (orders[g], sizes[classes.class_of[g]]) for g in range(G.order)
    ]


def _generating_sequence(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    closure = {0}
    while len(closure) < G.order:
        g = min(set(range(G.order)) - closure)
        gens.append(g)
        closure = _close(G, gens)
    return gens


def _close(G: FiniteGroup, gens) -> set[int]:
    out = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def _extend_hom(G: FiniteGroup, H: FiniteGroup, gen_pairs) -> dict | None:
    """Map on <gens> forced by the images, or None on any conflict."""
    fmap = {0: 0}
    order = [0]
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in gen_pairs:
                y = G.mul(x, g)
                fy = H.mul(fmap[x], h)
                if y in fmap:
                    if fmap[y] != fy:
                        return None
                else:
                    fmap[y] = fy
                    order.append(y)
                    nxt.append(y)
        frontier = nxt
    if len(set(fmap.values())) != len(fmap):
        return None
    # Full multiplicativity check on the generated subgroup.
    elems = list(fmap)
    for a in elems:
        fa = fmap[a]
        for b in elems:
            if fmap[G.mul(a, b)] != H.mul(fa, fmap[b]):
                return None
    return fmap


def isomorphism_search(G: FiniteGroup, H: FiniteGroup) -> IsoWitness | None:
    """Exhaustive backtracking over generator images with invariant pruning."""
    if G.order != H.order:
        return None
    sig_g = _element_signature(G)
    sig_h = _element_signature(H)
    if sorted(sig_g) != sorted(sig_h):
        return None
    gens = _generating_sequence(G)
    candidates = [
        [h for h in range(H.order) if sig_h[h] == sig_g[g]] for g in gens
    ]

    def search(depth: int, chosen: list[int]):
        pairs = list(zip(gens[:depth], chosen))
        fmap = _extend_hom(G, H, pairs)
        if fmap is None:
            return None
        if depth == len(gens):
            if len(fmap) != G.order:
                return None
            return fmap
        for h in candidates[depth]:
            found = search(depth + 1, chosen + [h])
            if found is not None:
                return found
        return None

    fmap = search(0, [])
    if fmap is None:
        return None
    witness = IsoWitness(
        kind="isomorphism", mapping=tuple(fmap[g] for g in range(G.order))
    )
    assert witness.verify(G, H)
    return witness


def anti_isomorphism_search(G: FiniteGroup, H: FiniteGroup) -> IsoWitness | None:
    """Witness with f(gh) = f(h)f(g), found through the opposite group."""
    witness = isomorphism_search(G, opposite_group(H))
    if witness is None:
        return None
    result = IsoWitness(kind="anti-isomorphism", mapping=witness.mapping)
    assert result.verify(G, H)
    return result

"""Exact ordinary character tables.

The route is the classical modular one: the class-sum matrices of the group
algebra commute, so their simultaneous eigenvectors over a prime field F_p
with p = 1 (mod exponent) and p > 2*floor(sqrt(|G|)) are the central
character vectors; each one is normalized, its degree recovered by a modular
square root, and the class values lifted to Q(zeta_e) exactly through the
discrete Fourier transform over the power map, which recovers the eigenvalue
multiplicities of a representing matrix (integers bounded by the degree,
hence determined by their residues).

Random linear combinations of the class matrices split repeated eigenspaces
quickly; the splitting randomness comes from the seed and is unobservable in
the output because rows are sorted canonically by (degree, coefficient
vectors).  Both classical orthogonality relations are verified exactly
before a table is returned.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from math import isqrt
from pathlib import Path

import numpy as np

from . import kernels, modp
from .cyclotomic import Cyclotomic, reduced_powers
from .groups import ConjugacyClasses, FiniteGroup, conjugacy_classes


class CharacterTableError(RuntimeError):
    """Internal consistency failure; indicates a bug, never bad user input."""


@dataclass(frozen=True)
class ClassConstants:
    r: int
    a: np.ndarray  # (r, r, r) int64; a[i][j][k] = #{(x,y) in C_i x C_j : xy = rep_k}


def class_constants(G: FiniteGroup) -> ClassConstants:
    cc = conjugacy_classes(G)
    reps = np.array(cc.representatives, dtype=np.int64)
    class_of = np.array(cc.class_of, dtype=np.int64)
    a = kernels.class_constants_kernel(
        G.table, np.asarray(G.inverse_map()), class_of, reps
    )
    return ClassConstants(r=cc.count, a=a)


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime p with p = 1 (mod exponent) and p > 2*floor(sqrt(order))."""
    bound = 2 * isqrt(order)
    p = max(bound, 2) + 1
    while True:
        if p % exponent == 1 % exponent and _is_prime(p):
            return p
        p += 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class CharacterTable:
    group: FiniteGroup
    classes: ConjugacyClasses
    rows: tuple[tuple[Cyclotomic, ...], ...]
    degrees: tuple[int, ...]
    conductor: int

    @property
    def count(self) -> int:
        return len(self.rows)

    def value(self, j: int, class_index: int) -> Cyclotomic:
        return self.rows[j][class_index]

    def value_at(self, j: int, g: int) -> Cyclotomic:
        return self.rows[j][self.classes.class_of[g]]

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "order": self.group.order,
            "classes": list(self.classes.representatives),
            "class_sizes": [len(c) for c in self.classes.classes],
            "conductor": self.conductor,
            "rows": [
                {
                    "degree": self.degrees[j],
                    "values": [v.to_json() for v in row],
                }
                for j, row in enumerate(self.rows)
            ],
        }

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), sort_keys=True))


def character_table(G: FiniteGroup, seed: int = 0) -> CharacterTable:
    """Exact irreducible character table, rows sorted by (degree, values)."""
    cache = getattr(G, "_char_tables", None)
    if cache is None:
        cache = {}
        G._char_tables = cache
    if seed in cache:
        return cache[seed]

    cc = conjugacy_classes(G)
    r = cc.count
    n = G.order
    e = G.exponent()
    p = dixon_prime(n, e)
    a = class_constants(G).a

    # Row-vector convention: v is an eigen-row of A_i = N_i^T exactly when
    # N_i v^T = omega_i v^T; the common eigenrows are the central characters.
    mats = [np.ascontiguousarray(a[i].T % p) for i in range(r)]
    spaces = [np.eye(r, dtype=np.int64)]
    rng = random.Random(seed)
    rounds = 0
    while len(spaces) < r and rounds < 12:
        combo = sum(rng.randrange(p) * m for m in mats) % p
        spaces = _refine(spaces, combo, p)
        rounds += 1
    idx = 0
    while len(spaces) < r and idx < r:
        spaces = _refine(spaces, mats[idx], p)
        idx += 1
    if len(spaces) != r:
        raise CharacterTableError("class matrices failed to split completely")

    sizes = cc.sizes()
    inv_class = _inverse_class_map(G, cc)
    inv_sizes = [modp.inv_mod(s, p) for s in sizes]
    omega_rows = []
    for B in spaces:
        v = B[0] % p
        if v[0] == 0:
            raise CharacterTableError("central character has vanishing identity slot")
        omega_rows.append((v * modp.inv_mod(int(v[0]), p)) % p)

    wp = pow(modp.primitive_root(p), (p - 1) // e, p)
    wpow = [pow(wp, t, p) for t in range(e)]
    inv_e = modp.inv_mod(e, p)
    power_map = _class_power_map(G, cc, e)
    red = reduced_powers(e)

    rows = []
    degrees = []
    for u in omega_rows:
        dot = sum(int(u[j]) * int(u[inv_class[j]]) * inv_sizes[j] for j in range(r)) % p
        d2 = n * modp.inv_mod(dot, p) % p
        root = modp.sqrt_mod(d2, p)
        if root is None:
            raise CharacterTableError("degree is not a square modulo p")
        d = min(root, p - root)
        chi_p = [int(u[j]) * d * inv_sizes[j] % p for j in range(r)]
        row = []
        for c in range(r):
            coords = [0] * len(red[0])
            total = 0
            for k in range(e):
                acc = 0
                for s in range(e):
                    acc += chi_p[power_map[c][s]] * wpow[(-k * s) % e]
                m_k = acc * inv_e % p
                if m_k > d:
                    raise CharacterTableError(
                        "eigenvalue multiplicity exceeds the degree"
                    )
                total += m_k
                if m_k:
                    for t, x in enumerate(red[k]):
                        coords[t] += m_k * x
            if total != d:
                raise CharacterTableError("multiplicities do not sum to the degree")
            row.append(Cyclotomic(e, tuple(coords), _reduced=True))
        rows.append(tuple(row))
        degrees.append(d)

    if sum(d * d for d in degrees) != n:
        raise CharacterTableError("degree squares do not sum to the group order")

    order = sorted(range(r), key=lambda j: (degrees[j], [v.sort_key() for v in rows[j]]))
    table = CharacterTable(
        group=G,
        classes=cc,
        rows=tuple(rows[j] for j in order),
        degrees=tuple(degrees[j] for j in order),
        conductor=e,
    )
    violations = verify_orthogonality(table)
    if violations:
        raise CharacterTableError(f"orthogonality failed: {violations[0]}")
    cache[seed] = table
    return table


def _refine(spaces, M, p):
    out = []
    for B in spaces:
        if B.shape[0] <= 1:
            out.append(B)
            continue
        R, pivots = modp.rref_mod(B, p)
        C = (R @ M % p)[:, pivots]
        for lam in modp.poly_roots_mod(modp.charpoly_mod(C, p), p):
            Y = modp.nullspace_mod((C.T - lam * np.eye(C.shape[0], dtype=np.int64)) % p, p)
            if Y.shape[0] == 0:
                continue
            sub, _ = modp.rref_mod(Y @ R % p, p)
            out.append(sub)
    return out


def _inverse_class_map(G: FiniteGroup, cc: ConjugacyClasses) -> list[int]:
    inv = G.inverse_map()
    return [cc.class_of[int(inv[rep])] for rep in cc.representatives]


def _class_power_map(G: FiniteGroup, cc: ConjugacyClasses, e: int) -> list[list[int]]:
    """power_map[c][s] = class index of rep_c ** s."""
    out = []
    for rep in cc.representatives:
        row = []
        x = 0
        for _ in range(e):
            row.append(cc.class_of[x])
            x = G.mul(x, rep)
        out.append(row)
    return out


def verify_orthogonality(T: CharacterTable) -> list[dict]:
    """Exact row and column orthogonality; returns the list of violations."""
    n = T.group.order
    r = T.count
    sizes = T.classes.sizes()
    violations = []
    for i in range(r):
        for j in range(i, r):
            total = Cyclotomic.zero(T.conductor)
            for c in range(r):
                total = total + sizes[c] * (T.rows[i][c] * T.rows[j][c].conjugate())
            expected = n if i == j else 0
            if total != expected:
                violations.append(
                    {"relation": "row", "i": i, "j": j, "value": total.to_json()}
                )
    for c in range(r):
        for c2 in range(c, r):
            total = Cyclotomic.zero(T.conductor)
            for i in range(r):
                total = total + T.rows[i][c] * T.rows[i][c2].conjugate()
            expected = n // sizes[c] if c == c2 else 0
            if total != expected:
                violations.append(
                    {"relation": "column", "c": c, "c2": c2, "value": total.to_json()}
                )
    return violations


def load_character_table(path, G: FiniteGroup, verify: bool = True) -> CharacterTable:
    """Load a saved table and attach it to the group it was computed from."""
    data = json.loads(Path(path).read_text())
    if int(data["order"]) != G.order:
        raise ValueError(
            f"table order {data['order']} does not match group order {G.order}"
        )
    cc = conjugacy_classes(G)
    if list(cc.representatives) != [int(x) for x in data["classes"]]:
        raise ValueError("class representatives do not match the group")
    rows = tuple(
        tuple(Cyclotomic.from_json(v) for v in row["values"]) for row in data["rows"]
    )
    degrees = tuple(int(row["degree"]) for row in data["rows"])
    table = CharacterTable(
        group=G,
        classes=cc,
        rows=rows,
        degrees=degrees,
        conductor=int(data["conductor"]),
    )
    if verify:
        violations = verify_orthogonality(table)
        if violations:
            raise ValueError(f"loaded table fails orthogonality: {violations[0]}")
    return table

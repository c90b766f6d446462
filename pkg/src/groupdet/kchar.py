"""k-characters: explicit 1-/2-/3-point forms, a general recursion, regular
closed forms, exact orthogonality sums, and k-character-table equivalence.

For a character chi and group elements g, h, m:

    chi1(g)       = chi(g)
    chi2(g, h)    = chi(g) chi(h) - chi(gh)
    chi3(g, h, m) = chi(g) chi(h) chi(m) - chi(g) chi(hm) - chi(h) chi(gm)
                    - chi(m) chi(gh) + chi(ghm) + chi(gmh)

and in general chi(k+1)(g_1..g_k, g) = chi(k)(g_1..g_k) chi(g)
- sum_i chi(k)(g_1, .., g_i g, .., g_k).  A k-character vanishes identically
once k exceeds the degree.

Orthogonality sums over all of G^k run on int64 coordinate kernels (see
groupdet.kernels); an a-priori magnitude bound is certified before
dispatching and the computation falls back to the exact object-level path
when it cannot be (it always can at supported orders, since the coordinates
of character values are small integers).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import lcm
from pathlib import Path

import numpy as np

from . import kernels
from .chartab import CharacterTable, character_table
from .cyclotomic import Cyclotomic, euler_phi, reduced_powers
from .groups import FiniteGroup

INT64_SAFE = 1 << 62
FULL_TABLE_MAX_ORDER = 16  # full G^3 value maps are only materialized below this


# ---------------------------------------------------------------------------
# scalar evaluation


def _explicit_kchar(value_of, mul, k: int, tup: tuple[int, ...]) -> Cyclotomic:
    if k == 1:
        (g,) = tup
        return value_of(g)
    if k == 2:
        g, h = tup
        return value_of(g) * value_of(h) - value_of(mul(g, h))
    if k == 3:
        g, h, m = tup
        gh = mul(g, h)
        hm = mul(h, m)
        gm = mul(g, m)
        return (
            value_of(g) * value_of(h) * value_of(m)
            - value_of(g) * value_of(hm)
            - value_of(h) * value_of(gm)
            - value_of(m) * value_of(gh)
            + value_of(mul(gh, m))
            + value_of(mul(gm, h))
        )
    raise ValueError(f"explicit formulas cover k in {{1, 2, 3}}, got {k}")


def k_character(T: CharacterTable, j: int, k: int, tup) -> Cyclotomic:
    """chi_j^(k) on a k-tuple of elements, by the explicit formulas."""
    tup = tuple(int(x) for x in tup)
    if len(tup) != k:
        raise ValueError(f"tuple length {len(tup)} does not match k={k}")
    memo = _memo(T, "_kchar_memo")
    key = (j, tup)
    hit = memo.get(key)
    if hit is None:
        hit = _explicit_kchar(lambda g: T.value_at(j, g), T.group.mul, k, tup)
        memo[key] = hit
    return hit


def k_character_general(T: CharacterTable, j: int, tup) -> Cyclotomic:
    """chi_j^(k) for any k >= 1, by the product recursion.

    Values for k > degree + 1 are zero by the vanishing property and are
    returned without recursing.  Independent of `k_character` (only the
    plain character values are shared), so the two can cross-check.
    """
    tup = tuple(int(x) for x in tup)
    k = len(tup)
    if k < 1:
        raise ValueError("tuple must have length >= 1")
    if k > T.degrees[j] + 1:
        return Cyclotomic.zero(T.conductor)
    return _recursive_kchar(T, j, tup)


def _recursive_kchar(T: CharacterTable, j: int, tup) -> Cyclotomic:
    if len(tup) == 1:
        return T.value_at(j, tup[0])
    # Length-2 values recur across every longer tuple; longer tuples are
    # usually queried once each, so caching them would only burn memory.
    cacheable = len(tup) == 2
    memo = _memo(T, "_kchar_rec_memo")
    key = (j, tup)
    if cacheable:
        hit = memo.get(key)
        if hit is not None:
            return hit
    head, g = tup[:-1], tup[-1]
    mul = T.group.mul
    total = _recursive_kchar(T, j, head) * T.value_at(j, g)
    for i in range(len(head)):
        bumped = head[:i] + (mul(head[i], g),) + head[i + 1 :]
        total = total - _recursive_kchar(T, j, bumped)
    if cacheable:
        memo[key] = total
    return total


def regular_k_character(G: FiniteGroup, k: int, tup) -> Cyclotomic:
    """k-character of the regular character chi_reg(g) = |G|*[g = e].

    Closed forms; all values are rational integers.
    """
    return Cyclotomic.rational(regular_k_character_int(G, k, tup))


def regular_k_character_int(G: FiniteGroup, k: int, tup) -> int:
    tup = tuple(int(x) for x in tup)
    if len(tup) != k:
        raise ValueError(f"tuple length {len(tup)} does not match k={k}")
    n = G.order
    mul = G.mul
    if k == 1:
        (g,) = tup
        return n if g == 0 else 0
    if k == 2:
        g, h = tup
        return n * n * (g == 0) * (h == 0) - n * (mul(g, h) == 0)
    if k == 3:
        g, h, m = tup
        gh = mul(g, h)
        return (
            n ** 3 * (g == 0) * (h == 0) * (m == 0)
            - n * n * (
                (g == 0) * (mul(h, m) == 0)
                + (h == 0) * (mul(g, m) == 0)
                + (m == 0) * (gh == 0)
            )
            + n * ((mul(gh, m) == 0) + (mul(mul(g, m), h) == 0))
        )
    raise ValueError(f"regular closed forms cover k in {{1, 2, 3}}, got {k}")


def _memo(T: CharacterTable, name: str) -> dict:
    memo = getattr(T, name, None)
    if memo is None:
        memo = {}
        object.__setattr__(T, name, memo)
    return memo


# ---------------------------------------------------------------------------
# integer coordinate plumbing


class _CoordContext:
    """Shared int64 coordinate data for a table viewed in conductor L."""

    def __init__(self, T: CharacterTable, conductor: int | None = None):
        L = conductor or T.conductor
        if L % T.conductor != 0:
            raise ValueError("target conductor must be a multiple of the table's")
        red = reduced_powers(L)
        D = euler_phi(L)
        self.conductor = L
        self.D = D
        self.M3 = np.array(
            [[red[a + b] for b in range(D)] for a in range(D)], dtype=np.int64
        )
        self.conj = np.array([red[(L - t) % L] for t in range(D)], dtype=np.int64)
        self.fold_gain = int(np.abs(self.M3).sum(axis=(0, 1)).max())
        n = T.group.order
        self.values = []
        for j in range(T.count):
            V = np.zeros((n, D), dtype=np.int64)
            for g in range(n):
                V[g] = T.value_at(j, g).coerce(L).int_coords()
            self.values.append(V)
        self.table = np.ascontiguousarray(T.group.table)


def _coord_context(T: CharacterTable, conductor: int | None = None) -> _CoordContext:
    cache = _memo(T, "_coord_cache")
    key = conductor or T.conductor
    if key not in cache:
        cache[key] = _CoordContext(T, key)
    return cache[key]


def _level_bound(max_abs: int, k: int, fold_gain: int) -> int:
    a, fg = int(max_abs), int(fold_gain)
    if k == 1:
        return a
    if k == 2:
        return a * a * fg + a
    return a ** 3 * fg ** 2 + 3 * a * a * fg + 2 * a


def _fill_level(ctx: _CoordContext, V: np.ndarray, k: int) -> np.ndarray:
    return kernels.FILLERS[k](ctx.table, V, ctx.M3)


def level_coords(T: CharacterTable, j: int, k: int, conductor: int | None = None):
    """int64 coordinates of chi_j^(k) on all of G^k, row-major tuple order."""
    ctx = _coord_context(T, conductor)
    cache = _memo(T, "_fill_cache")
    key = (ctx.conductor, j, k, False)
    if key not in cache:
        cache[key] = _fill_level(ctx, ctx.values[j], k)
    return cache[key], ctx


def _conj_level_coords(T: CharacterTable, j: int, k: int, ctx: _CoordContext):
    cache = _memo(T, "_fill_cache")
    key = (ctx.conductor, j, k, True)
    if key not in cache:
        cache[key] = _fill_level(ctx, ctx.values[j] @ ctx.conj, k)
    return cache[key]


def orthogonality_sum(
    T: CharacterTable, i: int, j: int, k: int, method: str = "auto"
) -> Cyclotomic:
    """Exact sum over G^k of chi_i^(k)(tuple) * conj(chi_j^(k)(tuple))."""
    if k not in (1, 2, 3):
        raise ValueError(f"k must be 1, 2, or 3, got {k}")
    if method not in ("auto", "kernel", "exact"):
        raise ValueError(f"unknown method {method!r}")
    n = T.group.order
    if method != "exact":
        ctx = _coord_context(T)
        a = max(int(np.abs(ctx.values[i]).max()), int(np.abs(ctx.values[j]).max()), 1)
        per_tuple = _level_bound(a, k, ctx.fold_gain) ** 2 * ctx.fold_gain
        if n ** k * per_tuple < INT64_SAFE:
            U, ctx = level_coords(T, i, k)
            W = _conj_level_coords(T, j, k, ctx)
            coords = kernels.pair_fold(U, W, ctx.M3)
            return Cyclotomic(
                ctx.conductor, tuple(int(c) for c in coords), _reduced=True
            )
        if method == "kernel":
            raise OverflowError("int64 bound cannot be certified for this sum")
    total = Cyclotomic.zero(T.conductor)
    mul = T.group.mul
    vi = lambda g: T.value_at(i, g)
    vj = lambda g: T.value_at(j, g).conjugate()
    for tup in np.ndindex(*([n] * k)):
        u = _explicit_kchar(vi, mul, k, tup)
        w = _explicit_kchar(vj, mul, k, tup)
        total = total + u * w
    return total


# ---------------------------------------------------------------------------
# materialized tables and export


@dataclass(frozen=True)
class KCharTable:
    group_name: str
    char_index: int
    k: int
    values: dict  # tuple -> Cyclotomic

    def to_json(self) -> dict:
        return {
            "group": self.group_name,
            "char_index": self.char_index,
            "k": self.k,
            "entries": [
                {"tuple": list(t), "value": v.to_json()}
                for t, v in sorted(self.values.items())
            ],
        }

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), sort_keys=True))


def conjugation_orbit_representative(G: FiniteGroup, tup) -> tuple[int, ...]:
    """Lexicographically least simultaneous conjugate of the tuple."""
    inv = G.inverse_map()
    best = tuple(tup)
    for h in range(G.order):
        cand = tuple(G.mul(G.mul(h, g), int(inv[h])) for g in tup)
        if cand < best:
            best = cand
    return best


def build_k_char_table(
    T: CharacterTable, j: int, k: int, orbits_only: bool = False
) -> KCharTable:
    """Materialize chi_j^(k); full G^3 maps only below FULL_TABLE_MAX_ORDER."""
    n = T.group.order
    if k == 3 and not orbits_only and n > FULL_TABLE_MAX_ORDER:
        raise ValueError(
            f"full 3-tuple tables are only materialized for order <= "
            f"{FULL_TABLE_MAX_ORDER}; pass orbits_only=True"
        )
    if orbits_only:
        tuples = sorted(
            {
                conjugation_orbit_representative(T.group, tup)
                for tup in np.ndindex(*([n] * k))
            }
        )
    else:
        tuples = [tuple(int(x) for x in t) for t in np.ndindex(*([n] * k))]
    values = {tup: k_character(T, j, k, tup) for tup in tuples}
    return KCharTable(
        group_name=T.group.name, char_index=j, k=k, values=values
    )


# ---------------------------------------------------------------------------
# k-character-table equivalence


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None  # (beta, pi)
    nodes: int
    levels: tuple[int, ...]


def equivalence_search(
    G: FiniteGroup,
    H: FiniteGroup,
    levels=(1, 2, 3),
    seed: int = 0,
) -> EquivalenceVerdict:
    """Decide existence of an identity-fixing element bijection beta and a
    degree-preserving character bijection pi transporting every requested
    k-character level simultaneously.  Exhaustive, so a negative is final.
    """
    levels = tuple(sorted(set(int(k) for k in levels)))
    if not levels or any(k not in (1, 2, 3) for k in levels):
        raise ValueError(f"levels must be a nonempty subset of {{1,2,3}}: {levels}")
    if G.order != H.order:
        return EquivalenceVerdict(False, None, 0, levels)
    TG = character_table(G, seed=seed)
    TH = character_table(H, seed=seed)
    if sorted(TG.degrees) != sorted(TH.degrees):
        return EquivalenceVerdict(False, None, 0, levels)

    search = _EquivalenceSearch(TG, TH, levels)
    return search.run()


class _EquivalenceSearch:
    def __init__(self, TG: CharacterTable, TH: CharacterTable, levels):
        self.TG, self.TH, self.levels = TG, TH, levels
        self.n = TG.group.order
        self.r = TG.count
        self.nodes = 0
        L = lcm(TG.conductor, TH.conductor)
        self.ids = {}  # level -> (idsG per char, idsH per char)
        for k in levels:
            UG = [level_coords(TG, j, k, L)[0] for j in range(self.r)]
            UH = [level_coords(TH, j, k, L)[0] for j in range(self.r)]
            stacked = np.vstack(UG + UH)
            _, inverse = np.unique(stacked, axis=0, return_inverse=True)
            per = self.n ** k
            shape = (self.n,) * k
            split = [
                inverse[t * per : (t + 1) * per].reshape(shape).astype(np.int64)
                for t in range(2 * self.r)
            ]
            self.ids[k] = (split[: self.r], split[self.r :])
        self.sig = {}  # level -> (sigG array, sigH array), pi-agnostic
        for k in levels:
            self.sig[k] = self._pi_agnostic(k)

    def _pi_agnostic(self, k):
        # Multiset over characters of (degree, value id), encoded as sorted
        # rows of degree-tagged ids, shared over both groups.
        idsG, idsH = self.ids[k]
        big = 1 + max(int(x.max()) for x in idsG + idsH)
        degG = self.TG.degrees
        degH = self.TH.degrees
        stackG = np.sort(
            np.stack([idsG[j] + big * degG[j] for j in range(self.r)]), axis=0
        )
        stackH = np.sort(
            np.stack([idsH[j] + big * degH[j] for j in range(self.r)]), axis=0
        )
        flatG = stackG.reshape(self.r, -1).T
        flatH = stackH.reshape(self.r, -1).T
        _, inverse = np.unique(np.vstack([flatG, flatH]), axis=0, return_inverse=True)
        per = self.n ** k
        shape = (self.n,) * k
        return (
            inverse[:per].reshape(shape).astype(np.int64),
            inverse[per:].reshape(shape).astype(np.int64),
        )

    def run(self) -> EquivalenceVerdict:
        colors = self._refine_colors()
        if colors is None:
            return EquivalenceVerdict(False, None, self.nodes, self.levels)
        col_g, col_h = colors
        n = self.n
        beta = [-1] * n
        used = [False] * n
        beta[0] = 0
        used[0] = True
        assigned = [0]
        candidates_of = {
            c: [h for h in range(n) if col_h[h] == c] for c in set(col_g)
        }

        def pair_ok(g, h):
            if 2 in self.levels:
                sG, sH = self.sig[2]
                for g2 in assigned:
                    h2 = beta[g2]
                    if (
                        sG[g, g2] != sH[h, h2]
                        or sG[g2, g] != sH[h2, h]
                        or sG[g, g] != sH[h, h]
                    ):
                        return False
            if 3 in self.levels:
                sG, sH = self.sig[3]
                pool = assigned + [g]
                bpool = [beta[x] for x in assigned] + [h]
                for a in range(len(pool)):
                    for b in range(a, len(pool)):
                        if (
                            sG[g, pool[a], pool[b]]
                            != sH[h, bpool[a], bpool[b]]
                        ):
                            return False
            return True

        def next_element():
            best, best_count = -1, None
            for g in range(n):
                if beta[g] >= 0:
                    continue
                count = sum(
                    1 for h in candidates_of.get(col_g[g], ()) if not used[h]
                )
                if best_count is None or count < best_count:
                    best, best_count = g, count
            return best

        def dfs():
            if len(assigned) == n:
                return self._leaf_match(beta)
            g = next_element()
            for h in candidates_of.get(col_g[g], ()):
                if used[h]:
                    continue
                self.nodes += 1
                if not pair_ok(g, h):
                    continue
                beta[g] = h
                used[h] = True
                assigned.append(g)
                pi = dfs()
                if pi is not None:
                    return pi
                assigned.pop()
                used[h] = False
                beta[g] = -1
            return None

        if col_g[0] != col_h[0]:
            return EquivalenceVerdict(False, None, self.nodes, self.levels)
        pi = dfs()
        if pi is None:
            return EquivalenceVerdict(False, None, self.nodes, self.levels)
        return EquivalenceVerdict(
            True, (tuple(beta), pi), self.nodes, self.levels
        )

    def _refine_colors(self):
        n, r = self.n, self.r
        if 1 in self.levels:
            sG, sH = self.sig[1]
            col_g = [int(sG[g]) for g in range(n)]
            col_h = [int(sH[h]) for h in range(n)]
        else:
            col_g = [0] * n
            col_h = [0] * n
        col_g[0], col_h[0] = -1, -1  # the identity is pinned
        while True:
            col_g, col_h, changed = self._refine_pass(col_g, col_h)
            if sorted(col_g) != sorted(col_h):
                return None
            if not changed:
                return col_g, col_h

    def _refine_pass(self, col_g, col_h):
        n = self.n
        keys = {}

        def key_of(col, other_col, sig2, sig3, x):
            parts = [col[x]]
            if sig2 is not None:
                parts.append(
                    tuple(
                        sorted(
                            (other_col[y], int(sig2[x, y]), int(sig2[y, x]))
                            for y in range(n)
                        )
                    )
                )
            if sig3 is not None:
                parts.append(
                    tuple(
                        sorted(
                            (other_col[y], other_col[z], int(sig3[x, y, z]))
                            for y in range(n)
                            for z in range(n)
                        )
                    )
                )
            return tuple(parts)

        sig2G = self.sig[2][0] if 2 in self.levels else None
        sig2H = self.sig[2][1] if 2 in self.levels else None
        sig3G = self.sig[3][0] if 3 in self.levels else None
        sig3H = self.sig[3][1] if 3 in self.levels else None
        if sig2G is None and sig3G is None:
            return col_g, col_h, False
        new_g, new_h = [], []
        for x in range(n):
            k = key_of(col_g, col_g, sig2G, sig3G, x)
            new_g.append(keys.setdefault(k, len(keys)))
        for x in range(n):
            k = key_of(col_h, col_h, sig2H, sig3H, x)
            new_h.append(keys.setdefault(k, len(keys)))
        changed = len(set(new_g)) != len(set(col_g))
        return new_g, new_h, changed

    def _leaf_match(self, beta):
        idx = np.array(beta, dtype=np.int64)
        compat = [[True] * self.r for _ in range(self.r)]
        for j in range(self.r):
            for j2 in range(self.r):
                if self.TG.degrees[j] != self.TH.degrees[j2]:
                    compat[j][j2] = False
        for k in self.levels:
            idsG, idsH = self.ids[k]
            mapped = []
            for j2 in range(self.r):
                A = idsH[j2]
                if k == 1:
                    mapped.append(A[idx])
                elif k == 2:
                    mapped.append(A[idx][:, idx])
                else:
                    mapped.append(A[idx][:, idx][:, :, idx])
            for j in range(self.r):
                for j2 in range(self.r):
                    if compat[j][j2] and not np.array_equal(idsG[j], mapped[j2]):
                        compat[j][j2] = False
        return _perfect_matching(compat)


def _perfect_matching(compat):
    r = len(compat)
    match_right = [-1] * r

    def augment(j, seen):
        for j2 in range(r):
            if compat[j][j2] and not seen[j2]:
                seen[j2] = True
                if match_right[j2] == -1 or augment(match_right[j2], seen):
                    match_right[j2] = j
                    return True
        return False

    for j in range(r):
        if not augment(j, [False] * r):
            return None
    pi = [0] * r
    for j2, j in enumerate(match_right):
        pi[j] = j2
    return tuple(pi)

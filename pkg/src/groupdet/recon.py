"""Reconstruction of a group from the 1-, 2-, 3-characters of its regular
representation.

The pipeline consumes the regular k-characters ONLY through value oracles
(callables on tuples), never the source Cayley table:

  1. the identity is the unique g with reg1(g) != 0, and inverses are read
     off reg2(g, h) = n^2 [g=e][h=e] - n [gh=e];
  2. for each pair (h, m), subtracting the known indicator terms from
     reg3(., h, m) and dividing by n leaves c(g) = [ghm=e] + [gmh=e], whose
     support (through the inverse map) is the unordered pair {hm, mh};
  3. a Cayley table compatible with all unordered pairs {hm, mh} is found by
     constraint propagation (Latin rows and columns, forced identity row and
     column, incremental associativity inference) plus depth-first search
     over the per-pair orientation choices, max-constraint-first with
     lexicographic tie-break so node counts are reproducible.

Any solution agrees with the source up to swapping the order of some
products, which forces it to be isomorphic or anti-isomorphic to the source;
groups are anti-isomorphic to themselves through inversion, so an
isomorphism witness always exists and is searched for and verified.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .groups import FiniteGroup, IsoWitness, isomorphism_search, validate_table
from .kchar import regular_k_character_int


class OracleError(ValueError):
    """Oracle values are inconsistent with any group."""


class ReconstructionInfeasible(ValueError):
    """No Cayley table realizes the given symmetrized products."""

    def __init__(self, message: str, nodes: int):
        super().__init__(message)
        self.nodes = nodes


@dataclass(frozen=True)
class SymmetrizedProducts:
    """The map (g, h) -> unordered pair {gh, hg}, stored as sorted tuples."""

    n: int
    pairs: dict  # (g, h) -> (p, q) with p <= q, both orders of (g, h) present

    def pair(self, g: int, h: int) -> tuple[int, int]:
        return self.pairs[(g, h)]

    def identity(self) -> int:
        candidates = [
            e
            for e in range(self.n)
            if all(self.pair(e, g) == (g, g) for g in range(self.n))
        ]
        if len(candidates) != 1:
            raise OracleError(
                f"expected exactly one identity, found {len(candidates)}"
            )
        return candidates[0]

    def validate(self) -> None:
        for g in range(self.n):
            for h in range(self.n):
                p = self.pairs.get((g, h))
                if p is None:
                    raise OracleError(f"missing product pair for ({g}, {h})")
                if p != self.pairs.get((h, g)):
                    raise OracleError(f"pair map is not symmetric at ({g}, {h})")
                if not (0 <= p[0] <= p[1] < self.n):
                    raise OracleError(f"pair {p} out of range at ({g}, {h})")
        self.identity()

    def to_json(self) -> dict:
        out = []
        for g in range(self.n):
            for h in range(g, self.n):
                p, q = self.pairs[(g, h)]
                out.append([g, h, [p, q]])
        return {"order": self.n, "pairs": out}

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), sort_keys=True))

    @classmethod
    def from_json(cls, data: dict) -> "SymmetrizedProducts":
        n = int(data["order"])
        pairs = {}
        for g, h, (p, q) in data["pairs"]:
            key = (min(int(p), int(q)), max(int(p), int(q)))
            pairs[(int(g), int(h))] = key
            pairs[(int(h), int(g))] = key
        result = cls(n=n, pairs=pairs)
        result.validate()
        return result

    @classmethod
    def load(cls, path) -> "SymmetrizedProducts":
        return cls.from_json(json.loads(Path(path).read_text()))

    @classmethod
    def from_group(cls, G: FiniteGroup) -> "SymmetrizedProducts":
        """Directly computed map (g, h) -> {gh, hg}; the extraction oracle's target."""
        pairs = {}
        for g in range(G.order):
            for h in range(G.order):
                p, q = G.mul(g, h), G.mul(h, g)
                pairs[(g, h)] = (min(p, q), max(p, q))
        return cls(n=G.order, pairs=pairs)


@dataclass(frozen=True)
class ReconstructionResult:
    group: FiniteGroup
    witness: IsoWitness | None
    search_nodes: int


def regular_oracles(G: FiniteGroup):
    """Value-only views of the regular 1-, 2-, 3-characters of G."""
    return (
        lambda g: regular_k_character_int(G, 1, (g,)),
        lambda g, h: regular_k_character_int(G, 2, (g, h)),
        lambda g, h, m: regular_k_character_int(G, 3, (g, h, m)),
    )


def extract_identity_and_inverses(reg1, reg2, n: int):
    """Identity and inverse map from the regular 1- and 2-character values."""
    nonzero = [g for g in range(n) if reg1(g) != 0]
    if len(nonzero) != 1:
        raise OracleError(
            f"regular 1-character must vanish off one element, got {len(nonzero)}"
        )
    e = nonzero[0]
    if reg1(e) != n:
        raise OracleError(f"regular 1-character peaks at {reg1(e)}, expected {n}")
    inverse = [None] * n
    inverse[e] = e
    for g in range(n):
        if g == e:
            continue
        hits = [h for h in range(n) if reg2(g, h) == -n]
        if len(hits) != 1:
            raise OracleError(f"element {g} has {len(hits)} inverse candidates")
        inverse[g] = hits[0]
    for g in range(n):
        if inverse[inverse[g]] != g:
            raise OracleError(f"inverse map is not an involution at {g}")
    return e, tuple(inverse)


def extract_symmetrized_products(reg1, reg2, reg3, n: int) -> SymmetrizedProducts:
    """Pair map {hm, mh} from the regular 3-character values alone."""
    e, inverse = extract_identity_and_inverses(reg1, reg2, n)

    def is_e(g):
        return g == e

    pairs = {}
    for h in range(n):
        for m in range(n):
            support = []
            for g in range(n):
                value = reg3(g, h, m)
                value -= n ** 3 * (is_e(g) and is_e(h) and is_e(m))
                value += n * n * (
                    (is_e(g) and inverse[h] == m)
                    + (is_e(h) and inverse[g] == m)
                    + (is_e(m) and inverse[g] == h)
                )
                if value % n != 0:
                    raise OracleError(
                        f"regular 3-character at ({g},{h},{m}) is not divisible by n"
                    )
                c = value // n
                if c < 0 or c > 2:
                    raise OracleError(
                        f"support weight {c} at ({g},{h},{m}) is outside {{0,1,2}}"
                    )
                support.extend([g] * c)
            if len(support) != 2:
                raise OracleError(
                    f"support of the pair ({h},{m}) has weight {len(support)}, not 2"
                )
            p, q = sorted(inverse[g] for g in support)
            pairs[(h, m)] = (p, q)
    result = SymmetrizedProducts(n=n, pairs=pairs)
    result.validate()
    return result


# ---------------------------------------------------------------------------
# table completion search


class _Completion:
    def __init__(self, P: SymmetrizedProducts):
        self.P = P
        self.n = P.n
        n = self.n
        self.T = [[-1] * n for _ in range(n)]
        self.row_pos = [dict() for _ in range(n)]  # row g: value -> column
        self.col_pos = [dict() for _ in range(n)]  # col h: value -> row
        self.row_count = [0] * n
        self.col_count = [0] * n
        self.trail: list[tuple[int, int]] = []
        self.nodes = 0

    # -- assignment with propagation ---------------------------------------

    def set_cell(self, g: int, h: int, v: int, queue: list) -> bool:
        cur = self.T[g][h]
        if cur == v:
            return True
        if cur != -1:
            return False
        p, q = self.P.pair(g, h)
        if v != p and v != q:
            return False
        if v in self.row_pos[g] or v in self.col_pos[h]:
            return False
        self.T[g][h] = v
        self.row_pos[g][v] = h
        self.col_pos[h][v] = g
        self.row_count[g] += 1
        self.col_count[h] += 1
        self.trail.append((g, h))
        queue.append((g, h))
        # Transposed cell carries the complementary product.
        if g != h:
            partner = q if v == p else p
            if not self.set_cell(h, g, partner, queue):
                return False
        return True

    def propagate(self, queue: list) -> bool:
        n = self.n
        T = self.T
        while queue:
            x, y = queue.pop()
            v = T[x][y]
            # (x, y, z): T[v][z] = T[x][T[y][z]]
            for z in range(n):
                yz = T[y][z]
                if yz == -1:
                    continue
                lhs = T[v][z]
                rhs = T[x][yz]
                if lhs == -1 and rhs == -1:
                    continue
                if lhs == -1:
                    if not self.set_cell(v, z, rhs, queue):
                        return False
                elif rhs == -1:
                    if not self.set_cell(x, yz, lhs, queue):
                        return False
                elif lhs != rhs:
                    return False
            # (z, x, y): T[T[z][x]][y] = T[z][v]
            for z in range(n):
                zx = T[z][x]
                if zx == -1:
                    continue
                lhs = T[zx][y]
                rhs = T[z][v]
                if lhs == -1 and rhs == -1:
                    continue
                if lhs == -1:
                    if not self.set_cell(zx, y, rhs, queue):
                        return False
                elif rhs == -1:
                    if not self.set_cell(z, v, lhs, queue):
                        return False
                elif lhs != rhs:
                    return False
            # (a, b, y) with T[a][b] = x: T[x][y] = T[a][T[b][y]]
            for b in range(n):
                a = self.col_pos[b].get(x)
                if a is None:
                    continue
                by = T[b][y]
                if by == -1:
                    continue
                rhs = T[a][by]
                if rhs == -1:
                    if not self.set_cell(a, by, v, queue):
                        return False
                elif rhs != v:
                    return False
            # (x, b, c) with T[b][c] = y: T[T[x][b]][c] = T[x][y]
            for b in range(n):
                c = self.row_pos[b].get(y)
                if c is None:
                    continue
                xb = T[x][b]
                if xb == -1:
                    continue
                lhs = T[xb][c]
                if lhs == -1:
                    if not self.set_cell(xb, c, v, queue):
                        return False
                elif lhs != v:
                    return False
        return True

    def undo_to(self, mark: int) -> None:
        while len(self.trail) > mark:
            g, h = self.trail.pop()
            v = self.T[g][h]
            self.T[g][h] = -1
            del self.row_pos[g][v]
            del self.col_pos[h][v]
            self.row_count[g] -= 1
            self.col_count[h] -= 1

    # -- search --------------------------------------------------------------

    def candidates(self, g: int, h: int) -> list[int]:
        p, q = self.P.pair(g, h)
        options = [p] if p == q else [p, q]
        return [
            v
            for v in options
            if v not in self.row_pos[g] and v not in self.col_pos[h]
        ]

    def choose(self):
        """Undetermined cell touching the most determined cells; ties by (g, h)."""
        best = None
        best_score = -1
        n = self.n
        for g in range(n):
            row = self.T[g]
            for h in range(n):
                if row[h] == -1:
                    score = (
                        self.row_count[g]
                        + self.col_count[h]
                        + self.row_count[h]
                        + self.col_count[g]
                    )
                    if score > best_score:
                        best = (g, h)
                        best_score = score
        return best

    def solve(self) -> bool:
        # Seed: identity row and column plus every forced (singleton) pair.
        e = self.P.identity()
        queue: list = []
        for g in range(self.n):
            if not self.set_cell(e, g, g, queue):
                return False
            if not self.set_cell(g, e, g, queue):
                return False
        for g in range(self.n):
            for h in range(g, self.n):
                p, q = self.P.pair(g, h)
                if p == q:
                    if not self.set_cell(g, h, p, queue):
                        return False
        if not self.propagate(queue):
            return False
        return self._dfs()

    def _dfs(self) -> bool:
        cell = self.choose()
        if cell is None:
            return True
        g, h = cell
        options = self.candidates(g, h)
        if not options:
            return False
        for v in options:
            self.nodes += 1
            mark = len(self.trail)
            queue: list = []
            if self.set_cell(g, h, v, queue) and self.propagate(queue):
                if self._dfs():
                    return True
            self.undo_to(mark)
        return False


def reconstruct_group(
    P: SymmetrizedProducts,
    source: FiniteGroup | None = None,
    name: str = "reconstructed",
) -> ReconstructionResult:
    """Find a Cayley table realizing P; certify against `source` when given."""
    P.validate()
    e = P.identity()
    relabel = None
    if e != 0:
        swap = list(range(P.n))
        swap[0], swap[e] = e, 0
        relabel = swap
        pairs = {}
        for (g, h), (p, q) in P.pairs.items():
            key = (swap[p], swap[q])
            pairs[(swap[g], swap[h])] = (min(key), max(key))
        P = SymmetrizedProducts(n=P.n, pairs=pairs)
    search = _Completion(P)
    if not search.solve():
        raise ReconstructionInfeasible(
            "no group table is compatible with the given products", search.nodes
        )
    table = search.T
    validate_table(np.array(table, dtype=np.int64))
    group = FiniteGroup(table, name=name, validate=False)
    witness = None
    if source is not None:
        witness = isomorphism_search(source, group)
        if witness is None or not witness.verify(source, group):
            raise OracleError("reconstructed table is not isomorphic to the source")
    return ReconstructionResult(
        group=group, witness=witness, search_nodes=search.nodes
    )


def roundtrip(G: FiniteGroup) -> ReconstructionResult:
    """Oracle-only extraction, reconstruction, and a verified isomorphism."""
    reg1, reg2, reg3 = regular_oracles(G)
    P = extract_symmetrized_products(reg1, reg2, reg3, G.order)
    return reconstruct_group(P, source=G, name=f"{G.name}~recon")

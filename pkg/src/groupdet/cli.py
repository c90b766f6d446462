"""Command-line surface.

Verbs: group, chartab, kchar, ortho, detcheck, reconstruct, compare.
Exit codes: 0 = success / equivalent / match, 1 = definitive negative
(not equivalent, mismatch, infeasible), 2 = usage or input error.  All
randomness flows through --seed; identical invocations produce byte
identical JSON output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .chartab import character_table, load_character_table, verify_orthogonality
from .detform import (
    factorization_check,
    regular_identity_check,
    seeded_assignments,
)
from .groups import HARD_CAP, FiniteGroup, GroupTableError, build_group
from .kchar import build_k_char_table, equivalence_search, k_character, orthogonality_sum
from .recon import (
    OracleError,
    ReconstructionInfeasible,
    SymmetrizedProducts,
    reconstruct_group,
    roundtrip,
)


def _resolve_group(text: str, max_order: int) -> FiniteGroup:
    """A path to a group file if one exists, otherwise a family spec."""
    path = Path(text)
    if path.exists():
        return FiniteGroup.load(path, max_order=max_order)
    return build_group(text, max_order=max_order)


def _parse_levels(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part)


def _emit(payload: dict, mode: str) -> None:
    if mode == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
        return
    _pretty(payload)


def _pretty(payload, indent: int = 0) -> None:
    pad = "  " * indent
    if isinstance(payload, dict):
        for key, value in payload.items():
            if isinstance(value, (dict, list)) and value:
                print(f"{pad}{key}:")
                _pretty(value, indent + 1)
            else:
                print(f"{pad}{key}: {value}")
    elif isinstance(payload, list):
        for value in payload:
            if isinstance(value, (dict, list)):
                _pretty(value, indent + 1)
            else:
                print(f"{pad}- {value}")
    else:
        print(f"{pad}{payload}")


# ---------------------------------------------------------------------------
# handlers


def _cmd_group(args) -> tuple[dict, int]:
    if args.table:
        G = FiniteGroup.load(args.table, max_order=args.max_order)
        if args.name:
            G = FiniteGroup(G.table, name=args.name, validate=False)
    elif args.perms:
        from .groups import from_generators

        G = from_generators(
            json.loads(args.perms), name=args.name or "G", max_order=args.max_order
        )
    elif args.family:
        G = _resolve_group(args.family, args.max_order)
        if args.name:
            G = FiniteGroup(G.table, name=args.name, validate=False)
    else:
        raise ValueError("group needs one of --family, --perms, or --table")
    if args.out:
        G.save(args.out)
    from .groups import conjugacy_classes

    cc = conjugacy_classes(G)
    return (
        {
            "name": G.name,
            "order": G.order,
            "abelian": G.is_abelian(),
            "exponent": G.exponent(),
            "classes": cc.count,
            "class_sizes": list(cc.sizes()),
            "saved": str(args.out) if args.out else None,
        },
        0,
    )


def _cmd_chartab(args) -> tuple[dict, int]:
    G = _resolve_group(args.group, args.max_order)
    if args.load:
        T = load_character_table(args.load, G)
        source = str(args.load)
    else:
        T = character_table(G, seed=args.seed)
        source = "computed"
    if args.out:
        T.save(args.out)
    violations = verify_orthogonality(T)
    payload = {
        "group": G.name,
        "source": source,
        "degrees": list(T.degrees),
        "conductor": T.conductor,
        "classes": list(T.classes.representatives),
        "rows": [[v.to_json() for v in row] for row in T.rows],
        "orthogonality_violations": violations,
        "saved": str(args.out) if args.out else None,
    }
    return payload, 0 if not violations else 1


def _cmd_kchar(args) -> tuple[dict, int]:
    G = _resolve_group(args.group, args.max_order)
    T = character_table(G, seed=args.seed)
    if args.tuple:
        tup = tuple(int(x) for x in args.tuple.split(","))
        value = k_character(T, args.char, len(tup), tup)
        return (
            {
                "group": G.name,
                "char_index": args.char,
                "k": len(tup),
                "tuple": list(tup),
                "value": value.to_json(),
            },
            0,
        )
    table = build_k_char_table(T, args.char, args.k, orbits_only=args.orbits)
    payload = table.to_json()
    if args.out:
        table.save(args.out)
        payload["saved"] = str(args.out)
    return payload, 0


def _cmd_ortho(args) -> tuple[dict, int]:
    G = _resolve_group(args.group, args.max_order)
    T = character_table(G, seed=args.seed)
    levels = _parse_levels(args.levels)
    pairs = (
        [(args.i, args.j)]
        if args.i is not None and args.j is not None
        else [(i, j) for i in range(T.count) for j in range(T.count) if i < j]
    )
    sums = []
    any_nonzero = False
    for i, j in pairs:
        for k in levels:
            value = orthogonality_sum(T, i, j, k)
            zero = value.is_zero()
            if i != j and not zero:
                any_nonzero = True
            sums.append(
                {"i": i, "j": j, "k": k, "value": value.to_json(), "zero": zero}
            )
    return (
        {"group": G.name, "degrees": list(T.degrees), "sums": sums},
        1 if any_nonzero else 0,
    )


def _cmd_detcheck(args) -> tuple[dict, int]:
    G = _resolve_group(args.group, args.max_order)
    T = character_table(G, seed=args.seed)
    points = seeded_assignments(G.order, args.points, seed=args.seed)
    factorization = [factorization_check(G, T, a) for a in points]
    identity_points = seeded_assignments(G.order, max(args.points // 2, 1), seed=args.seed + 1)
    identities = [regular_identity_check(G, a) for a in identity_points]
    ok = all(r["match"] for r in factorization) and all(
        r["match"] for r in identities
    )
    return (
        {
            "group": G.name,
            "factorization": factorization,
            "regular_identity": identities,
            "match": ok,
        },
        0 if ok else 1,
    )


def _cmd_reconstruct(args) -> tuple[dict, int]:
    if args.pairs:
        P = SymmetrizedProducts.load(args.pairs)
        result = reconstruct_group(P)
        payload = {
            "mode": "pairs",
            "order": result.group.order,
            "search_nodes": result.search_nodes,
            "table": result.group.table.tolist(),
        }
    else:
        G = _resolve_group(args.group, args.max_order)
        result = roundtrip(G)
        payload = {
            "mode": "roundtrip",
            "group": G.name,
            "order": G.order,
            "search_nodes": result.search_nodes,
            "witness_kind": result.witness.kind,
            "witness": list(result.witness.mapping),
        }
    if args.out:
        result.group.save(args.out)
        payload["saved"] = str(args.out)
    return payload, 0


def _cmd_compare(args) -> tuple[dict, int]:
    A = _resolve_group(args.a, args.max_order)
    B = _resolve_group(args.b, args.max_order)
    levels = _parse_levels(args.levels)
    verdict = equivalence_search(A, B, levels=levels, seed=args.seed)
    payload = {
        "a": A.name,
        "b": B.name,
        "levels": list(levels),
        "equivalent": verdict.equivalent,
        "nodes": verdict.nodes,
    }
    if verdict.witness is not None:
        beta, pi = verdict.witness
        payload["element_bijection"] = list(beta)
        payload["character_bijection"] = list(pi)
    return payload, 0 if verdict.equivalent else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupdet",
        description=(
            "Exact group determinants, character tables, k-characters, "
            "equivalence tests, and reconstruction from regular k-characters."
        ),
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", choices=("pretty", "json"), default="pretty")
        p.add_argument("--max-order", type=int, default=HARD_CAP)

    p = sub.add_parser("group", help="build, validate, and save a group")
    p.add_argument("--family", help="family spec, e.g. 'direct_product(cyclic(2),cyclic(4))'")
    p.add_argument("--perms", help="JSON list of generator permutations")
    p.add_argument("--table", help="group JSON file to validate")
    p.add_argument("--name")
    p.add_argument("--out")
    common(p)
    p.set_defaults(handler=_cmd_group)

    p = sub.add_parser("chartab", help="compute or verify a character table")
    p.add_argument("--group", required=True, help="group file or family spec")
    p.add_argument("--load", help="verify a saved table instead of computing")
    p.add_argument("--out")
    common(p)
    p.set_defaults(handler=_cmd_chartab)

    p = sub.add_parser("kchar", help="k-character values or tables")
    p.add_argument("--group", required=True)
    p.add_argument("--char", type=int, default=0, help="character index")
    p.add_argument("--k", type=int, default=2, choices=(1, 2, 3))
    p.add_argument("--tuple", help="comma-separated element ids")
    p.add_argument("--orbits", action="store_true",
                   help="restrict to conjugation-orbit representatives")
    p.add_argument("--out")
    common(p)
    p.set_defaults(handler=_cmd_kchar)

    p = sub.add_parser("ortho", help="orthogonality sums over G^k")
    p.add_argument("--group", required=True)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--levels", default="1,2,3")
    common(p)
    p.set_defaults(handler=_cmd_ortho)

    p = sub.add_parser("detcheck", help="determinant factorization and norm checks")
    p.add_argument("--group", required=True)
    p.add_argument("--points", type=int, default=20)
    common(p)
    p.set_defaults(handler=_cmd_detcheck)

    p = sub.add_parser("reconstruct", help="roundtrip a group or complete a pairs file")
    p.add_argument("--group", help="group file or family spec (roundtrip mode)")
    p.add_argument("--pairs", help="symmetrized-products JSON (bare mode)")
    p.add_argument("--out")
    common(p)
    p.set_defaults(handler=_cmd_reconstruct)

    p = sub.add_parser("compare", help="k-character-table equivalence of two groups")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--levels", default="1,2,3")
    common(p)
    p.set_defaults(handler=_cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.handler(args)
    except ReconstructionInfeasible as exc:
        _emit({"infeasible": True, "search_nodes": exc.nodes, "error": str(exc)},
              args.output)
        return 1
    except (GroupTableError, OracleError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(payload, args.output)
    return code


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line interface.

Exit codes: 0 success, 1 a verified identity failed or a search found
nothing, 2 usage or parse errors.  All output is deterministic given the
flags and seed; --format json emits a single JSON document on stdout.
The environment variable QTREES_HARD_CAP (an integer) raises the hard
size caps for the verify/enumerate/search commands.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import invariant, presimplicial, qpoly, trees
from .qpoly import QPoly, q_binomial, q_factorial, to_json_coeffs, to_latex
from .trees import BoundExceeded, ParseError, parse_delayed, parse_tree, serialize

_DEFAULT_SIZES = {"wedge": 8, "state": 8, "reroot": 7, "block": 9, "presimplicial": 6}
_HARD_CAPS = {
    "wedge": 10,
    "state": 10,
    "reroot": 9,
    "block": 12,
    "presimplicial": 7,
    "enumerate-plane": trees.DEFAULT_PLANE_BOUND,
    "enumerate-topological": presimplicial.DEFAULT_TOP_BOUND,
    "search": invariant.DEFAULT_SEARCH_BOUND,
}


def _cap(name: str) -> int:
    cap = _HARD_CAPS[name]
    override = os.environ.get("QTREES_HARD_CAP")
    if override:
        try:
            cap = max(cap, int(override))
        except ValueError:
            pass
    return cap


def _poly_latex(poly: QPoly) -> str:
    text = to_latex(poly)
    if poly:
        factored = qpoly.cyclotomic_factor(poly)
        if factored.remainder == qpoly.ONE and factored.factors:
            pieces = []
            if factored.monomial_exponent == 1:
                pieces.append("q")
            elif factored.monomial_exponent > 1:
                pieces.append(f"q^{{{factored.monomial_exponent}}}")
            for d in sorted(factored.factors):
                mult = factored.factors[d]
                pieces.append(f"\\Phi_{{{d}}}" + (f"^{{{mult}}}" if mult > 1 else ""))
            text += " = " + " ".join(pieces)
    return text


def _emit_poly(poly: QPoly, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps({"coeffs": to_json_coeffs(poly)}))
    elif fmt == "latex":
        print(_poly_latex(poly))
    else:
        print(str(poly))


def _cmd_q(args) -> int:
    tree = parse_tree(args.tree)
    if args.algo == "recursive":
        _emit_poly(invariant.q_poly(tree), args.format)
        return 0
    if args.algo == "state":
        _emit_poly(invariant.q_poly_state(tree), args.format)
        return 0
    rec = invariant.q_poly(tree)
    state = invariant.q_poly_state(tree)
    match = rec == state
    if args.format == "json":
        print(
            json.dumps(
                {
                    "recursive": {"coeffs": to_json_coeffs(rec)},
                    "state": {"coeffs": to_json_coeffs(state)},
                    "match": match,
                }
            )
        )
    else:
        render = to_latex if args.format == "latex" else str
        print(f"recursive: {render(rec)}")
        print(f"state: {render(state)}")
        if not match:
            print("error: the two algorithms disagree", file=sys.stderr)
    return 0 if match else 1


def _cmd_q_delayed(args) -> int:
    delayed = parse_delayed(args.tree)
    _emit_poly(invariant.q_poly_delayed(delayed), args.format)
    return 0


def _cmd_reduce(args) -> int:
    tree = presimplicial.normalize_topological(parse_tree(args.tree))
    value = presimplicial.reduce_to_point(tree)
    n = presimplicial.leaf_count(tree)
    expected = q_factorial(n)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "tree": args.tree,
                    "normalized": serialize(tree),
                    "leaves": n,
                    "coeffs": to_json_coeffs(value),
                    "expected": to_json_coeffs(expected),
                    "match": value == expected,
                }
            )
        )
    elif args.format == "latex":
        print(f"{to_latex(value)} = [{n}]_q!")
    else:
        suffix = f"(= [{n}]_q!)" if value == expected else f"(expected [{n}]_q! = {expected})"
        print(f"{value} {suffix}")
    return 0


def _cmd_enumerate(args) -> int:
    cap = _cap(f"enumerate-{args.kind}")
    if args.size > cap:
        print(f"error: size {args.size} exceeds hard cap {cap}", file=sys.stderr)
        return 2
    try:
        if args.kind == "plane":
            found = trees.enumerate_plane_trees(args.size, bound=cap)
        else:
            found = presimplicial.enumerate_top_trees(args.size, bound=cap)
    except (BoundExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    listing = [serialize(t) for t in found]
    if args.format == "json":
        print(json.dumps({"kind": args.kind, "size": args.size, "count": len(listing), "trees": listing}))
    else:
        print(len(listing))
        for line in listing:
            print(line)
    return 0


def _cmd_search_delayed(args) -> int:
    try:
        coeffs = [int(part) for part in args.target.replace("[", "").replace("]", "").split(",")]
    except ValueError:
        print(f"error: target must be comma-separated integers, got {args.target!r}", file=sys.stderr)
        return 2
    cap = _cap("search")
    if args.max_edges > cap:
        print(f"error: --max-edges {args.max_edges} exceeds hard cap {cap}", file=sys.stderr)
        return 2
    target = QPoly(coeffs)
    hits = invariant.search_delayed(target, args.max_edges, bound=cap)
    rendered = [trees.serialize_delayed(h) for h in hits]
    if args.format == "json":
        print(
            json.dumps(
                {
                    "target": to_json_coeffs(target),
                    "max_edges": args.max_edges,
                    "count": len(rendered),
                    "witnesses": rendered,
                }
            )
        )
    else:
        for line in rendered:
            print(line)
        if not rendered:
            print("no witness found", file=sys.stderr)
    return 0 if rendered else 1


# -- verify families ---------------------------------------------------------


def _verify_wedge(max_size: int, seed: int) -> tuple[dict, list[str]]:
    pairs = 0
    violations = 0
    for left_edges in range(max_size + 1):
        for right_edges in range(max_size - left_edges + 1):
            factor = q_binomial(left_edges + right_edges, left_edges)
            for left in trees.enumerate_plane_trees(left_edges):
                left_poly = invariant.q_poly(left)
                for right in trees.enumerate_plane_trees(right_edges):
                    pairs += 1
                    glued = invariant.q_poly(trees.wedge([left, right]))
                    if glued != factor * left_poly * invariant.q_poly(right):
                        violations += 1
    summary = {"pairs": pairs, "violations": violations}
    return summary, [f"wedge: checked {pairs} ordered pairs, {violations} violations"]

def _verify_state(max_size: int, seed: int) -> tuple[dict, list[str]]:
    checked = 0
    violations = 0
    for edges in range(max_size + 1):
        for tree in trees.enumerate_plane_trees(edges):
            checked += 1
            if invariant.q_poly(tree) != invariant.q_poly_state(tree):
                violations += 1
    rng = random.Random(seed)
    random_checked = 0
    for _ in range(25):
        tree = trees.random_plane_tree(12, rng)
        random_checked += 1
        if invariant.q_poly(tree) != invariant.q_poly_state(tree):
            violations += 1
    summary = {"exhaustive": checked, "random": random_checked, "violations": violations}
    return summary, [
        f"state: checked {checked} trees exhaustively and {random_checked} random"
        f" 12-edge trees, {violations} violations"
    ]


def _verify_reroot(max_size: int, seed: int) -> tuple[dict, list[str]]:
    edges_checked = 0
    violations = 0
    for edges in range(max_size + 1):
        for tree in trees.enumerate_plane_trees(edges):
            for addr in _all_vertices(tree):
                if not addr:
                    continue
                edges_checked += 1
                if not invariant.check_reroot(tree, addr).holds:
                    violations += 1
    summary = {"edges": edges_checked, "violations": violations}
    return summary, [f"reroot: checked {edges_checked} edges, {violations} violations"]


def _all_vertices(tree, prefix=()):
    yield prefix
    for i, child in enumerate(tree.children):
        yield from _all_vertices(child, prefix + (i,))


def _verify_block(max_size: int, seed: int) -> tuple[dict, list[str]]:
    specs = invariant.sample_block_specs(500, max_size, seed=seed)
    violations = 0
    for spec in specs:
        closed = invariant.q_poly_block(spec)
        oracle = invariant.q_poly_delayed(invariant.assemble_blocks(spec))
        if closed != oracle:
            violations += 1
    summary = {"specs": len(specs), "violations": violations}
    return summary, [f"block: checked {len(specs)} sampled specs, {violations} mismatches"]


def _verify_presimplicial(max_size: int, seed: int) -> tuple[dict, list[str]]:
    report = presimplicial.check_identities(max_size)
    lines = [
        "presimplicial: checked "
        + ", ".join(f"{name}={count}" for name, count in sorted(report.checked.items()))
        + f", {len(report.violations)} violations"
    ]
    boundary_failures = 0
    basis = 0
    for level_leaves in range(1, max_size + 1):
        for tree in presimplicial.enumerate_top_trees(level_leaves):
            basis += 1
            once = presimplicial.q_boundary_at({tree: 1}, -1)
            if presimplicial.q_boundary_at(once, -1):
                boundary_failures += 1
            if presimplicial.reduce_to_point(tree) != q_factorial(level_leaves):
                boundary_failures += 1
    lines.append(
        f"presimplicial: alternating boundary squares to zero and reduction matches"
        f" the q-factorial on {basis} basis trees, {boundary_failures} failures"
    )
    witness = report.double_degeneracy_witness
    if witness:
        tree_text, index, lhs, rhs = witness
        lines.append(
            f"presimplicial: double-degeneracy counterexample on {tree_text!r}"
            f" at index {index}: {lhs} != {rhs}"
        )
    else:
        lines.append("presimplicial: no double-degeneracy counterexample found")
    summary = report.as_dict()
    summary["basis_trees"] = basis
    summary["boundary_failures"] = boundary_failures
    ok = report.ok and boundary_failures == 0
    summary["ok"] = ok
    return summary, lines


_FAMILIES = {
    "wedge": _verify_wedge,
    "state": _verify_state,
    "reroot": _verify_reroot,
    "block": _verify_block,
    "presimplicial": _verify_presimplicial,
}


def _cmd_verify(args) -> int:
    family = args.family
    max_size = args.max_size if args.max_size is not None else _DEFAULT_SIZES[family]
    cap = _cap(family)
    if max_size > cap or max_size < 0:
        print(f"error: --max-size {max_size} outside 0..{cap} for {family}", file=sys.stderr)
        return 2
    summary, lines = _FAMILIES[family](max_size, args.seed)
    if family == "presimplicial":
        ok = bool(summary.get("ok"))
    else:
        ok = summary.get("violations", 1) == 0
    if args.format == "json":
        print(json.dumps({"family": family, "max_size": max_size, "ok": ok, "summary": summary}))
    else:
        for line in lines:
            print(line)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtrees",
        description="Exact q-polynomial invariants of plane rooted trees.",
        epilog="Set QTREES_HARD_CAP to raise the hard size caps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p, latex=True):
        choices = ["plain", "json"] + (["latex"] if latex else [])
        p.add_argument("--format", choices=choices, default="plain")

    p = sub.add_parser("q", help="q-polynomial of a plane tree")
    p.add_argument("tree", help='tree text, e.g. "(.(..))"')
    p.add_argument("--algo", choices=["recursive", "state", "both"], default="recursive")
    add_format(p)
    p.set_defaults(func=_cmd_q)

    p = sub.add_parser("q-delayed", help="q-polynomial of a tree with leaf delays")
    p.add_argument("tree", help='delayed tree text, e.g. "(2 1)"')
    add_format(p)
    p.set_defaults(func=_cmd_q_delayed)

    p = sub.add_parser("verify", help="run an identity suite and report violations")
    p.add_argument("family", choices=sorted(_FAMILIES))
    p.add_argument("--max-size", type=int, default=None, help="edges (leaves for presimplicial)")
    p.add_argument("--seed", type=int, default=0)
    add_format(p, latex=False)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search-delayed", help="find delayed trees with a target polynomial")
    p.add_argument("--target", required=True, help="comma-separated ascending coefficients")
    p.add_argument("--max-edges", type=int, default=4)
    add_format(p, latex=False)
    p.set_defaults(func=_cmd_search_delayed)

    p = sub.add_parser("reduce", help="rewrite a tree to a multiple of the point")
    p.add_argument("tree", help="tree text; normalized topologically first")
    add_format(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("enumerate", help="list trees of a given size")
    p.add_argument("kind", choices=["plane", "topological"])
    p.add_argument("--size", type=int, required=True, help="edges (plane) or leaves (topological)")
    add_format(p, latex=False)
    p.set_defaults(func=_cmd_enumerate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

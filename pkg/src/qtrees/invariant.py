"""The q-polynomial of a plane rooted tree.

Two independent algorithms are provided: the defining leaf-removal
recursion and the vertex-weight product.  On top of them sit the
change-of-root identity check, the delayed-leaf variant with its block
closed form, and a bounded search for delayed trees hitting a target
polynomial.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import NamedTuple

from .qpoly import ONE, QPoly, q_integer, q_multinomial
from .trees import (
    BoundExceeded,
    DelayedTree,
    PlaneTree,
    RootHasNoEdge,
    edge_count,
    enumerate_plane_trees,
    leaf_weights,
    leaves,
    node_at,
    random_plane_tree,
    remove_leaf,
    reroot_across_edge,
    side_edge_counts,
    wedge,
)

__all__ = [
    "q_poly",
    "q_poly_state",
    "boltzmann_weight",
    "check_reroot",
    "RerootCheck",
    "q_poly_delayed",
    "BlockSpec",
    "InadmissibleDelays",
    "q_poly_block",
    "assemble_blocks",
    "sample_block_specs",
    "search_delayed",
    "DEFAULT_SEARCH_BOUND",
    "clear_caches",
]

DEFAULT_SEARCH_BOUND = 6


class InadmissibleDelays(ValueError):
    """Block delays break the admissibility chain required by the closed
    block formula."""


_QPOLY_MEMO: dict[PlaneTree, QPoly] = {}
_DELAYED_MEMO: dict[tuple[PlaneTree, tuple[int, ...]], QPoly] = {}


def clear_caches() -> None:
    """Drop the memo tables; results are unaffected, only speed."""
    _QPOLY_MEMO.clear()
    _DELAYED_MEMO.clear()


def q_poly(tree: PlaneTree) -> QPoly:
    """The q-polynomial by its defining recursion.

    The point maps to 1; otherwise sum q**r(v) * Q(T - v) over all leaves v,
    where r(v) counts the edges strictly right of the root-to-v path.
    Results are memoized on the tree shape.
    """
    cached = _QPOLY_MEMO.get(tree)
    if cached is not None:
        return cached
    if not tree.children:
        val = ONE
    else:
        acc: list[int] = []
        for addr, rw in leaf_weights(tree):
            sub = q_poly(remove_leaf(tree, addr)).coeffs
            need = rw + len(sub)
            if len(acc) < need:
                acc.extend([0] * (need - len(acc)))
            for j, c in enumerate(sub):
                acc[rw + j] += c
        val = QPoly(acc)
    _QPOLY_MEMO[tree] = val
    return val


def q_poly_state(tree: PlaneTree) -> QPoly:
    """The q-polynomial as a product of per-vertex weights.

    Each vertex contributes the Gaussian multinomial of the sizes (edges
    plus the hanging edge) of its child subtrees; leaves contribute 1.
    Agrees with q_poly on every tree.
    """
    out = q_multinomial(tuple(edge_count(c) + 1 for c in tree.children))
    for c in tree.children:
        out = out * q_poly_state(c)
    return out


def boltzmann_weight(tree: PlaneTree, addr: tuple) -> QPoly:
    """Weight of one vertex in the state product: the Gaussian multinomial
    of its child subtree sizes.  Leaves weigh 1."""
    node = node_at(tree, addr)
    return q_multinomial(tuple(edge_count(c) + 1 for c in node.children))


class RerootCheck(NamedTuple):
    lhs: QPoly
    rhs: QPoly
    holds: bool


def check_reroot(tree: PlaneTree, addr: tuple) -> RerootCheck:
    """Cross-multiplied change-of-root identity for the edge above addr.

    With near/far edge counts (e1, e2) on the two sides of the edge, the
    q-polynomial rooted at the near endpoint times [e2 + 1] must equal the
    q-polynomial rooted at the far endpoint times [e1 + 1].  Stated
    multiplicatively, so everything stays in Z[q].
    """
    if not addr:
        raise RootHasNoEdge("the root has no incoming edge")
    near_edges, far_edges = side_edge_counts(tree, addr)
    rooted_near = tree if len(addr) == 1 else reroot_across_edge(tree, addr[:-1])
    rooted_far = reroot_across_edge(tree, addr)
    lhs = q_poly(rooted_near) * q_integer(far_edges + 1)
    rhs = q_poly(rooted_far) * q_integer(near_edges + 1)
    return RerootCheck(lhs, rhs, lhs == rhs)


# -- delayed variant -----------------------------------------------------------


def q_poly_delayed(delayed: DelayedTree) -> QPoly:
    """The q-polynomial of a tree with leaf delays.

    Only leaves with delay 1 may be removed; after each removal every
    surviving leaf delay drops by one (floor 1) and a freshly exposed
    parent becomes a delay-1 leaf.  The point gives 1; a nonpoint tree
    with no delay-1 leaf gives 0 (the sum is empty).
    """
    return _delayed_value(delayed.tree, delayed.delay_vector())


def _delayed_value(tree: PlaneTree, delays: tuple[int, ...]) -> QPoly:
    if not tree.children:
        return ONE
    key = (tree, delays)
    cached = _DELAYED_MEMO.get(key)
    if cached is not None:
        return cached
    acc: list[int] = []
    for i, (addr, rw) in enumerate(leaf_weights(tree)):
        if delays[i] != 1:
            continue
        smaller = remove_leaf(tree, addr)
        ticked = [d - 1 if d > 2 else 1 for d in delays]
        parent = node_at(tree, addr[:-1])
        if len(parent.children) > 1:
            del ticked[i]  # the leaf slot disappears
        elif len(addr) == 1:
            ticked = []  # the root was stripped bare: the point remains
        else:
            ticked[i] = 1  # the parent is exposed as a new leaf
        sub = _delayed_value(smaller, tuple(ticked)).coeffs
        need = rw + len(sub)
        if len(acc) < need:
            acc.extend([0] * (need - len(acc)))
        for j, c in enumerate(sub):
            acc[rw + j] += c
    val = QPoly(acc)
    _DELAYED_MEMO[key] = val
    return val


# -- constant-delay blocks -------------------------------------------------------


@dataclass(frozen=True)
class BlockSpec:
    """Blocks of a wedge, listed left to right, each with a constant leaf
    delay.  The rightmost block must have delay 1 and, reading right to
    left, each delay may exceed neither the next one nor one plus the edge
    count accumulated so far."""

    blocks: tuple[tuple[PlaneTree, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple((t, int(s)) for t, s in self.blocks))


def _validated_right_to_left(spec: BlockSpec) -> list[tuple[PlaneTree, int]]:
    if not spec.blocks:
        raise ValueError("empty block list")
    rtl = list(reversed(spec.blocks))
    if rtl[0][1] != 1:
        raise InadmissibleDelays("the rightmost block must have delay 1")
    prefix = edge_count(rtl[0][0])
    for i in range(1, len(rtl)):
        delay = rtl[i][1]
        prev = rtl[i - 1][1]
        if not prev <= delay <= prefix + 1:
            raise InadmissibleDelays(
                f"delay {delay} at block {i} falls outside [{prev}, {prefix + 1}]"
            )
        prefix += edge_count(rtl[i][0])
    return rtl


def q_poly_block(spec: BlockSpec) -> QPoly:
    """Closed formula for a wedge of constant-delay blocks.

    Equals the delayed recursion on the assembled tree whenever the delay
    chain is admissible; inadmissible specs are refused rather than
    evaluated.
    """
    rtl = _validated_right_to_left(spec)
    out = ONE
    prefix = edge_count(rtl[0][0])
    for i in range(1, len(rtl)):
        tree_i, delay_i = rtl[i]
        edges_i = edge_count(tree_i)
        out = out * q_multinomial((edges_i, prefix - delay_i + 1))
        prefix += edges_i
    for tree_i, _ in spec.blocks:
        out = out * q_poly(tree_i)
    return out


def assemble_blocks(spec: BlockSpec) -> DelayedTree:
    """Wedge the blocks and label each block's leaves with its delay."""
    tree = wedge([t for t, _ in spec.blocks])
    vec: list[int] = []
    for t, s in spec.blocks:
        vec.extend([s] * len(leaves(t)))
    return DelayedTree(tree, dict(zip(leaves(tree), vec)))


def sample_block_specs(count: int, max_total_edges: int, seed: int = 0) -> list[BlockSpec]:
    """Seeded sample of admissible block specs with the given edge budget."""
    rng = random.Random(seed)
    out: list[BlockSpec] = []
    while len(out) < count:
        k = rng.randint(2, 4)
        if k > max_total_edges:
            continue
        total = rng.randint(k, max_total_edges)
        cuts = sorted(rng.sample(range(1, total), k - 1)) if k > 1 else []
        sizes = [b - a for a, b in zip([0] + cuts, cuts + [total])]
        right_to_left: list[tuple[PlaneTree, int]] = []
        prefix = 0
        prev_delay = 1
        for i, edges in enumerate(sizes):
            delay = 1 if i == 0 else rng.randint(prev_delay, prefix + 1)
            right_to_left.append((random_plane_tree(edges, rng), delay))
            prefix += edges
            prev_delay = delay
        out.append(BlockSpec(tuple(reversed(right_to_left))))
    return out


# -- search ----------------------------------------------------------------------


def search_delayed(
    target: QPoly, max_edges: int, bound: int = DEFAULT_SEARCH_BOUND
) -> list[DelayedTree]:
    """All delayed trees with at most max_edges edges whose delayed
    q-polynomial equals the target, in a fixed order.

    Delays range over 1..edge count: a larger label never acts before the
    game ends, so it adds no new polynomials at fixed size.
    """
    if max_edges < 0:
        raise ValueError("edge bound must be nonnegative")
    if max_edges > bound:
        raise BoundExceeded(f"edge bound {max_edges} exceeds bound {bound}")
    hits: list[DelayedTree] = []
    for edges in range(max_edges + 1):
        top_delay = max(edges, 1)
        for tree in enumerate_plane_trees(edges):
            addrs = leaves(tree)
            for combo in itertools.product(range(1, top_delay + 1), repeat=len(addrs)):
                if _delayed_value(tree, combo) == target:
                    hits.append(DelayedTree(tree, dict(zip(addrs, combo))))
    return hits

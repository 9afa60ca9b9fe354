"""Plane rooted trees: grammar, vertex addressing, surgery, enumeration.

Text grammar:  Tree := "." | "(" Tree+ ")" .  A "." is a leaf; an internal
node lists its children left to right, and that order is significant (it is
the plane embedding).  The delayed grammar writes each leaf as a positive
integer label, with "." accepted as shorthand for 1.

A vertex is addressed by the sequence of 0-based child indices walked from
the root; the empty address is the root itself.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping

__all__ = [
    "PlaneTree",
    "DelayedTree",
    "VertexAddr",
    "POINT",
    "ParseError",
    "ZeroDelay",
    "NotALeaf",
    "InvalidAddress",
    "RootHasNoEdge",
    "BoundExceeded",
    "DEFAULT_PLANE_BOUND",
    "parse_tree",
    "parse_delayed",
    "serialize",
    "serialize_delayed",
    "node_at",
    "edge_count",
    "leaves",
    "leaf_weights",
    "remove_leaf",
    "right_weight",
    "wedge",
    "star",
    "side_edge_counts",
    "reroot_across_edge",
    "enumerate_plane_trees",
    "permute_children",
    "random_plane_tree",
    "format_addr",
]

VertexAddr = tuple  # sequence of 0-based child indices, () = root

DEFAULT_PLANE_BOUND = 10


class ParseError(ValueError):
    """Malformed tree text; carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class ZeroDelay(ParseError):
    """A delay literal of 0 appeared; delays must be positive."""


class NotALeaf(ValueError):
    """The addressed vertex is not a leaf."""


class InvalidAddress(IndexError):
    """The address walks out of the tree."""


class RootHasNoEdge(ValueError):
    """An edge operation was pointed at the root address."""


class BoundExceeded(ValueError):
    """A requested size exceeds the configured safety bound."""


class PlaneTree:
    """A plane rooted tree: an immutable ordered tuple of child subtrees.

    A node with no children is a leaf; the whole value is the subtree rooted
    at that node.  Hashes are precomputed so trees work as dictionary keys.
    """

    __slots__ = ("children", "_hash")

    def __init__(self, children: Iterable["PlaneTree"] = ()):
        kids = tuple(children)
        for c in kids:
            if not isinstance(c, PlaneTree):
                raise TypeError("children must be PlaneTree values")
        self.children = kids
        self._hash = hash(kids)

    def __eq__(self, other: object):
        if self is other:
            return True
        if not isinstance(other, PlaneTree):
            return NotImplemented
        return self._hash == other._hash and self.children == other.children

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PlaneTree({serialize(self)!r})"


POINT = PlaneTree()


# -- text grammar ------------------------------------------------------------


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def parse_tree(text: str) -> PlaneTree:
    """Parse  Tree := "." | "(" Tree+ ")"  with optional whitespace."""
    tree, pos = _parse_node(text, _skip_ws(text, 0))
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise ParseError("trailing input", pos)
    return tree


def _parse_node(text: str, pos: int) -> tuple[PlaneTree, int]:
    if pos >= len(text):
        raise ParseError("unexpected end of input", pos)
    ch = text[pos]
    if ch == ".":
        return POINT, pos + 1
    if ch == "(":
        kids = []
        pos = _skip_ws(text, pos + 1)
        while pos < len(text) and text[pos] != ")":
            kid, pos = _parse_node(text, pos)
            kids.append(kid)
            pos = _skip_ws(text, pos)
        if pos >= len(text):
            raise ParseError("unbalanced '('", pos)
        if not kids:
            raise ParseError("empty node", pos)
        return PlaneTree(kids), pos + 1
    raise ParseError(f"unexpected character {ch!r}", pos)


def serialize(tree: PlaneTree) -> str:
    """Canonical text, whitespace-free; round-trips through parse_tree."""
    if not tree.children:
        return "."
    return "(" + "".join(serialize(c) for c in tree.children) + ")"


# -- structure queries -------------------------------------------------------


def node_at(tree: PlaneTree, addr: VertexAddr) -> PlaneTree:
    """Subtree rooted at the addressed vertex."""
    node = tree
    for i in addr:
        if not 0 <= i < len(node.children):
            raise InvalidAddress(f"no vertex at address {format_addr(addr)}")
        node = node.children[i]
    return node


def _size(tree: PlaneTree) -> int:
    return 1 + sum(_size(c) for c in tree.children)


def edge_count(tree: PlaneTree) -> int:
    """Number of edges: node count minus one."""
    return _size(tree) - 1


def leaves(tree: PlaneTree) -> tuple[VertexAddr, ...]:
    """Addresses of all childless non-root vertices, left to right."""
    out: list[VertexAddr] = []

    def walk(node: PlaneTree, addr: VertexAddr) -> None:
        if not node.children:
            if addr:
                out.append(addr)
            return
        for i, c in enumerate(node.children):
            walk(c, addr + (i,))

    walk(tree, ())
    return tuple(out)


def leaf_weights(tree: PlaneTree) -> list[tuple[VertexAddr, int]]:
    """All leaves with their right weights, in one left-to-right pass.

    Equivalent to [(v, right_weight(tree, v)) for v in leaves(tree)] but
    linear in the tree size.
    """

    def walk(node: PlaneTree, addr: VertexAddr, acc: int) -> tuple[int, list]:
        if not node.children:
            return 1, ([(addr, acc)] if addr else [])
        suffix = 0
        chunks = []
        for i in range(len(node.children) - 1, -1, -1):
            size_c, leaves_c = walk(node.children[i], addr + (i,), acc + suffix)
            chunks.append(leaves_c)
            suffix += size_c
        chunks.reverse()
        return 1 + suffix, [item for chunk in chunks for item in chunk]

    return walk(tree, (), 0)[1]


def remove_leaf(tree: PlaneTree, addr: VertexAddr) -> PlaneTree:
    """Delete a leaf and its edge.  No smoothing: a parent left childless
    becomes a new leaf."""
    if not addr:
        raise NotALeaf("the root is not a leaf")
    if node_at(tree, addr).children:
        raise NotALeaf(f"vertex {format_addr(addr)} has children")

    def rebuild(node: PlaneTree, rest: VertexAddr) -> PlaneTree:
        i = rest[0]
        kids = node.children
        if len(rest) == 1:
            return PlaneTree(kids[:i] + kids[i + 1 :])
        return PlaneTree(kids[:i] + (rebuild(kids[i], rest[1:]),) + kids[i + 1 :])

    return rebuild(tree, addr)


def right_weight(tree: PlaneTree, addr: VertexAddr) -> int:
    """Edges strictly to the right of the root-to-leaf path.

    For each vertex on the path (the leaf excluded), every sibling subtree
    with a larger child index counts with its connecting edge, i.e. its node
    count.
    """
    node = node_at(tree, addr)
    if node.children or not addr:
        raise NotALeaf(f"vertex {format_addr(addr)} is not a leaf")
    total = 0
    cur = tree
    for i in addr:
        for sib in cur.children[i + 1 :]:
            total += _size(sib)
        cur = cur.children[i]
    return total


# -- surgery -----------------------------------------------------------------


def wedge(parts: Iterable[PlaneTree]) -> PlaneTree:
    """Glue trees at their roots; children concatenate left to right."""
    ps = tuple(parts)
    if not ps:
        raise ValueError("wedge of no trees")
    return PlaneTree(tuple(itertools.chain.from_iterable(p.children for p in ps)))


def star(rays: int) -> PlaneTree:
    """Root with the given number of leaf children; 0 gives the point."""
    if rays < 0:
        raise ValueError("ray count must be nonnegative")
    return PlaneTree((POINT,) * rays)


def side_edge_counts(tree: PlaneTree, addr: VertexAddr) -> tuple[int, int]:
    """Edge counts (root side, far side) of the edge above the addressed
    vertex; the two counts plus the edge itself sum to the total."""
    if not addr:
        raise RootHasNoEdge("the root has no incoming edge")
    below = edge_count(node_at(tree, addr))
    return edge_count(tree) - 1 - below, below


def reroot_across_edge(tree: PlaneTree, addr: VertexAddr) -> PlaneTree:
    """Re-root the tree at the addressed vertex.

    The former parent chain is reversed: each former parent is attached as
    the last child of its former child.  The abstract (unordered) rooted
    tree is unchanged.
    """
    if not addr:
        raise RootHasNoEdge("the root has no incoming edge")
    node_at(tree, addr)  # validate the address
    spine = []
    cur = tree
    for i in addr:
        spine.append((cur, i))
        cur = cur.children[i]
    hanging = None
    for node, i in spine:
        rest = node.children[:i] + node.children[i + 1 :]
        if hanging is not None:
            rest = rest + (hanging,)
        hanging = PlaneTree(rest)
    return PlaneTree(cur.children + (hanging,))


# -- enumeration and randomization --------------------------------------------


@lru_cache(maxsize=None)
def _plane_trees(edges: int) -> tuple[PlaneTree, ...]:
    if edges == 0:
        return (POINT,)
    out = []
    for first in range(edges):
        for head in _plane_trees(first):
            for rest in _plane_trees(edges - 1 - first):
                out.append(PlaneTree((head,) + rest.children))
    return tuple(out)


def enumerate_plane_trees(edges: int, bound: int = DEFAULT_PLANE_BOUND) -> tuple[PlaneTree, ...]:
    """All plane rooted trees with exactly the given edge count, each once,
    in a fixed order (first-child subtree size ascending)."""
    if edges < 0:
        raise ValueError("edge count must be nonnegative")
    if edges > bound:
        raise BoundExceeded(f"edge count {edges} exceeds bound {bound}")
    return _plane_trees(edges)


@lru_cache(maxsize=None)
def _catalan(n: int) -> int:
    if n == 0:
        return 1
    return sum(_catalan(i) * _catalan(n - 1 - i) for i in range(n))


def random_plane_tree(edges: int, rng: random.Random) -> PlaneTree:
    """Uniformly random plane tree with the given edge count."""
    if edges == 0:
        return POINT
    r = rng.randrange(_catalan(edges))
    acc = 0
    first = 0
    for first in range(edges):
        acc += _catalan(first) * _catalan(edges - 1 - first)
        if r < acc:
            break
    head = random_plane_tree(first, rng)
    rest = random_plane_tree(edges - 1 - first, rng)
    return PlaneTree((head,) + rest.children)


def permute_children(tree: PlaneTree, seed: int) -> PlaneTree:
    """Seeded reshuffle of the child order at every vertex; the abstract
    rooted tree is unchanged."""
    rng = random.Random(seed)

    def go(node: PlaneTree) -> PlaneTree:
        kids = [go(c) for c in node.children]
        rng.shuffle(kids)
        return PlaneTree(kids)

    return go(tree)


def format_addr(addr: VertexAddr) -> str:
    """Dot-separated child indices; the root renders as an epsilon."""
    return ".".join(str(i) for i in addr) or "ε"


# -- delayed trees -------------------------------------------------------------


@dataclass(frozen=True)
class DelayedTree:
    """A plane tree whose leaves carry positive integer delay labels."""

    tree: PlaneTree
    delays: Mapping[VertexAddr, int]

    def __post_init__(self):
        got = dict(self.delays)
        want = set(leaves(self.tree))
        if set(got) != want:
            raise ValueError("delay keys must be exactly the leaf addresses")
        for value in got.values():
            if not isinstance(value, int) or value < 1:
                raise ValueError("delays must be positive integers")
        object.__setattr__(self, "delays", MappingProxyType(got))

    def delay_vector(self) -> tuple[int, ...]:
        """Delays in left-to-right leaf order."""
        return tuple(self.delays[a] for a in leaves(self.tree))

    def __hash__(self):
        return hash((self.tree, self.delay_vector()))


def parse_delayed(text: str) -> DelayedTree:
    """Parse the delayed grammar: leaves are positive integers, "." means 1.

    Adjacent integer leaves need whitespace between them; a bare leaf at the
    top level is the point, whose label is vacuous (the root is not a leaf).
    """
    node, delays, pos = _parse_delayed_node(text, _skip_ws(text, 0))
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise ParseError("trailing input", pos)
    if not node.children:
        return DelayedTree(POINT, {})
    return DelayedTree(node, dict(zip(leaves(node), delays)))


def _parse_delayed_node(text: str, pos: int) -> tuple[PlaneTree, list[int], int]:
    if pos >= len(text):
        raise ParseError("unexpected end of input", pos)
    ch = text[pos]
    if ch == ".":
        return POINT, [1], pos + 1
    if ch.isdigit():
        end = pos
        while end < len(text) and text[end].isdigit():
            end += 1
        value = int(text[pos:end])
        if value == 0:
            raise ZeroDelay("zero delay", pos)
        return POINT, [value], end
    if ch == "(":
        kids: list[PlaneTree] = []
        delays: list[int] = []
        pos = _skip_ws(text, pos + 1)
        while pos < len(text) and text[pos] != ")":
            kid, kid_delays, pos = _parse_delayed_node(text, pos)
            kids.append(kid)
            delays.extend(kid_delays)
            pos = _skip_ws(text, pos)
        if pos >= len(text):
            raise ParseError("unbalanced '('", pos)
        if not kids:
            raise ParseError("empty node", pos)
        return PlaneTree(kids), delays, pos + 1
    raise ParseError(f"unexpected character {ch!r}", pos)


def serialize_delayed(delayed: DelayedTree) -> str:
    """Canonical delayed text: integer leaves, single spaces between
    children; round-trips through parse_delayed."""
    if not delayed.tree.children:
        return "."
    vec = iter(delayed.delay_vector())

    def go(node: PlaneTree) -> str:
        if not node.children:
            return str(next(vec))
        return "(" + " ".join(go(c) for c in node.children) + ")"

    return go(delayed.tree)

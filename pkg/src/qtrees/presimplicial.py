"""Topological rooted trees with ordered leaves: faces, degeneracies, the
q-weighted boundary, and reduction of every tree to a multiple of the point.

Topological means no vertex has exactly one child; subdivision points are
smoothed away.  A tree with n + 1 leaves sits in level n and carries faces
d_0..d_n (remove the i-th leaf, then smooth) and degeneracies s_0..s_n
(replace the i-th leaf by a two-leaf cherry).  The point counts its root as
its single leaf, so the cherry can be planted on it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .qpoly import ONE, QPoly, ZERO
from .trees import (
    BoundExceeded,
    PlaneTree,
    POINT,
    leaves,
    remove_leaf,
    serialize,
)

__all__ = [
    "CHERRY",
    "DEFAULT_TOP_BOUND",
    "normalize_topological",
    "is_topological",
    "ordered_leaves",
    "leaf_count",
    "face",
    "degeneracy",
    "enumerate_top_trees",
    "check_identities",
    "IdentityReport",
    "IdentityViolation",
    "QChain",
    "q_boundary",
    "q_boundary_at",
    "reduce_to_point",
]

DEFAULT_TOP_BOUND = 7

CHERRY = PlaneTree((POINT, POINT))


def normalize_topological(tree: PlaneTree) -> PlaneTree:
    """Smooth away every vertex with exactly one child; a unary root hands
    the root over to its child.  Idempotent."""
    if not tree.children:
        return tree
    kids = tuple(normalize_topological(c) for c in tree.children)
    if len(kids) == 1:
        return kids[0]
    return PlaneTree(kids)


def is_topological(tree: PlaneTree) -> bool:
    """True when no vertex has exactly one child."""
    if len(tree.children) == 1:
        return False
    return all(is_topological(c) for c in tree.children)


def ordered_leaves(tree: PlaneTree) -> tuple:
    """Leaf addresses left to right; the point's root is its own leaf."""
    if not tree.children:
        return ((),)
    return leaves(tree)


def leaf_count(tree: PlaneTree) -> int:
    return len(ordered_leaves(tree))


def face(tree: PlaneTree, index: int) -> PlaneTree:
    """Remove the index-th leaf and smooth.  Drops one level."""
    if not tree.children:
        raise ValueError("the point has no faces")
    addrs = leaves(tree)
    if not 0 <= index < len(addrs):
        raise IndexError(f"leaf index {index} out of range 0..{len(addrs) - 1}")
    return normalize_topological(remove_leaf(tree, addrs[index]))


def _replace_at(tree: PlaneTree, addr: tuple, replacement: PlaneTree) -> PlaneTree:
    if not addr:
        return replacement
    i = addr[0]
    kids = tree.children
    return PlaneTree(kids[:i] + (_replace_at(kids[i], addr[1:], replacement),) + kids[i + 1 :])


def degeneracy(tree: PlaneTree, index: int) -> PlaneTree:
    """Plant a cherry on the index-th leaf.  Climbs one level; the result
    is topological by construction."""
    addrs = ordered_leaves(tree)
    if not 0 <= index < len(addrs):
        raise IndexError(f"leaf index {index} out of range 0..{len(addrs) - 1}")
    return _replace_at(tree, addrs[index], CHERRY)


@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    if parts == 1:
        return ((total,),) if total >= 1 else ()
    out = []
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _top_trees(leaf_total: int) -> tuple[PlaneTree, ...]:
    if leaf_total == 1:
        return (POINT,)
    out = []
    for arity in range(2, leaf_total + 1):
        for split in _compositions(leaf_total, arity):
            for kids in itertools.product(*(_top_trees(c) for c in split)):
                out.append(PlaneTree(kids))
    return tuple(out)


def enumerate_top_trees(leaf_total: int, bound: int = DEFAULT_TOP_BOUND) -> tuple[PlaneTree, ...]:
    """All topological rooted plane trees with exactly the given number of
    leaves, each once, in a fixed order (arity, then leaf split)."""
    if leaf_total < 1:
        raise ValueError("leaf count must be positive")
    if leaf_total > bound:
        raise BoundExceeded(f"leaf count {leaf_total} exceeds bound {bound}")
    return _top_trees(leaf_total)


@dataclass
class IdentityViolation:
    relation: str
    tree: str
    indices: tuple[int, ...]
    lhs: str
    rhs: str


@dataclass
class IdentityReport:
    """Outcome of the exhaustive face/degeneracy identity check.

    checked counts verified instances per relation family; violations must
    stay empty.  The double-degeneracy square s_i s_i = s_{i+1} s_i is the
    one simplicial relation that genuinely fails here, so a counterexample
    witness is searched for and recorded rather than treated as an error.
    """

    max_leaves: int
    checked: dict[str, int] = field(default_factory=dict)
    violations: list[IdentityViolation] = field(default_factory=list)
    double_degeneracy_witness: tuple[str, int, str, str] | None = None

    @property
    def ok(self) -> bool:
        return not self.violations and self.double_degeneracy_witness is not None

    def as_dict(self) -> dict:
        return {
            "max_leaves": self.max_leaves,
            "checked": dict(self.checked),
            "violations": [vars(v) for v in self.violations],
            "double_degeneracy_witness": self.double_degeneracy_witness,
        }


def check_identities(max_leaves: int, bound: int = DEFAULT_TOP_BOUND) -> IdentityReport:
    """Exhaustively verify the face/degeneracy relations on all topological
    trees with up to max_leaves leaves.

    Verified families: faces commute (d_i d_j = d_{j-1} d_i for i < j),
    degeneracies commute (s_i s_j = s_{j+1} s_i for i < j), faces move past
    degeneracies (d_i s_j = s_{j-1} d_i for i < j and d_i s_j = s_j d_{i-1}
    for i > j + 1), and the cancellations d_i s_i = d_{i+1} s_i = id.
    """
    if max_leaves < 1:
        raise ValueError("leaf count must be positive")
    if max_leaves > bound:
        raise BoundExceeded(f"leaf count {max_leaves} exceeds bound {bound}")
    report = IdentityReport(max_leaves=max_leaves)
    checked = {"face_face": 0, "deg_deg": 0, "face_deg": 0, "face_cancel": 0}

    def offend(relation: str, tree: PlaneTree, indices: tuple[int, ...], lhs, rhs) -> None:
        report.violations.append(
            IdentityViolation(relation, serialize(tree), indices, serialize(lhs), serialize(rhs))
        )

    for level_leaves in range(1, max_leaves + 1):
        top_index = level_leaves - 1
        for tree in enumerate_top_trees(level_leaves, bound=bound):
            for j in range(top_index + 1):
                for i in range(j):
                    if top_index >= 2:
                        a = face(face(tree, j), i)
                        b = face(face(tree, i), j - 1)
                        checked["face_face"] += 1
                        if a != b:
                            offend("face_face", tree, (i, j), a, b)
                    a = degeneracy(degeneracy(tree, j), i)
                    b = degeneracy(degeneracy(tree, i), j + 1)
                    checked["deg_deg"] += 1
                    if a != b:
                        offend("deg_deg", tree, (i, j), a, b)
            for j in range(top_index + 1):
                planted = degeneracy(tree, j)
                for i in range(top_index + 2):
                    if i < j:
                        a = face(planted, i)
                        b = degeneracy(face(tree, i), j - 1)
                    elif i > j + 1:
                        a = face(planted, i)
                        b = degeneracy(face(tree, i - 1), j)
                    else:
                        continue
                    checked["face_deg"] += 1
                    if a != b:
                        offend("face_deg", tree, (i, j), a, b)
            for i in range(top_index + 1):
                planted = degeneracy(tree, i)
                a = face(planted, i)
                b = face(planted, i + 1)
                checked["face_cancel"] += 1
                if a != tree:
                    offend("face_cancel", tree, (i, i), a, tree)
                if b != tree:
                    offend("face_cancel", tree, (i, i + 1), b, tree)
                if report.double_degeneracy_witness is None:
                    double = degeneracy(planted, i)
                    shifted = degeneracy(planted, i + 1)
                    if double != shifted:
                        report.double_degeneracy_witness = (
                            serialize(tree),
                            i,
                            serialize(double),
                            serialize(shifted),
                        )
    report.checked = checked
    return report


# -- chains and the q-boundary ---------------------------------------------------


class QChain:
    """A finitely supported Z[q]-combination of trees; zero coefficients are
    never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Union[Mapping, Iterable] = ()):
        data = dict(terms)
        clean: dict[PlaneTree, QPoly] = {}
        for tree, coeff in data.items():
            if isinstance(coeff, int):
                coeff = QPoly((coeff,))
            if not isinstance(tree, PlaneTree) or not isinstance(coeff, QPoly):
                raise TypeError("terms must map PlaneTree to QPoly or int")
            if coeff:
                clean[tree] = coeff
        self.terms = clean

    def coefficient(self, tree: PlaneTree) -> QPoly:
        return self.terms.get(tree, ZERO)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other: object):
        if not isinstance(other, QChain):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "QChain") -> "QChain":
        acc = dict(self.terms)
        for tree, coeff in other.terms.items():
            acc[tree] = acc.get(tree, ZERO) + coeff
        return QChain(acc)

    def __repr__(self):
        body = " + ".join(
            f"({coeff})*{serialize(tree)}"
            for tree, coeff in sorted(self.terms.items(), key=lambda kv: serialize(kv[0]))
        )
        return f"QChain({body or '0'})"


def q_boundary(chain: QChain) -> QChain:
    """Linear extension of T -> sum over leaf indices i of q**i * d_i(T);
    the point maps to zero."""
    acc: dict[PlaneTree, QPoly] = {}
    for tree, coeff in chain.terms.items():
        if not tree.children:
            continue
        for i in range(leaf_count(tree)):
            piece = face(tree, i)
            acc[piece] = acc.get(piece, ZERO) + coeff.shift(i)
    return QChain(acc)


def q_boundary_at(chain, q_value: int) -> dict[PlaneTree, int]:
    """The boundary with q specialized to an integer.

    Accepts a QChain or a plain mapping of trees to integers and returns an
    integer-weighted chain as a dict.  At q = -1 this is the alternating
    face sum and squares to zero; at generic integers it does not.
    """
    items = chain.terms.items() if isinstance(chain, QChain) else dict(chain).items()
    acc: dict[PlaneTree, int] = {}
    for tree, coeff in items:
        weight = coeff.eval_int(q_value) if isinstance(coeff, QPoly) else int(coeff)
        if not tree.children or weight == 0:
            continue
        for i in range(leaf_count(tree)):
            piece = face(tree, i)
            acc[piece] = acc.get(piece, 0) + weight * q_value**i
    return {tree: w for tree, w in acc.items() if w}


def reduce_to_point(tree: PlaneTree) -> QPoly:
    """Coefficient of the point after exhaustively rewriting every larger
    tree into its q-boundary.

    Each rewrite strictly lowers the leaf count, so the process terminates;
    the result for a tree with n leaves is the q-factorial of n.
    """
    point_coeff = ZERO
    current: dict[PlaneTree, QPoly] = {tree: ONE}
    while current:
        nxt: dict[PlaneTree, QPoly] = {}
        for t, coeff in current.items():
            if not t.children:
                point_coeff = point_coeff + coeff
                continue
            for i in range(leaf_count(t)):
                piece = face(t, i)
                nxt[piece] = nxt.get(piece, ZERO) + coeff.shift(i)
        current = {t: c for t, c in nxt.items() if c}
    return point_coeff

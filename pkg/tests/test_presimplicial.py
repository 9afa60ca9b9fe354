import pytest

from qtrees.presimplicial import (
    CHERRY,
    IdentityReport,
    QChain,
    check_identities,
    degeneracy,
    enumerate_top_trees,
    face,
    is_topological,
    leaf_count,
    normalize_topological,
    ordered_leaves,
    q_boundary,
    q_boundary_at,
    reduce_to_point,
)
from qtrees.qpoly import ONE, QPoly, q_factorial
from qtrees.trees import POINT, BoundExceeded, parse_tree, serialize, star


def schroeder_numbers(top):
    # independent linear-recurrence oracle for trees counted by leaves
    values = [None, 1, 1]
    for n in range(3, top + 1):
        numerator = 3 * (2 * n - 3) * values[n - 1] - (n - 3) * values[n - 2]
        assert numerator % n == 0
        values.append(numerator // n)
    return values


def basis(max_leaves):
    for total in range(1, max_leaves + 1):
        for tree in enumerate_top_trees(total):
            yield total, tree


# -- normalization ---------------------------------------------------------------


def test_normalize_examples():
    assert normalize_topological(parse_tree("(.)")) == POINT
    assert normalize_topological(parse_tree("((..))")) == CHERRY
    assert normalize_topological(CHERRY) == CHERRY
    assert normalize_topological(parse_tree("((.))")) == POINT
    assert normalize_topological(parse_tree("((.)(..))")) == parse_tree("(.(..))")


def test_normalize_is_idempotent_and_topological():
    from qtrees.trees import enumerate_plane_trees

    for edges in range(6):
        for tree in enumerate_plane_trees(edges):
            once = normalize_topological(tree)
            assert is_topological(once)
            assert normalize_topological(once) == once


def test_leaf_conventions():
    assert ordered_leaves(POINT) == ((),)
    assert leaf_count(POINT) == 1
    assert leaf_count(CHERRY) == 2
    assert leaf_count(star(4)) == 4


# -- faces and degeneracies ----------------------------------------------------------


def test_face_examples():
    assert face(CHERRY, 0) == POINT
    assert face(CHERRY, 1) == POINT
    assert face(star(3), 1) == CHERRY
    with pytest.raises(ValueError):
        face(POINT, 0)
    with pytest.raises(IndexError):
        face(CHERRY, 2)


def test_degeneracy_examples():
    assert degeneracy(POINT, 0) == CHERRY
    assert degeneracy(CHERRY, 0) == parse_tree("((..).)")
    assert degeneracy(CHERRY, 1) == parse_tree("(.(..))")
    with pytest.raises(IndexError):
        degeneracy(CHERRY, 2)


def test_face_cancels_degeneracy():
    assert face(degeneracy(POINT, 0), 0) == POINT
    assert face(degeneracy(POINT, 0), 1) == POINT
    for total, tree in basis(4):
        for i in range(total):
            planted = degeneracy(tree, i)
            assert face(planted, i) == tree
            assert face(planted, i + 1) == tree


def test_maps_preserve_the_topological_invariant():
    for total, tree in basis(5):
        for i in range(total):
            grown = degeneracy(tree, i)
            assert is_topological(grown)
            assert leaf_count(grown) == total + 1
            if total >= 2:
                shrunk = face(tree, i)
                assert is_topological(shrunk)
                assert leaf_count(shrunk) == total - 1


# -- enumeration -----------------------------------------------------------------------


def test_top_tree_counts_match_schroeder():
    expected = schroeder_numbers(6)
    for total in range(1, 7):
        found = enumerate_top_trees(total)
        assert len(found) == expected[total]
        assert len({serialize(t) for t in found}) == len(found)
        for tree in found:
            assert is_topological(tree)
            assert leaf_count(tree) == total


def test_top_tree_small_membership():
    assert enumerate_top_trees(1) == (POINT,)
    assert {serialize(t) for t in enumerate_top_trees(3)} == {"(...)", "((..).)", "(.(..))"}


def test_top_tree_bound():
    with pytest.raises(BoundExceeded):
        enumerate_top_trees(8)
    with pytest.raises(ValueError):
        enumerate_top_trees(0)


# -- the identity checker ---------------------------------------------------------------


def test_identities_hold_with_witness():
    report = check_identities(5)
    assert isinstance(report, IdentityReport)
    assert report.violations == []
    assert all(count > 0 for count in report.checked.values())
    assert report.ok


def test_double_degeneracy_witness_is_the_point():
    report = check_identities(3)
    tree_text, index, lhs, rhs = report.double_degeneracy_witness
    assert (tree_text, index) == (".", 0)
    assert {lhs, rhs} == {"((..).)", "(.(..))"}


# -- chains and boundaries ----------------------------------------------------------------


def test_qchain_normalization():
    chain = QChain({POINT: QPoly(()), CHERRY: 2})
    assert chain.terms == {CHERRY: QPoly((2,))}
    assert QChain() == QChain({POINT: 0})
    assert not QChain()
    assert QChain({POINT: 1}) + QChain({POINT: QPoly((-1,))}) == QChain()


def test_q_boundary_examples():
    assert q_boundary(QChain({CHERRY: 1})) == QChain({POINT: QPoly((1, 1))})
    assert q_boundary(QChain({POINT: 1})) == QChain()
    assert q_boundary(QChain({star(3): 1})) == QChain({CHERRY: QPoly((1, 1, 1))})


def test_q_boundary_is_linear():
    chain = QChain({star(3): QPoly((0, 1)), CHERRY: 3})
    out = q_boundary(chain)
    assert out.coefficient(CHERRY) == QPoly((0, 1, 1, 1))
    assert out.coefficient(POINT) == QPoly((3, 3))


def test_alternating_boundary_squares_to_zero():
    for total, tree in basis(5):
        once = q_boundary_at({tree: 1}, -1)
        assert q_boundary_at(once, -1) == {}


def test_generic_boundary_does_not_square_to_zero():
    once = q_boundary_at(QChain({star(3): 1}), 2)
    assert once == {CHERRY: 7}
    assert q_boundary_at(once, 2) == {POINT: 21}


def test_boundary_of_point_vanishes():
    assert q_boundary_at({POINT: 1}, 5) == {}


# -- reduction ---------------------------------------------------------------------------


def test_reduce_examples():
    assert reduce_to_point(POINT) == ONE
    assert reduce_to_point(CHERRY) == QPoly((1, 1))
    assert reduce_to_point(star(3)) == q_factorial(3)


def test_reduce_is_shape_independent():
    for total, tree in basis(5):
        assert reduce_to_point(tree) == q_factorial(total)

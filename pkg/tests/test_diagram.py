import random

import pytest

from extras import InadmissibleColoring, NotABubble, NotInternalEdge, UnresolvableCrossing
from gsn_algebra import ONE
from gsn_center import bundled_center
from gsn_constants import Orientation
from gsn_diagram import (DiagramEdge, DiagramVertex, PlanarDiagram, TreeBasisVector, TreeVector,
                         bubble_collapse, color, comb_basis, complete_edge, evaluate_closed,
                         f_move, insert_cloaking_circle, pair_vector, pivotal_violations,
                         three_point_key)


def test_split_then_fuse_is_the_identity(ising):
    s, psi = ising.index_of("sigma"), ising.index_of("psi")
    v = TreeVector.basis(ising, (s,), (s,))
    assert v.split(0, s, psi).fuse(0) == v


def test_cup_then_cap_gives_the_dimension(ising):
    for a in range(ising.rank):
        closed = TreeVector.unit(ising).cup(0, a).cap(0, Orientation.FORWARD)
        assert closed.scalar() == ising.qdim(a)
        primed = TreeVector.unit(ising).cup(0, a, prime=True).cap(0, Orientation.BACKWARD)
        assert primed.scalar() == ising.qdim(a)


def test_comb_basis_counts_fusion_paths(ising):
    s = ising.index_of("sigma")
    assert len(comb_basis(ising, (s, s, s, s))) == 2
    assert len(comb_basis(ising, (s, s, s), top=s)) == 2
    assert three_point_key(ising, s, s, 0) is not None
    assert three_point_key(ising, s, 0, 0) is None


def _sigma_tree(cat):
    s = cat.index_of("sigma")
    return TreeBasisVector.from_comb(TreeVector.basis(cat, (s, s, s), (s, 0, s)))


def test_f_move_and_back(ising):
    v = _sigma_tree(ising)
    moved = f_move(v, (0,))
    assert len(moved.terms) == 2
    assert f_move(moved, (1,)).terms == v.terms


def test_complete_edge_regroups_without_changing_the_vector(ising):
    v = _sigma_tree(ising)
    grouped = complete_edge(v, 1)
    assert grouped == v
    for tree in grouped.terms:
        assert tree[3][0] == "n"
    assert complete_edge(v, 0).terms == v.terms


def test_f_move_needs_an_internal_edge(ising):
    v = _sigma_tree(ising)
    with pytest.raises(NotInternalEdge):
        f_move(v, ())
    with pytest.raises(NotInternalEdge):
        f_move(v, (1,))


def test_bubble(ising):
    v = _sigma_tree(ising)
    s = ising.index_of("sigma")
    collapsed = bubble_collapse(v, (0,), 0)
    assert collapsed.terms == {("n", s, ("l", 0), ("l", s)): ONE}
    assert not bubble_collapse(v, (0,), ising.index_of("psi")).terms
    with pytest.raises(NotABubble):
        bubble_collapse(v, (), s)


def test_empty_cloaking_circle(ising):
    unit = TreeVector.unit(ising)
    for g in ising.group.elements:
        assert insert_cloaking_circle(unit, None, g) == unit


def test_plain_legs_slide_through_the_neutral_circle(vec_z2):
    v = TreeVector.basis(vec_z2, (1, 1), (1, 0))
    assert insert_cloaking_circle(v, "all", vec_z2.group.identity, {}) == v


@pytest.mark.parametrize("name", ["vec_z2", "vec_z2_twisted"])
def test_neutral_circle_is_idempotent(categories, name):
    cat = categories[name]
    e = cat.group.identity
    v = pair_vector(cat, cat.index_of("x"))
    once = insert_cloaking_circle(v, "all", e)
    assert insert_cloaking_circle(once, "all", e) == once


def test_graded_circle_shifts_leg_colours(vec_s3):
    group = vec_s3.group
    a = vec_s3.index_of("102")
    h = group.index("120")
    shifted = group.mul(h, vec_s3.grade(a), group.inverse(h))
    assert shifted != vec_s3.grade(a)
    b = vec_s3.simples_of_grade(shifted)[0]
    result = insert_cloaking_circle(pair_vector(vec_s3, a), "all", h)
    assert result.terms
    assert {tuple(color(x) for x in key[0]) for key in result.terms} == {(b, vec_s3.dual(b))}


def test_center_strands_need_the_neutral_circle(vec_z2_graded):
    z = bundled_center(vec_z2_graded)[0]
    v = pair_vector(vec_z2_graded, 0)
    with pytest.raises(UnresolvableCrossing):
        insert_cloaking_circle(v, "all", vec_z2_graded.group.index("g"), {0: z, 1: z})


@pytest.mark.parametrize("name", ["vec", "vec_z2", "vec_z2_twisted", "vec_s3", "ising"])
def test_pivotal_structure(categories, name):
    assert pivotal_violations(categories[name]) == []


def test_loops(ising):
    for a in range(ising.rank):
        assert evaluate_closed(ising, PlanarDiagram([], [], [a])) == ising.qdim(a)
    assert evaluate_closed(ising, PlanarDiagram([], [], [2, 2])) == 2


def _theta(a, b, c):
    edges = [DiagramEdge(a), DiagramEdge(b), DiagramEdge(c)]
    top = DiagramVertex("coupling", [(0, "tail"), (1, "tail"), (2, "tail")])
    bottom = DiagramVertex("coupling", [(2, "head"), (1, "head"), (0, "head")])
    return PlanarDiagram([top, bottom], edges)


@pytest.mark.parametrize("name", ["vec_z2", "vec_s3"])
def test_theta_does_not_depend_on_evaluation_order(categories, name):
    cat = categories[name]
    rng = random.Random(7)
    for a in range(cat.rank):
        for b in range(cat.rank):
            for c in range(cat.rank):
                if three_point_key(cat, a, b, c) is None:
                    continue
                reference = evaluate_closed(cat, _theta(a, b, c))
                for _ in range(3):
                    assert evaluate_closed(cat, _theta(a, b, c), random.Random(rng.random())) == reference


def test_inadmissible_coupling(vec_z2):
    d = _theta(1, 0, 0)
    with pytest.raises(InadmissibleColoring):
        evaluate_closed(vec_z2, d)

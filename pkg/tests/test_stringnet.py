import pytest

import gsn_center
import gsn_linalg as la
from extras import GradeMismatch, NotIsomorphic
from gsn_stringnet import (SNSpace, center_boundary, close_loop, cloaking_projector, dim_ksn,
                           double_flip_isomorphism, flip_map, functor_checks, gauge_map,
                           glue_dim_check, gp1_checks, gp2_checks, gp5_checks, gp6_checks,
                           identity_map, ksn_checks, ksn_projector, ksn_space, pi_projector,
                           projector_checks, relabel_map, sn_basis, transport)
from gsn_move import Flip, Gauge
from gsn_surface import build_surface, cylinder, disk, gauge, pants, sphere, torus


def unit(cat):
    return gsn_center.unit_object(cat)


def by_name(cat, name):
    return gsn_center.center_by_name(gsn_center.bundled_center(cat), name)


@pytest.mark.parametrize("name, dim", [("vec", 1), ("vec_z2", 4)])
def test_torus_dims(categories, name, dim):
    cat = categories[name]
    t = torus(cat.group)
    assert SNSpace(cat, t).dim == dim
    assert dim_ksn(cat, t) == dim


def test_sphere_space(vec_z2):
    space = SNSpace(vec_z2, sphere(vec_z2.group))
    assert space.dim == 4
    assert len(sn_basis(vec_z2, space.t)) == 4


def test_cloaking_ranks_on_sphere(vec_z2):
    space = SNSpace(vec_z2, sphere(vec_z2.group))
    e = vec_z2.group.identity
    for v in space.t.marked_vertices():
        assert gauge_map(space, v, e).rank == 2
    assert cloaking_projector(space).rank == 1


def test_identity_map(vec_z2):
    space = SNSpace(vec_z2, torus(vec_z2.group))
    assert identity_map(space).is_identity()
    assert identity_map(space).rank == space.dim


@pytest.mark.parametrize("name", ["vec", "vec_z2", "vec_z2_graded"])
def test_projector_checks(categories, name):
    cat = categories[name]
    space = SNSpace(cat, sphere(cat.group))
    checks = projector_checks(space)
    assert checks
    assert all(c["pass"] for c in checks)


def test_pi_projector_is_idempotent(vec_z2_graded):
    group = vec_z2_graded.group
    space = SNSpace(vec_z2_graded, sphere(group))
    v = space.t.marked_vertices()[0]
    pi = pi_projector(space, v, group.index("g"))
    assert pi.target.t == space.t
    assert pi.is_idempotent()


@pytest.mark.parametrize("make", [torus, sphere, lambda group: cylinder(group, group.identity)])
def test_functor_checks_on_vec(vec, make):
    checks = functor_checks(SNSpace(vec, make(vec.group)))
    assert all(c["pass"] for c in checks)


def test_gauge_relations_on_vec_z2(vec_z2):
    space = SNSpace(vec_z2, sphere(vec_z2.group))
    checks = gp2_checks(space) + gp5_checks(space) + gp6_checks(space)
    assert checks
    assert all(c["pass"] for c in checks)


def test_gauge_relations_on_graded(vec_z2_graded):
    space = SNSpace(vec_z2_graded, sphere(vec_z2_graded.group))
    checks = gp5_checks(space) + gp6_checks(space)
    assert checks
    assert all(c["pass"] for c in checks)


def test_transport_follows_path(vec_z2_graded):
    group = vec_z2_graded.group
    space = SNSpace(vec_z2_graded, sphere(group))
    v = space.t.marked_vertices()[0]
    g = group.index("g")
    travelled = transport(space, [Gauge(v, g), Gauge(v, g)])
    assert travelled.source is space
    assert travelled.target.t == space.t


def test_flip_map_is_square_on_vec(vec):
    space = SNSpace(vec, torus(vec.group))
    e = space.t.flippable_edges()[0]
    move = flip_map(space, e)
    assert move.matrix.shape == (move.target.dim, space.dim)
    assert move.rank == space.dim


def test_relabel_needs_isomorphic_target(vec_z2):
    space = SNSpace(vec_z2, torus(vec_z2.group))
    with pytest.raises(NotIsomorphic):
        relabel_map(space, cylinder(vec_z2.group, vec_z2.group.identity))


def test_relabel_to_self_is_identity(vec_z2):
    space = SNSpace(vec_z2, torus(vec_z2.group))
    assert relabel_map(space, space.t).is_identity()


@pytest.mark.parametrize("name, other, dim", [("1", "1", 1), ("1", "e", 0), ("m", "m", 1), ("m", "em", 0)])
def test_cylinder_ksn(vec_z2, name, other, dim):
    t = cylinder(vec_z2.group, vec_z2.group.identity)
    x, y = by_name(vec_z2, name), by_name(vec_z2, other)
    assert dim_ksn(vec_z2, t, [x, y.dual()]) == dim


def test_ksn_checks_on_cylinder(vec_z2):
    t = cylinder(vec_z2.group, vec_z2.group.identity)
    objects = [unit(vec_z2), unit(vec_z2)]
    checks = ksn_checks(ksn_space(vec_z2, t, objects), objects)
    assert checks[0]["pass"]


def test_center_boundary_counts(vec_z2):
    t = pants(vec_z2.group, vec_z2.group.identity, vec_z2.group.identity)
    with pytest.raises(GradeMismatch):
        center_boundary(t, [unit(vec_z2)])


def test_center_boundary_grades(vec_z2_graded):
    group = vec_z2_graded.group
    t = cylinder(group, group.index("g"))
    with pytest.raises(GradeMismatch):
        center_boundary(t, [unit(vec_z2_graded), unit(vec_z2_graded)])


def test_gluing_cylinders(vec_z2):
    e = vec_z2.group.identity
    t = cylinder(vec_z2.group, e)
    simples = gsn_center.bundled_center(vec_z2)
    x = by_name(vec_z2, "em")
    record = glue_dim_check(vec_z2, (t, [x, x.dual()]), (t, [x, None]), (t, [None, x.dual()]), simples)
    assert record["pass"]
    assert record["lhs"] == 1


def test_gluing_needs_inverse_holonomies(vec_z2_graded):
    group = vec_z2_graded.group
    g = group.index("g")
    whole = cylinder(group, group.identity)
    left = cylinder(group, g)
    right = cylinder(group, group.identity)
    with pytest.raises(GradeMismatch):
        glue_dim_check(vec_z2_graded, (whole, [unit(vec_z2_graded)] * 2), (left, [None, None]),
                       (right, [None, None]), [])


def _cylinder_with_a_point(group):
    e = group.identity
    return build_surface(group, 0, [e, e], marked=1)


def _genus2_with_a_point(group):
    return build_surface(group, 2, [], marked=1)


SURFACES = {
    "torus": (torus, {"GP1", "GP6"}),
    "sphere": (lambda group: sphere(group, marked=4), {"GP1", "GP2", "GP3", "GP5", "GP6"}),
    "cylinder": (_cylinder_with_a_point, {"GP1", "GP2", "GP3", "GP6"}),
    "pants": (lambda group: pants(group, group.identity, group.identity), {"GP1", "GP2", "GP3"}),
    "disk": (lambda group: disk(group, marked=2), {"GP1", "GP3", "GP5", "GP6"}),
    "genus2": (_genus2_with_a_point, {"GP1", "GP2", "GP3", "GP5", "GP6"}),
}

CASES = [(name, surface) for name in ("vec_z2", "vec_z2_twisted", "vec_z2_graded", "vec_s3", "ising")
         for surface in ("torus", "sphere", "cylinder", "pants", "disk")]
CASES += [(name, "genus2") for name in ("vec_z2", "vec_z2_graded", "vec_s3")]


@pytest.mark.parametrize("name, surface", CASES)
def test_functor_checks(categories, name, surface):
    cat = categories[name]
    make, expected = SURFACES[surface]
    t = make(cat.group)
    if cat.group.order > 1 and t.marked_vertices():
        expected = expected | {"GP4"}
    checks = functor_checks(SNSpace(cat, t))
    assert expected <= {c["name"].split()[0] for c in checks}
    assert all(c["pass"] for c in checks), [c["name"] for c in checks if not c["pass"]]


@pytest.mark.parametrize("name", ["vec_z2", "vec_z2_twisted", "ising"])
def test_flip_twice_on_the_torus(categories, name):
    cat = categories[name]
    space = SNSpace(cat, torus(cat.group))
    checks = gp1_checks(space)
    assert len(checks) == len(space.t.flippable_edges())
    assert all(c["pass"] for c in checks)


def test_double_flip_isomorphism_reverses_the_edge(vec_z2):
    t = torus(vec_z2.group)
    for e in t.flippable_edges():
        iso = double_flip_isomorphism(t, e)
        assert iso.edge_map[e] == (e, -1)
        assert all(iso.edge_map[f] == (f, 1) for f in range(len(t.edges)) if f != e)


def test_ising_flip_mixes_sigma_states(ising):
    group = ising.group
    g = group.index("g")
    t = gauge(gauge(sphere(group, marked=4), 1, g), 2, g)
    space = SNSpace(ising, t)
    assert space.dim == 4
    move = flip_map(space, 3)
    assert len(move.triples()) == 8
    assert move.rank == 4
    assert all(c["pass"] for c in gp1_checks(space))


def test_closed_path_on_the_cloaked_sphere(vec_z2_graded):
    group = vec_z2_graded.group
    g = group.index("g")
    space = SNSpace(vec_z2_graded, sphere(group))
    v = space.t.marked_vertices()[0]
    e = space.t.flippable_edges()[0]
    loop = close_loop(space, [Gauge(v, g), Flip(e), Flip(e), Gauge(v, g)])
    projector = cloaking_projector(space)
    assert la.equal(projector.then(loop).matrix, projector.matrix)


def test_closed_path_on_the_projected_cylinder(vec_z2):
    t = cylinder(vec_z2.group, vec_z2.group.identity)
    objects = [by_name(vec_z2, "m"), by_name(vec_z2, "m").dual()]
    space = ksn_space(vec_z2, t, objects)
    projector = ksn_projector(space, objects)
    for e in t.flippable_edges():
        loop = close_loop(space, [Flip(e), Flip(e)])
        assert la.equal(projector.then(loop).matrix, projector.matrix)


def test_close_loop_needs_a_closed_path(vec_z2):
    space = SNSpace(vec_z2, torus(vec_z2.group))
    with pytest.raises(NotIsomorphic):
        close_loop(space, [Flip(space.t.flippable_edges()[0])])


@pytest.mark.parametrize("name", ["vec_z2_graded", "vec_s3"])
def test_gluing_pants_to_a_cylinder(categories, name):
    cat = categories[name]
    group = cat.group
    e = group.identity
    simples = gsn_center.bundled_center(cat)
    x = unit(cat)
    record = glue_dim_check(cat, (pants(group, e, e), [x, x, x.dual()]),
                            (pants(group, e, e), [x, x, None]),
                            (cylinder(group, e), [None, x.dual()]), simples)
    assert record["pass"]
    assert record["terms"]


@pytest.mark.parametrize("name", ["vec_z2", "vec_z2_graded", "ising"])
def test_two_disks_make_a_sphere(categories, name):
    cat = categories[name]
    group = cat.group
    simples = gsn_center.bundled_center(cat)
    record = glue_dim_check(cat, (sphere(group), []), (disk(group), [None]), (disk(group), [None]),
                            simples)
    assert record["pass"]
    assert record["lhs"] == 1

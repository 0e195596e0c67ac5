import pytest

from extras import InadmissibleColoring, ParseError, ShapeMismatch
from gsn_center import (bundled_center, center_by_name, center_object_from_dict, center_simples,
                        check_bundled_center, check_propositions, crossing_phi, direct_sum,
                        hom_center_dim, hom_projector, induction, sector_summary, tensor_objects,
                        tube_algebra, unit_object, validate_half_braiding)
import gsn_linalg as la


@pytest.fixture(scope="session")
def z2_center(vec_z2):
    return {z.name: z for z in bundled_center(vec_z2)}


@pytest.mark.parametrize("name", ["vec", "vec_z2", "vec_z2_graded"])
def test_bundled_objects_are_central(categories, name):
    for z in bundled_center(categories[name]):
        assert validate_half_braiding(z) == []


def test_hexagon_violation(vec_z2):
    z = center_object_from_dict(vec_z2, {"name": "bad", "summands": [0],
                                         "half_braiding": [{"i": 1, "v": 1, "matrix": [[2]]}]})
    assert {v.name for v in validate_half_braiding(z)} == {"hexagon"}


def test_missing_block(vec_z2):
    z = center_object_from_dict(vec_z2, {"name": "bare", "summands": [1]})
    assert [v.name for v in validate_half_braiding(z)] == ["half_braiding_missing"]


def test_block_shape(z2_center):
    with pytest.raises(ShapeMismatch):
        z2_center["e"].set_block(1, 1, [[1, 0]])


@pytest.mark.parametrize("a, b, dim", [
    ("1", "1", 1), ("1", "e", 0), ("e", "e", 1), ("m", "em", 0), ("m", "m", 1), ("e", "m", 0),
])
def test_hom_dims(z2_center, a, b, dim):
    assert hom_center_dim(z2_center[a], z2_center[b]) == dim


@pytest.mark.parametrize("a, b", [("1", "1"), ("1", "e"), ("m", "m"), ("m", "em")])
def test_hom_projector_rank(z2_center, a, b):
    x, y = z2_center[a], z2_center[b]
    projector = hom_projector(x, y)
    assert la.is_idempotent(projector)
    assert la.rank(projector) == hom_center_dim(x, y)


@pytest.mark.parametrize("a, b, product", [("e", "m", "em"), ("e", "e", "1"), ("m", "em", "e")])
def test_tensor_products(z2_center, a, b, product):
    z = tensor_objects(z2_center[a], z2_center[b])
    assert validate_half_braiding(z) == []
    assert hom_center_dim(z, z2_center[product]) == 1


@pytest.mark.parametrize("name", ["1", "e", "m", "em"])
def test_duals_are_self(z2_center, name):
    z = z2_center[name]
    star = z.dual()
    assert star.name == name + "*"
    assert star.dual().name == name
    assert hom_center_dim(star, z) == 1


def test_direct_sum(z2_center):
    z = direct_sum([z2_center["e"], z2_center["m"]])
    assert z.size == 2
    assert validate_half_braiding(z) == []
    assert hom_center_dim(z, z) == 2
    assert hom_center_dim(z2_center["m"], z) == 1


def test_direct_sum_needs_objects():
    with pytest.raises(InadmissibleColoring):
        direct_sum([])


def test_induction_of_unit(vec_z2):
    induced = induction(unit_object(vec_z2), vec_z2.group.identity)
    assert len(induced.labels) == 2
    assert la.is_idempotent(induced.projector)
    assert la.rank(induced.projector) == 1


def test_induction_needs_center_object(vec_z2):
    with pytest.raises(InadmissibleColoring):
        induction(1, vec_z2.group.identity)


@pytest.mark.parametrize("name", ["1", "e", "m", "em"])
def test_crossing_by_identity(vec_z2, z2_center, name):
    z = z2_center[name]
    phi = crossing_phi(z, vec_z2.group.identity)
    assert phi.grade == z.grade
    assert hom_center_dim(phi, z) == 1


@pytest.mark.parametrize("name, blocks", [
    ("vec", [1]),
    ("vec_z2", [4]),
    ("vec_z2_graded", [1, 1]),
    ("ising", [4, 2]),
])
def test_tube_block_counts(categories, name, blocks):
    cat = categories[name]
    assert [tube_algebra(cat, g).block_count for g in cat.group.elements] == blocks


def test_tube_algebra_structure(vec_z2):
    algebra = tube_algebra(vec_z2, vec_z2.group.identity)
    assert algebra.dim == 4
    assert algebra.is_associative()
    assert algebra.is_unital()


def test_center_simples(vec_z2):
    simples = center_simples(vec_z2, vec_z2.group.identity)
    assert simples.count == 4
    assert simples.block_dims == [1, 1, 1, 1]


def test_center_simples_single_block(vec):
    simples = center_simples(vec, vec.group.identity)
    assert simples.count == 1
    assert simples.block_dims == [1]


def test_sector_summary(vec_z2_graded):
    records = sector_summary(vec_z2_graded)
    assert [r["grade"] for r in records] == ["e", "g"]
    assert [r["blocks"] for r in records] == [1, 1]


@pytest.mark.parametrize("name", ["vec", "vec_z2", "vec_z2_graded", "ising"])
def test_bundled_center_matches_tube(categories, name):
    assert all(r["pass"] for r in check_bundled_center(categories[name]))


@pytest.mark.parametrize("name", ["vec_z2", "vec_z2_graded"])
def test_propositions(categories, name):
    records = check_propositions(categories[name])
    assert records
    assert all(r["pass"] for r in records), [r for r in records if not r["pass"]]


def test_genus2_on_vec(vec):
    records = check_propositions(vec, kinds=("genus2",))
    assert len(records) == 1
    assert records[0]["lhs"] == records[0]["rhs"]


def test_center_by_name(vec_z2):
    objects = bundled_center(vec_z2)
    assert center_by_name(objects, "em").summands == (1,)
    with pytest.raises(ParseError):
        center_by_name(objects, "nope")


def test_hom_projector_rank_on_ising(ising):
    objects = bundled_center(ising)
    pairs = [(x, y) for x in objects for y in objects if x.grade == y.grade]
    assert len(pairs) == 4 * 4 + 2 * 2
    for x, y in pairs:
        projector = hom_projector(x, y)
        assert la.is_idempotent(projector)
        assert la.rank(projector) == hom_center_dim(x, y), (x.name, y.name)


@pytest.mark.parametrize("name", ["vec_z2", "vec_z2_twisted", "ising"])
def test_genus2_on_every_label_triple(categories, name):
    cat = categories[name]
    simples = bundled_center(cat)
    records = check_propositions(cat, kinds=("genus2",), simples=simples)
    group = cat.group
    expected = sum(1 for x1 in simples for x2 in simples for x3 in simples
                   if group.mul(x1.grade, x2.grade, x3.grade) == group.identity)
    assert len(records) == expected
    assert all(r["pass"] for r in records), [r["name"] for r in records if not r["pass"]]

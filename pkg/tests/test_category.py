import json

import pytest

import gsn_fileio
import gsn_linalg as la
from extras import ParseError, ValidationError
from gsn_category import (category_from_dict, coupling_dim, homogeneous_dimension,
                          load_category, validate_category, validate_pentagon)
from gsn_constants import BUNDLED_CATEGORIES, DATA_DIR


@pytest.mark.parametrize("name", sorted(BUNDLED_CATEGORIES))
def test_bundled_categories_are_valid(categories, name):
    assert validate_category(categories[name]) == []


@pytest.mark.parametrize("name", sorted(BUNDLED_CATEGORIES))
def test_homogeneous_dimensions_agree(categories, name):
    cat = categories[name]
    for g in cat.group.elements:
        assert homogeneous_dimension(cat, g) == cat.neutral_dimension


def test_ising_dimensions(ising):
    sigma = ising.index_of("sigma")
    assert ising.qdim(sigma) ** 2 == 2
    assert ising.neutral_dimension == 2
    assert ising.global_dimension == 4
    assert ising.grade(sigma) == ising.group.index("g")


def test_ising_sigma_block_is_an_involution(ising):
    s = ising.index_of("sigma")
    block = ising.f_block(s, s, s, s)
    assert len(block.rows) == 2
    assert la.is_identity(la.matmul(block.forward, block.forward))
    assert la.is_identity(la.matmul(block.forward, block.backward))


def test_unit_legs_have_trivial_f(ising):
    for a in range(ising.rank):
        for b in range(ising.rank):
            for d in ising.channels(a, b):
                assert ising.F(0, a, b, d, a, d) == 1


def test_coupling_dims_are_cyclic(ising):
    r = range(ising.rank)
    for i in r:
        for j in r:
            for k in r:
                assert coupling_dim(ising, i, j, k) == coupling_dim(ising, j, k, i)


def test_channels(ising):
    s = ising.index_of("sigma")
    assert ising.channels(s, s) == (0, ising.index_of("psi"))
    assert ising.is_multiplicity_free


def _vec_z2_data():
    with open(DATA_DIR / BUNDLED_CATEGORIES["vec_z2"]) as handle:
        return json.load(handle)


def test_corrupted_f_entry_breaks_the_pentagon():
    data = _vec_z2_data()
    data["fsymbols"] = [[1, 1, 1, 1, 0, 0, 2]]
    cat = category_from_dict(data)
    violations = validate_category(cat)
    assert violations
    assert {v.name for v in violations} == {"pentagon"}
    assert validate_pentagon(cat) == violations


def test_twisted_sign_satisfies_the_pentagon():
    data = _vec_z2_data()
    data["fsymbols"] = [[1, 1, 1, 1, 0, 0, -1]]
    assert validate_category(category_from_dict(data)) == []


def test_bad_fusion_grading_is_reported():
    data = _vec_z2_data()
    data["group"] = {"order": 2, "identity": 0, "mult": [[0, 1], [1, 0]], "names": ["e", "g"]}
    data["simples"][1]["grade"] = "g"
    data["fusion_table"] = [[0, 1], [1, 1]]
    names = {v.name for v in validate_category(category_from_dict(data))}
    assert names & {"fusion_grading", "fusion_duality", "dimension_consistency"}


def test_loader_raises_first_violation(tmp_path):
    data = _vec_z2_data()
    data["fsymbols"] = [[1, 1, 1, 1, 0, 0, 2]]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data))
    with pytest.raises(ValidationError) as info:
        load_category(path)
    assert info.value.invariant == "pentagon"


def test_malformed_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        load_category(path)
    with pytest.raises(ParseError):
        category_from_dict({"group": {"mult": [[0]]}})


def test_missing_file():
    with pytest.raises(OSError):
        gsn_fileio.open_category("/nonexistent/category.json")


def test_names_resolve(vec_z2):
    assert vec_z2.index_of("x") == 1
    assert vec_z2.simple_name(1) == "x"
    with pytest.raises(ParseError):
        vec_z2.index_of("y")

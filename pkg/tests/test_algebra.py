import warnings
from fractions import Fraction

import pytest

import gsn_algebra
from extras import DivisionByZero, ParseError
from gsn_algebra import (ONE, ZERO, FiniteGroup, Scalar, cyclic_group, group_validate,
                         symmetric_group, trivial_group)


def test_rational_arithmetic():
    half = Scalar(Fraction(1, 2))
    assert half + half == ONE
    assert half * 4 == 2
    assert (ONE / 3) * 3 == ONE
    assert ONE - ONE == ZERO
    assert not ZERO


def test_roots_of_unity():
    i = Scalar.zeta(4)
    assert i * i == -1
    assert i ** 4 == ONE
    w = Scalar.zeta(3)
    assert ONE + w + w * w == ZERO


def test_mixed_conductors_are_lifted():
    assert Scalar.zeta(8) ** 2 == Scalar.zeta(4)
    assert Scalar.zeta(4) + Scalar.zeta(8) ** 2 == 2 * Scalar.zeta(4)


def test_inverse_of_irrational():
    x = ONE + Scalar.zeta(8)
    assert x * x.inverse() == ONE
    assert ONE / x * x == ONE


def test_zero_has_no_inverse():
    with pytest.raises(DivisionByZero):
        ZERO.inverse()


def test_conjugate_and_embedding():
    i = Scalar.zeta(4)
    assert i.conjugate() == -i
    assert abs(i.embed() - 1j) < 1e-12
    assert abs(Scalar.zeta(8).embed(3) - complex(-2 ** -0.5, 2 ** -0.5)) < 1e-12


@pytest.mark.parametrize("data, expected", [
    (3, Scalar(3)),
    ("-1/2", Scalar(Fraction(-1, 2))),
    ({"conductor": 4, "coeffs": [0, 1]}, Scalar.zeta(4)),
    ({"conductor": 4, "coeffs": [["1", "2"], ["-1", "1"]]}, Scalar(Fraction(1, 2)) - Scalar.zeta(4)),
])
def test_scalar_from_json(data, expected):
    assert Scalar.from_json(data) == expected


@pytest.mark.parametrize("data", [True, "one", [1, 2]])
def test_bad_scalar(data):
    with pytest.raises(ParseError):
        Scalar.from_json(data)


def test_scalars_are_immutable():
    with pytest.raises(AttributeError):
        ONE.conductor = 3


def test_equal_scalars_hash_alike():
    assert hash(Scalar.zeta(8) ** 2) == hash(Scalar.zeta(4))
    assert hash(Scalar(2)) == hash(Scalar(2, 4))


@pytest.mark.parametrize("group", [trivial_group(), cyclic_group(2), cyclic_group(5), symmetric_group(3)])
def test_bundled_groups_are_groups(group):
    assert group_validate(group) == []


def test_symmetric_group():
    s3 = symmetric_group(3)
    assert s3.order == 6
    assert not s3.is_abelian()
    a, b = s3.index("102"), s3.index("021")
    assert s3.mul(a, b) != s3.mul(b, a)
    assert s3.commutator(a, b) != s3.identity
    assert s3.conjugate(b, a) == s3.mul(s3.inverse(b), a, b)


def test_cyclic_group():
    z5 = cyclic_group(5)
    assert z5.mul(2, 4) == 1
    assert z5.inverse(2) == 3
    assert z5.is_abelian()
    assert z5.conjugate(3, 2) == 2


def test_non_associative_table_is_reported():
    table = [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
    names = {v.name for v in group_validate(FiniteGroup(table))}
    assert "associativity" in names


def test_unknown_element_name():
    with pytest.raises(ParseError):
        cyclic_group(2).index("h")


def test_trace_weights_without_deprecations():
    with warnings.catch_warnings():
        warnings.simplefilter("error", DeprecationWarning)
        weights = gsn_algebra._trace_weights.__wrapped__(12)
    assert weights == (1, 0, Fraction(1, 2), 0)

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gradus.scalar import services
from gradus.scalar.exceptions import DivisionByZero, FieldMismatch, FieldNotParsed, NotPrime
from gradus.scalar.models import Scalar
from gradus.scalar.schemas import FieldSpec
from gradus.scalar.utils import is_prime

FIELDS = [FieldSpec.rationals(), FieldSpec.prime(7), FieldSpec.prime(65537)]

small = st.integers(min_value=-10**6, max_value=10**6)


def test_rational_sum(qq):
    half = Scalar.of(qq, "1/2")
    third = Scalar.of(qq, Fraction(1, 3))

    assert services.add(half, third) == Scalar.of(qq, Fraction(5, 6))


def test_product_mod_seven(f7):
    assert services.mul(Scalar.of(f7, 3), Scalar.of(f7, 5)) == Scalar.of(f7, 1)


def test_division_by_itself(qq):
    value = Scalar.of(qq, "2/3")

    assert services.div(value, value) == Scalar.of(qq, 1)


def test_division_by_zero(f7, qq):
    with pytest.raises(DivisionByZero):
        services.div(Scalar.of(f7, 3), Scalar.of(f7, 7))
    with pytest.raises(ZeroDivisionError):
        Scalar.of(qq, 0).inverse()


def test_fractions_embed_in_prime_field(f7):
    assert Scalar.of(f7, "1/2").value == 4
    assert Scalar.of(f7, -1).value == 6
    with pytest.raises(DivisionByZero):
        Scalar.of(f7, Fraction(1, 7))


def test_mixed_fields_rejected(f7, qq):
    with pytest.raises(FieldMismatch):
        Scalar.of(f7, 1) + Scalar.of(qq, 1)


@pytest.mark.parametrize(
    "coeffs, p, expected",
    [
        ([6, -1, 10], 7, [6, 6, 3]),
        ([65537], 65537, [0]),
        ([], 5, []),
    ],
)
def test_reduce_integer_poly_mod_p(coeffs, p, expected):
    assert [value.value for value in services.reduce_integer_poly_mod_p(coeffs, p)] == expected


@pytest.mark.parametrize(
    "text, expected",
    [
        ("qq", FieldSpec.rationals()),
        ("fp:7", FieldSpec.prime(7)),
        (" FP:65537 ", FieldSpec.prime(65537)),
    ],
)
def test_parse_field(text, expected):
    assert FieldSpec.parse(text) == expected
    assert FieldSpec.parse(str(expected)) == expected


@pytest.mark.parametrize("text", ["zz", "fp", "fp:", "fp:-7", "f7"])
def test_parse_field_rejects(text):
    with pytest.raises(FieldNotParsed):
        FieldSpec.parse(text)


@pytest.mark.parametrize("text", ["fp:8", "fp:1", "fp:65535"])
def test_composite_modulus_rejected(text):
    with pytest.raises(NotPrime):
        FieldSpec.parse(text)


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(65537)
    assert is_prime(4294967311)
    assert not is_prime(65537 * 65539)


@pytest.mark.parametrize("field", FIELDS, ids=str)
@settings(max_examples=300)
@given(a=small, b=small, c=small)
def test_field_axioms(field, a, b, c):
    x, y, z = (Scalar.of(field, value) for value in (a, b, c))

    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == Scalar.of(field, 0)
    if not y.is_zero:
        assert (x / y) * y == x
        assert y * y.inverse() == Scalar.of(field, 1)

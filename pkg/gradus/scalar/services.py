from gradus.scalar.models import Scalar
from gradus.scalar.schemas import FieldSpec


def add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def sub(a: Scalar, b: Scalar) -> Scalar:
    return a - b


def mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def div(a: Scalar, b: Scalar) -> Scalar:
    return a / b


def reduce_integer_poly_mod_p(coeffs: list[int], p: int) -> list[Scalar]:
    """
    Reduces an integer coefficient list coefficient-wise modulo a prime.

    Args:
        coeffs (list[int]): Integer coefficients.
        p (int): The prime modulus.

    Returns:
        list[Scalar]: The residues as elements of Z/p.
    """

    field = FieldSpec.prime(p)

    return [Scalar.of(field, coeff) for coeff in coeffs]

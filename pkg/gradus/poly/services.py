import logging
from math import comb, factorial
from typing import Iterator, Sequence

from cachetools import LRUCache, cached

from gradus.poly.exceptions import CharacteristicTooSmall
from gradus.poly.models import Exponents, Polynomial
from gradus.poly.schemas import Bidegree, RingSpec
from gradus.scalar.models import Scalar
from gradus.scalar.schemas import FieldSpec, RawScalar

logger = logging.getLogger(__name__)


def compositions(total: int, parts: int) -> Iterator[Exponents]:
    """Yields every vector of ``parts`` nonnegative integers summing to ``total``, lex-descending."""

    if total < 0:
        return
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


@cached(cache=LRUCache(maxsize=512))
def basis(ring: RingSpec, deg: Bidegree) -> tuple[Exponents, ...]:
    """
    Lists the monomials of a graded piece.

    Fiber exponent vectors come first in lex-descending order; for each of them the base
    exponent vectors follow in lex-descending order. Inside one piece every fiber block
    has total degree n and fixes the base degree, so this is the graded-lex order on
    fiber exponents, then base exponents.

    Args:
        ring (RingSpec): The ambient ring.
        deg (Bidegree): The bidegree of the piece.

    Returns:
        tuple[Exponents, ...]: Exponent tuples, base exponents first.
    """

    m, n = deg
    weights = ring.fiber_weights
    monomials: list[Exponents] = []

    for fiber in compositions(n, len(weights)):
        base_degree = m + sum(b * w for b, w in zip(fiber, weights))
        for base in compositions(base_degree, ring.num_base):
            monomials.append(base + fiber)

    logger.debug("basis %s%s has %d monomials", ring.label, Bidegree(m, n), len(monomials))
    return tuple(monomials)


@cached(cache=LRUCache(maxsize=512))
def basis_index(ring: RingSpec, deg: Bidegree) -> dict[Exponents, int]:
    return {monomial: position for position, monomial in enumerate(basis(ring, deg))}


def dim(ring: RingSpec, deg: Bidegree) -> int:
    """Dimension of a graded piece, counted without listing the monomials."""

    m, n = deg
    if n < 0:
        return 0

    span = ring.num_base - 1
    total = 0
    for fiber in compositions(n, len(ring.fiber_weights)):
        base_degree = m + sum(b * w for b, w in zip(fiber, ring.fiber_weights))
        if base_degree >= 0:
            total += comb(base_degree + span, span)
    return total


def _multinomial(exponents: Sequence[int]) -> int:
    result = factorial(sum(exponents))
    for value in exponents:
        result //= factorial(value)
    return result


def power_of_linear(
    ring: RingSpec,
    field: FieldSpec,
    coeffs: Sequence[Scalar | RawScalar | int],
    exponent: int,
) -> Polynomial:
    """
    Expands ``(c0*x0 + ... + cn*xn)^k`` with multinomial coefficients.

    Args:
        ring (RingSpec): Ring whose base variables carry the linear form.
        field (FieldSpec): Coefficient field.
        coeffs (Sequence): One coefficient per base variable.
        exponent (int): The power k, nonnegative.

    Returns:
        Polynomial: The expanded power. A negative exponent yields the zero polynomial.
    """

    if exponent < 0:
        return Polynomial.zero(ring, field)

    characteristic = field.characteristic
    if characteristic and exponent >= characteristic:
        raise CharacteristicTooSmall(exponent=exponent, characteristic=characteristic)

    values = [field.element(c.value if isinstance(c, Scalar) else c) for c in coeffs]
    support = [index for index, value in enumerate(values) if value != 0]

    terms: dict[Exponents, RawScalar] = {}
    for powers in compositions(exponent, len(support)):
        full = [0] * ring.num_base
        coefficient = field.element(_multinomial(powers))
        for index, power in zip(support, powers):
            full[index] = power
            coefficient = field.mul(coefficient, field.element(values[index] ** power))
        terms[tuple(full)] = coefficient

    return Polynomial.base_form(ring, field, terms)


def linear_form(ring: RingSpec, field: FieldSpec, coeffs: Sequence[RawScalar | int]) -> Polynomial:
    return power_of_linear(ring, field, coeffs, 1)


def sum_of_powers(ring: RingSpec, field: FieldSpec, exponent: int, variables: Sequence[int]) -> Polynomial:
    """The Fermat-type polynomial sum of ``x_k^exponent`` over the given base variables."""

    if exponent < 0:
        return Polynomial.zero(ring, field)
    result = Polynomial.zero(ring, field)
    for index in variables:
        result = result + Polynomial.variable(ring, field, index, exponent)
    return result


def jacobian_generators(poly: Polynomial) -> list[Polynomial]:
    """All first partial derivatives, zero ones omitted."""

    partials = [poly.partial(index) for index in range(poly.ring.num_vars)]
    return [p for p in partials if not p.is_zero]

from typing import Iterable, Iterator, Mapping

from gradus.poly.exceptions import CharacteristicTooSmall, NotHomogeneous, RingMismatch
from gradus.poly.schemas import Bidegree, RingSpec
from gradus.scalar.models import Scalar
from gradus.scalar.schemas import FieldSpec, RawScalar

Exponents = tuple[int, ...]


class Polynomial:
    """
    A sparse polynomial with exact coefficients over a bigraded ring.

    Terms map exponent tuples (base exponents first, then fiber exponents) to nonzero
    raw field values. Instances are treated as immutable.
    """

    __slots__ = ("ring", "field", "terms")

    def __init__(
        self,
        ring: RingSpec,
        field: FieldSpec,
        terms: Mapping[Exponents, RawScalar | int] | None = None,
    ):
        self.ring = ring
        self.field = field

        cleaned: dict[Exponents, RawScalar] = {}
        for exponents, coefficient in (terms or {}).items():
            value = field.element(coefficient)
            if value != 0:
                cleaned[tuple(exponents)] = value
        self.terms = cleaned

    @classmethod
    def _trusted(
        cls, ring: RingSpec, field: FieldSpec, terms: dict[Exponents, RawScalar]
    ) -> "Polynomial":
        poly = cls.__new__(cls)
        poly.ring = ring
        poly.field = field
        poly.terms = {key: value for key, value in terms.items() if value != 0}
        return poly

    @classmethod
    def zero(cls, ring: RingSpec, field: FieldSpec) -> "Polynomial":
        return cls._trusted(ring, field, {})

    @classmethod
    def constant(cls, ring: RingSpec, field: FieldSpec, value: RawScalar | int = 1) -> "Polynomial":
        return cls(ring, field, {(0,) * ring.num_vars: value})

    @classmethod
    def monomial(
        cls,
        ring: RingSpec,
        field: FieldSpec,
        exponents: Exponents,
        coefficient: RawScalar | int = 1,
    ) -> "Polynomial":
        return cls(ring, field, {tuple(exponents): coefficient})

    @classmethod
    def variable(cls, ring: RingSpec, field: FieldSpec, var: int | str, power: int = 1) -> "Polynomial":
        index = ring.variable_index(var) if isinstance(var, str) else var
        exponents = [0] * ring.num_vars
        exponents[index] = power
        return cls.monomial(ring, field, tuple(exponents))

    @classmethod
    def base_form(
        cls, ring: RingSpec, field: FieldSpec, terms: Mapping[Exponents, RawScalar | int]
    ) -> "Polynomial":
        """Builds a polynomial in the base variables only from short exponent tuples."""

        padding = (0,) * (ring.num_vars - ring.num_base)
        return cls(ring, field, {tuple(exps) + padding: value for exps, value in terms.items()})

    def _check(self, other: "Polynomial") -> None:
        if self.ring != other.ring or self.field != other.field:
            raise RingMismatch(left=self.ring.label, right=other.ring.label)

    def _coerce(self, other: "Polynomial | Scalar | RawScalar | int") -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, Scalar):
            other = other.value
        return Polynomial.constant(self.ring, self.field, other)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Exponents, RawScalar]]:
        return iter(self.terms.items())

    def coefficient(self, exponents: Exponents) -> Scalar:
        return Scalar(self.terms.get(tuple(exponents), self.field.zero), self.field)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, self.field, frozenset(self.terms.items())))

    def __add__(self, other: "Polynomial | Scalar | RawScalar | int") -> "Polynomial":
        other = self._coerce(other)
        terms = dict(self.terms)
        for exponents, value in other.terms.items():
            terms[exponents] = self.field.add(terms.get(exponents, self.field.zero), value)
        return Polynomial._trusted(self.ring, self.field, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._trusted(
            self.ring, self.field, {exps: self.field.neg(value) for exps, value in self.terms.items()}
        )

    def __sub__(self, other: "Polynomial | Scalar | RawScalar | int") -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: "Polynomial | Scalar | RawScalar | int") -> "Polynomial":
        return self._coerce(other) - self

    def scale(self, value: RawScalar | int) -> "Polynomial":
        factor = self.field.element(value)
        return Polynomial._trusted(
            self.ring,
            self.field,
            {exps: self.field.mul(coefficient, factor) for exps, coefficient in self.terms.items()},
        )

    def __mul__(self, other: "Polynomial | Scalar | RawScalar | int") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other.value if isinstance(other, Scalar) else other)

        self._check(other)
        field = self.field
        terms: dict[Exponents, RawScalar] = {}
        for left_exps, left in self.terms.items():
            for right_exps, right in other.terms.items():
                exponents = tuple(a + b for a, b in zip(left_exps, right_exps))
                terms[exponents] = field.add(terms.get(exponents, field.zero), field.mul(left, right))
        return Polynomial._trusted(self.ring, field, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")

        result = Polynomial.constant(self.ring, self.field)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def multiply_monomial(self, exponents: Exponents) -> "Polynomial":
        """Shifts every term by a monomial; no coefficient arithmetic needed."""

        return Polynomial._trusted(
            self.ring,
            self.field,
            {tuple(a + b for a, b in zip(exps, exponents)): value for exps, value in self.terms.items()},
        )

    def bidegrees(self) -> set[Bidegree]:
        return {self.ring.bidegree(exps) for exps in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    @property
    def bidegree(self) -> Bidegree | None:
        """
        The bidegree of a homogeneous polynomial; ``None`` for the zero polynomial.

        Raises:
            NotHomogeneous: If terms of several bidegrees are present.
        """

        degrees = self.bidegrees()
        if not degrees:
            return None
        if len(degrees) > 1:
            raise NotHomogeneous(polynomial=self.to_text(), bidegrees=sorted(degrees))
        return degrees.pop()

    def partial(self, var: int | str) -> "Polynomial":
        """
        Formal partial derivative.

        Raises:
            CharacteristicTooSmall: If an exponent reaches the field characteristic.
        """

        index = self.ring.variable_index(var) if isinstance(var, str) else var
        characteristic = self.field.characteristic
        field = self.field

        terms: dict[Exponents, RawScalar] = {}
        for exps, value in self.terms.items():
            power = exps[index]
            if power == 0:
                continue
            if characteristic and power >= characteristic:
                raise CharacteristicTooSmall(exponent=power, characteristic=characteristic)
            shifted = exps[:index] + (power - 1,) + exps[index + 1 :]
            terms[shifted] = field.add(terms.get(shifted, field.zero), field.mul(value, power))
        return Polynomial._trusted(self.ring, field, terms)

    def change_ring(self, ring: RingSpec) -> "Polynomial":
        """
        Moves a polynomial between rings with the same base variables.

        Fiber exponents are padded with zeros or dropped; dropping a nonzero exponent
        is a ring mismatch.
        """

        if ring.num_base != self.ring.num_base:
            raise RingMismatch(left=self.ring.label, right=ring.label)

        width = ring.num_vars
        terms: dict[Exponents, RawScalar] = {}
        for exps, value in self.terms.items():
            if any(exps[width:]):
                raise RingMismatch(left=self.ring.label, right=ring.label)
            terms[exps[:width] + (0,) * (width - len(exps))] = value
        return Polynomial._trusted(ring, self.field, terms)

    def reduce_monomials(self, exclude: Iterable[Exponents]) -> "Polynomial":
        """Drops every term divisible by one of the given monomials."""

        divisors = list(exclude)
        return Polynomial._trusted(
            self.ring,
            self.field,
            {
                exps: value
                for exps, value in self.terms.items()
                if not any(all(a >= b for a, b in zip(exps, divisor)) for divisor in divisors)
            },
        )

    def sorted_terms(self) -> list[tuple[Exponents, RawScalar]]:
        base = self.ring.num_base
        return sorted(self.terms.items(), key=lambda item: (item[0][base:], item[0][:base]), reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"

        names = self.ring.variable_names
        pieces: list[str] = []
        for exps, value in self.sorted_terms():
            factors = [
                name if power == 1 else f"{name}^{power}"
                for name, power in zip(names, exps)
                if power
            ]
            negative = value < 0
            magnitude = -value if negative else value
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(magnitude)] + factors)

            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.ring.label}, {self.field}, {self.to_text()!r})"

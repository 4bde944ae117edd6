import enum
import random
from fractions import Fraction

from pydantic import BaseModel as BaseSchema, ConfigDict, model_validator

from gradus.scalar.exceptions import DivisionByZero, FieldNotParsed, NotPrime
from gradus.scalar.utils import is_prime

RawScalar = Fraction | int


class FieldKind(str, enum.Enum):
    RATIONALS = "qq"
    PRIME = "fp"


class FieldSpec(BaseSchema):
    """
    An exact field: the rationals or a prime field Z/p.

    Elements are handled as raw values: ``Fraction`` in lowest terms over QQ,
    ``int`` in ``[0, p)`` over Z/p.
    """

    kind: FieldKind
    modulus: int | None = None

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_modulus(self) -> "FieldSpec":
        if self.kind == FieldKind.RATIONALS:
            if self.modulus is not None:
                raise NotPrime("The rationals take no modulus.", modulus=self.modulus)
            return self

        if self.modulus is None or not is_prime(self.modulus):
            raise NotPrime(modulus=self.modulus)

        return self

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(kind=FieldKind.RATIONALS)

    @classmethod
    def prime(cls, modulus: int) -> "FieldSpec":
        return cls(kind=FieldKind.PRIME, modulus=modulus)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """
        Parses the command-line notation of a field.

        Args:
            text (str): Either ``qq`` or ``fp:PRIME``.

        Returns:
            FieldSpec: The parsed field.
        """

        value = text.strip().lower()
        if value in ("qq", "q", "rationals"):
            return cls.rationals()

        kind, _, modulus = value.partition(":")
        if kind != "fp" or not modulus.isdigit():
            raise FieldNotParsed(field=text)

        return cls.prime(int(modulus))

    def __str__(self) -> str:
        if self.modulus is None:
            return "qq"
        return f"fp:{self.modulus}"

    @property
    def is_prime_field(self) -> bool:
        return self.modulus is not None

    @property
    def characteristic(self) -> int:
        return self.modulus or 0

    @property
    def zero(self) -> RawScalar:
        return 0 if self.modulus else Fraction(0)

    @property
    def one(self) -> RawScalar:
        return 1 if self.modulus else Fraction(1)

    def element(self, value: RawScalar | str) -> RawScalar:
        """
        Normalizes an integer, fraction or decimal string into this field.

        Args:
            value (RawScalar | str): The value to embed.

        Returns:
            RawScalar: The canonical representative.
        """

        if isinstance(value, str):
            value = Fraction(value.strip())

        if self.modulus is None:
            return Fraction(value)

        if isinstance(value, Fraction):
            if value.denominator % self.modulus == 0:
                raise DivisionByZero(value=str(value), field=str(self))
            return value.numerator * pow(value.denominator, -1, self.modulus) % self.modulus

        return int(value) % self.modulus

    def add(self, a: RawScalar, b: RawScalar) -> RawScalar:
        if self.modulus is None:
            return a + b
        return (a + b) % self.modulus

    def sub(self, a: RawScalar, b: RawScalar) -> RawScalar:
        if self.modulus is None:
            return a - b
        return (a - b) % self.modulus

    def neg(self, a: RawScalar) -> RawScalar:
        if self.modulus is None:
            return -a
        return -a % self.modulus

    def mul(self, a: RawScalar, b: RawScalar) -> RawScalar:
        if self.modulus is None:
            return a * b
        return a * b % self.modulus

    def inv(self, a: RawScalar) -> RawScalar:
        if a == 0:
            raise DivisionByZero(field=str(self))
        if self.modulus is None:
            return 1 / a
        return pow(a, -1, self.modulus)

    def div(self, a: RawScalar, b: RawScalar) -> RawScalar:
        return self.mul(a, self.inv(b))

    def random_element(self, rng: random.Random, bound: int, *, nonzero: bool = False) -> RawScalar:
        """
        Draws a coefficient for generic polynomials.

        Over Z/p the draw is uniform on the field; over QQ it is a uniform integer in
        ``[-bound, bound]``.

        Args:
            rng (random.Random): Seeded generator.
            bound (int): Integer range over QQ.
            nonzero (bool): Reject zero.

        Returns:
            RawScalar: The drawn element.
        """

        while True:
            if self.modulus is None:
                value = Fraction(rng.randint(-bound, bound))
            else:
                value = rng.randrange(self.modulus)
            if not nonzero or value != 0:
                return value

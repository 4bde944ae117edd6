import enum
from typing import NamedTuple

from pydantic import BaseModel as BaseSchema, ConfigDict, Field, model_validator

from gradus.poly.exceptions import InvalidType


class Bidegree(NamedTuple):
    m: int
    n: int

    def __add__(self, other: "Bidegree") -> "Bidegree":  # type: ignore[override]
        return Bidegree(self.m + other[0], self.n + other[1])

    def __sub__(self, other: "Bidegree") -> "Bidegree":
        return Bidegree(self.m - other[0], self.n - other[1])

    def __str__(self) -> str:
        return f"({self.m},{self.n})"


class TypeTuple(BaseSchema):
    """
    A quadric surface bundle type (d0, d1, d2, d3).

    The degrees are sorted so that r0 <= r1 <= r2 <= r3; the shift d is the smallest
    degree and d_j = 2 r_j + d.
    """

    input_degrees: tuple[int, int, int, int]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_parity(self) -> "TypeTuple":
        if any(value < 0 for value in self.input_degrees):
            raise InvalidType(type=self.input_degrees)

        if len({value % 2 for value in self.input_degrees}) != 1:
            raise InvalidType(type=self.input_degrees)

        return self

    @classmethod
    def of(cls, *degrees: int) -> "TypeTuple":
        return cls(input_degrees=tuple(degrees))

    @classmethod
    def parse(cls, text: str) -> "TypeTuple":
        try:
            values = tuple(int(part) for part in text.replace(" ", "").split(","))
        except ValueError:
            raise InvalidType(type=text)

        if len(values) != 4:
            raise InvalidType(type=text)

        return cls(input_degrees=values)

    @property
    def degrees(self) -> tuple[int, int, int, int]:
        return tuple(sorted(self.input_degrees))

    @property
    def d(self) -> int:
        return self.degrees[0]

    @property
    def r(self) -> tuple[int, int, int, int]:
        return tuple((value - self.d) // 2 for value in self.degrees)

    @property
    def t(self) -> int:
        return 4 * self.d - 3 + sum(self.r)

    @property
    def is_trivially_rational(self) -> bool:
        """Type (0,0,0,0) is the product with a quadric surface."""
        return self.degrees == (0, 0, 0, 0)

    @property
    def label(self) -> str:
        return ",".join(str(value) for value in self.degrees)

    def __str__(self) -> str:
        return f"({self.label})"


class RingKind(str, enum.Enum):
    S = "S"
    T = "T"
    U = "U"
    P = "P"


class RingSpec(BaseSchema):
    """
    A bigraded polynomial ring.

    Base variables x_k have bidegree (1,0); fiber variable j has bidegree (-w_j, 1).
    Monomials are exponent tuples, base exponents first.
    """

    kind: RingKind
    num_base: int = Field(ge=1)
    fiber_weights: tuple[int, ...] = ()
    fiber_names: tuple[str, ...] = ()

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_fibers(self) -> "RingSpec":
        if len(self.fiber_weights) != len(self.fiber_names):
            raise ValueError("every fiber variable needs exactly one weight")

        if self.kind == RingKind.P and self.fiber_weights:
            raise ValueError("P_n has no fiber variables")

        return self

    @classmethod
    def for_s(cls, bundle: TypeTuple) -> "RingSpec":
        return cls(
            kind=RingKind.S,
            num_base=3,
            fiber_weights=bundle.r,
            fiber_names=("y0", "y1", "y2", "y3"),
        )

    @classmethod
    def for_t(cls, bundle: TypeTuple) -> "RingSpec":
        d = bundle.degrees
        return cls(kind=RingKind.T, num_base=3, fiber_weights=(d[0], d[1]), fiber_names=("z0", "z1"))

    @classmethod
    def for_u(cls, bundle: TypeTuple) -> "RingSpec":
        d = bundle.degrees
        return cls(kind=RingKind.U, num_base=3, fiber_weights=(d[1], d[3]), fiber_names=("z1", "z3"))

    @classmethod
    def projective(cls, n: int) -> "RingSpec":
        return cls(kind=RingKind.P, num_base=n + 1)

    @property
    def label(self) -> str:
        if self.kind == RingKind.P:
            return f"P_{self.num_base - 1}"
        return self.kind.value

    @property
    def num_vars(self) -> int:
        return self.num_base + len(self.fiber_weights)

    @property
    def variable_names(self) -> tuple[str, ...]:
        return tuple(f"x{k}" for k in range(self.num_base)) + self.fiber_names

    def variable_index(self, name: str) -> int:
        return self.variable_names.index(name)

    def bidegree(self, exponents: tuple[int, ...]) -> Bidegree:
        """Bidegree of a monomial given by its exponent tuple."""

        base = exponents[: self.num_base]
        fiber = exponents[self.num_base :]

        return Bidegree(
            sum(base) - sum(b * w for b, w in zip(fiber, self.fiber_weights)),
            sum(fiber),
        )

    def variable_bidegree(self, index: int) -> Bidegree:
        if index < self.num_base:
            return Bidegree(1, 0)
        return Bidegree(-self.fiber_weights[index - self.num_base], 1)

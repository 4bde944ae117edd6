from pydantic import BaseModel as BaseSchema, ConfigDict, Field, computed_field, model_validator

from gradus.poly.models import Polynomial
from gradus.scalar.schemas import FieldSpec


class HilbertFunction(BaseSchema):
    coefficients: list[int]

    model_config = ConfigDict(frozen=True)

    @property
    def socle_degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, degree: int) -> int:
        if 0 <= degree < len(self.coefficients):
            return self.coefficients[degree]
        return 0

    @property
    def is_symmetric(self) -> bool:
        return self.coefficients == self.coefficients[::-1]

    @property
    def is_unimodal(self) -> bool:
        values = self.coefficients
        peak = values.index(max(values)) if values else 0
        rising = all(a <= b for a, b in zip(values[:peak], values[1 : peak + 1]))
        falling = all(a >= b for a, b in zip(values[peak:], values[peak + 1 :]))
        return rising and falling


class CIQuotient(BaseSchema):
    """
    An Artinian complete intersection ``P_n / (f_0, ..., f_n)`` certified by its Hilbert function.
    """

    n: int = Field(ge=0)
    field: FieldSpec
    generator_degrees: tuple[int, ...]
    generators: tuple[Polynomial, ...]
    hilbert: HilbertFunction

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_shape(self) -> "CIQuotient":
        if len(self.generators) != self.n + 1 or len(self.generator_degrees) != self.n + 1:
            raise ValueError("a complete intersection in P_n has n + 1 generators")
        if self.hilbert.socle_degree != self.socle_degree:
            raise ValueError("Hilbert function must end at the socle degree")
        return self

    @property
    def socle_degree(self) -> int:
        return sum(m - 1 for m in self.generator_degrees)


class MaximalRankFailure(BaseSchema):
    m: int
    i: int
    rank: int
    expected: int


class LefschetzCheck(BaseSchema):
    """Result of testing one linear form for the strong Lefschetz property."""

    coefficients: list[str]
    is_sl: bool
    checked_maps: int
    failures: list[MaximalRankFailure] = []


class LefschetzSearch(BaseSchema):
    degrees: tuple[int, ...]
    hilbert: list[int]
    socle: int
    found: bool
    sl_element: list[str] | None = None
    candidates_tried: int
    checks: list[LefschetzCheck] = []


class BoundCheck(BaseSchema):
    """
    A containment checked at one degree against a proven lower bound.

    ``twice_bound`` stores twice the bound so that half-integral bounds stay exact;
    ``guaranteed`` states that the degree lies at or above it.
    """

    degrees: tuple[int, ...]
    power: int | None = None
    degree: int
    twice_bound: int
    full: bool
    socle_dim: int | None = None

    @computed_field
    @property
    def guaranteed(self) -> bool:
        return 2 * self.degree >= self.twice_bound

    @computed_field
    @property
    def consistent(self) -> bool:
        if self.socle_dim is not None and self.socle_dim != 1:
            return False
        return self.full or not self.guaranteed


class HarimaWatanabeReport(BaseSchema):
    degrees: tuple[int, ...]
    linear_power: str
    search: LefschetzSearch

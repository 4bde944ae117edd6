from pydantic import BaseModel as BaseSchema, ConfigDict, Field, model_validator

from gradus.ideals.exceptions import NoAmbientRing
from gradus.linalg.models import ExactMatrix
from gradus.poly.exceptions import RingMismatch
from gradus.poly.models import Exponents, Polynomial
from gradus.poly.schemas import Bidegree, RingSpec
from gradus.scalar.schemas import FieldSpec


class MembershipProblem(BaseSchema):
    """A target bidegree and homogeneous generators; asks whether the ideal fills the piece."""

    ring: RingSpec
    field: FieldSpec
    generators: tuple[Polynomial, ...] = ()
    target: Bidegree

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_generators(self) -> "MembershipProblem":
        for generator in self.generators:
            if generator.ring != self.ring or generator.field != self.field:
                raise RingMismatch(left=self.ring.label, right=generator.ring.label)
            # raises NotHomogeneous for mixed bidegrees
            generator.bidegree
        return self

    @classmethod
    def of(
        cls,
        generators: list[Polynomial] | tuple[Polynomial, ...],
        target: Bidegree | tuple[int, int],
        ring: RingSpec | None = None,
        field: FieldSpec | None = None,
    ) -> "MembershipProblem":
        """Takes ring and field from the first generator unless they are given."""

        if generators:
            ring = ring or generators[0].ring
            field = field or generators[0].field
        elif ring is None or field is None:
            raise NoAmbientRing(target=tuple(target))
        return cls(ring=ring, field=field, generators=tuple(generators), target=Bidegree(*target))

    def with_generators(self, *extra: Polynomial) -> "MembershipProblem":
        return MembershipProblem(
            ring=self.ring, field=self.field, generators=self.generators + extra, target=self.target
        )

    def at(self, target: Bidegree | tuple[int, int]) -> "MembershipProblem":
        return MembershipProblem(
            ring=self.ring, field=self.field, generators=self.generators, target=Bidegree(*target)
        )


class IdealPieceBasis(BaseSchema):
    """
    The RREF of the span of all generator multiples inside one graded piece.

    Columns of ``rref_rows`` are indexed by ``basis(ring, target)``; rows are the nonzero
    RREF rows, so their number is the rank.
    """

    ring: RingSpec
    target: Bidegree
    rref_rows: ExactMatrix
    pivots: tuple[int, ...]
    piece_dim: int = Field(ge=0)

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_rank(self) -> "IdealPieceBasis":
        if len(self.pivots) > self.piece_dim or self.rref_rows.cols != self.piece_dim:
            raise ValueError("rank of an ideal piece cannot exceed the piece dimension")
        return self

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def is_full(self) -> bool:
        return self.rank == self.piece_dim

    def standard_positions(self) -> list[int]:
        """Positions of target monomials that are not pivots; they span the quotient."""

        pivots = set(self.pivots)
        return [index for index in range(self.piece_dim) if index not in pivots]


class MembershipDetail(BaseSchema):
    """Outcome of a J-membership test for one polynomial."""

    polynomial: str
    bidegree: Bidegree | None
    ambient: Bidegree
    member: bool
    multipliers: int
    deficit: int = 0
    offending_monomial: Exponents | None = None

    model_config = ConfigDict(frozen=True)

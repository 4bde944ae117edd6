import enum

from pydantic import BaseModel as BaseSchema, ConfigDict, Field, computed_field, model_validator


class RankMethod(str, enum.Enum):
    EXACT = "exact"
    MODULAR_LOWER_BOUND = "modular-lower-bound"


class RankCertificate(BaseSchema):
    """
    Outcome of an exact rank computation.

    ``full_target_rank`` states that the rank equals the number of rows, i.e. the map
    from the column space onto the row space is surjective.

    ``pivot_cols`` index linearly independent columns. For ``modular-lower-bound``
    certificates they are the pivots found modulo the shortcut prime, which stay
    independent over QQ but need not be the first independent columns.
    """

    rows: int = Field(ge=0)
    cols: int = Field(ge=0)
    field: str
    rank: int = Field(ge=0)
    pivot_cols: list[int]
    full_target_rank: bool
    method: RankMethod = RankMethod.EXACT

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_rank(self) -> "RankCertificate":
        if self.rank > min(self.rows, self.cols):
            raise ValueError("rank exceeds matrix dimensions")
        if len(self.pivot_cols) != self.rank:
            raise ValueError("one pivot column per unit of rank")
        if self.full_target_rank != (self.rank == self.rows):
            raise ValueError("full_target_rank must equal rank == rows")
        return self

    @computed_field
    @property
    def cokernel_dim(self) -> int:
        return self.rows - self.rank

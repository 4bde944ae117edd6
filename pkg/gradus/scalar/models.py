from dataclasses import dataclass

from gradus.scalar.exceptions import FieldMismatch
from gradus.scalar.schemas import FieldSpec, RawScalar


@dataclass(frozen=True, slots=True)
class Scalar:
    """An immutable element of an exact field."""

    value: RawScalar
    field: FieldSpec

    @classmethod
    def of(cls, field: FieldSpec, value: RawScalar | str) -> "Scalar":
        return cls(field.element(value), field)

    def _other(self, other: "Scalar | int") -> RawScalar:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(left=str(self.field), right=str(other.field))
            return other.value
        return self.field.element(other)

    def __add__(self, other: "Scalar | int") -> "Scalar":
        return Scalar(self.field.add(self.value, self._other(other)), self.field)

    def __sub__(self, other: "Scalar | int") -> "Scalar":
        return Scalar(self.field.sub(self.value, self._other(other)), self.field)

    def __mul__(self, other: "Scalar | int") -> "Scalar":
        return Scalar(self.field.mul(self.value, self._other(other)), self.field)

    def __truediv__(self, other: "Scalar | int") -> "Scalar":
        return Scalar(self.field.div(self.value, self._other(other)), self.field)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self) -> "Scalar":
        return Scalar(self.field.neg(self.value), self.field)

    def inverse(self) -> "Scalar":
        return Scalar(self.field.inv(self.value), self.field)

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return str(self.value)

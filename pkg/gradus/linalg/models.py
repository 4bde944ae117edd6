from fractions import Fraction
from typing import Sequence

import numpy as np

from gradus.linalg.exceptions import DimensionMismatch, MatrixDumpError
from gradus.scalar.models import Scalar
from gradus.scalar.schemas import FieldSpec, RawScalar

# residues below this bound multiply without overflowing int64
INT64_MODULUS_LIMIT = 2**31


def field_dtype(field: FieldSpec) -> type | np.dtype:
    if field.modulus is not None and field.modulus < INT64_MODULUS_LIMIT:
        return np.int64
    return object


class ExactMatrix:
    """
    A dense matrix with entries in an exact field.

    Over Z/p the entries are a numpy ``int64`` array of residues (``object`` for very
    large primes); over QQ an ``object`` array of ``Fraction``.
    """

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data: np.ndarray):
        self.field = field
        self.data = data

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "ExactMatrix":
        data = np.zeros((rows, cols), dtype=field_dtype(field))
        if field.modulus is None:
            data[:] = Fraction(0)
        return cls(field, data)

    @classmethod
    def identity(cls, field: FieldSpec, size: int) -> "ExactMatrix":
        matrix = cls.zeros(field, size, size)
        for index in range(size):
            matrix.data[index, index] = field.one
        return matrix

    @classmethod
    def from_rows(
        cls,
        field: FieldSpec,
        rows: Sequence[Sequence[RawScalar | int | str | Scalar]],
        cols: int | None = None,
    ) -> "ExactMatrix":
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        matrix = cls.zeros(field, len(rows), width)
        for i, row in enumerate(rows):
            if len(row) != width:
                raise DimensionMismatch(row=i, expected=width, actual=len(row))
            for j, value in enumerate(row):
                raw = value.value if isinstance(value, Scalar) else value
                matrix.data[i, j] = field.element(raw)
        return matrix

    @classmethod
    def from_integer_array(cls, field: FieldSpec, values: np.ndarray) -> "ExactMatrix":
        """Embeds an integer numpy array, reducing modulo p or converting to fractions."""

        values = np.asarray(values)
        if field.modulus is None:
            matrix = cls.zeros(field, *values.shape)
            for (i, j), value in np.ndenumerate(values):
                matrix.data[i, j] = Fraction(int(value))
            return matrix
        return cls(field, values.astype(object) % field.modulus).astype_field()

    def astype_field(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self.data.astype(field_dtype(self.field)))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def entry(self, i: int, j: int) -> Scalar:
        return Scalar(self.field.element(self.data[i, j]), self.field)

    def to_rows(self) -> list[list[RawScalar]]:
        return [[self.field.element(value) for value in row] for row in self.data.tolist()]

    def copy(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self.data.copy())

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self.data.T.copy())

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows or self.field != other.field:
            raise DimensionMismatch(left=self.shape, right=other.shape)

        if self.field.modulus is None:
            return ExactMatrix(self.field, self.data.dot(other.data))

        product = self.data.astype(object).dot(other.data.astype(object)) % self.field.modulus
        return ExactMatrix(self.field, product.astype(field_dtype(self.field)))

    __matmul__ = matmul

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and self.to_rows() == other.to_rows()
        )

    def dump(self) -> str:
        """Header line ``rows cols field`` followed by one line of exact entries per row."""

        lines = [f"{self.rows} {self.cols} {self.field}"]
        lines.extend(" ".join(str(value) for value in row) for row in self.to_rows())
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str) -> "ExactMatrix":
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines:
            raise MatrixDumpError()

        try:
            rows, cols, field_text = lines[0].split()
            entries = [line.split() for line in lines[1:]]
            if int(rows) != len(entries):
                raise MatrixDumpError(expected_rows=int(rows), actual_rows=len(entries))
            return cls.from_rows(FieldSpec.parse(field_text), entries, cols=int(cols))
        except ValueError as error:
            raise MatrixDumpError(reason=str(error))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, {self.field})"

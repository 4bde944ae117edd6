import logging
from fractions import Fraction
from math import lcm

import numpy as np

from gradus.config import settings
from gradus.linalg.exceptions import DimensionMismatch
from gradus.linalg.models import ExactMatrix, field_dtype
from gradus.linalg.schemas import RankCertificate, RankMethod
from gradus.scalar.schemas import FieldSpec

logger = logging.getLogger(__name__)


def _certificate(matrix: ExactMatrix, pivots: list[int], method=RankMethod.EXACT) -> RankCertificate:
    return RankCertificate(
        rows=matrix.rows,
        cols=matrix.cols,
        field=str(matrix.field),
        rank=len(pivots),
        pivot_cols=pivots,
        full_target_rank=len(pivots) == matrix.rows,
        method=method,
    )


def _eliminate_mod_p(data: np.ndarray, p: int, reduced: bool) -> tuple[np.ndarray, list[int]]:
    """
    Gaussian elimination over Z/p with the first nonzero entry of each column as pivot.

    With ``reduced`` the entries above each pivot are cleared as well (RREF); otherwise
    only the rows below are touched, which is enough for the rank.
    """

    a = data.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0

    for c in range(cols):
        if r == rows:
            break

        candidates = np.flatnonzero(a[r:, c])
        if candidates.size == 0:
            continue

        pivot_row = r + int(candidates[0])
        if pivot_row != r:
            a[[r, pivot_row]] = a[[pivot_row, r]]

        inverse = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inverse) % p

        column = a[:, c].copy()
        column[r] = 0
        if not reduced:
            column[:r] = 0
        targets = np.flatnonzero(column)
        if targets.size:
            a[targets, c:] = (a[targets, c:] - np.outer(column[targets], a[r, c:])) % p

        pivots.append(c)
        r += 1

    return a, pivots


def _integer_rows(data: np.ndarray) -> list[list[int]]:
    """Clears denominators row by row; row scaling keeps the row space."""

    result = []
    for row in data.tolist():
        scale = lcm(*(Fraction(value).denominator for value in row)) if row else 1
        result.append([int(Fraction(value) * scale) for value in row])
    return result


def _bareiss(rows: list[list[int]], cols: int) -> tuple[list[list[int]], list[int]]:
    """
    Fraction-free forward elimination; all divisions by the previous pivot are exact.

    Columns without a pivot are skipped, which keeps every entry a minor of the input.
    """

    a = [row[:] for row in rows]
    count = len(a)
    previous = 1
    pivots: list[int] = []
    r = 0

    for c in range(cols):
        if r == count:
            break

        pivot_row = next((i for i in range(r, count) if a[i][c] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            a[r], a[pivot_row] = a[pivot_row], a[r]

        pivot = a[r][c]
        pivot_tail = a[r][c + 1 :]
        for i in range(r + 1, count):
            row = a[i]
            factor = row[c]
            row[c] = 0
            for offset, value in enumerate(pivot_tail, start=c + 1):
                row[offset] = (pivot * row[offset] - factor * value) // previous

        previous = pivot
        pivots.append(c)
        r += 1

    return a, pivots


def _rref_rationals(matrix: ExactMatrix, reduced: bool = True) -> tuple[np.ndarray, list[int]]:
    echelon, pivots = _bareiss(_integer_rows(matrix.data), matrix.cols)

    result = np.empty(matrix.shape, dtype=object)
    for i in range(matrix.rows):
        for j in range(matrix.cols):
            result[i, j] = Fraction(echelon[i][j]) if i < len(pivots) else Fraction(0)

    if not reduced:
        return result, pivots

    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        result[k, :] = result[k, :] / result[k, c]
        above = [i for i in range(k) if result[i, c] != 0]
        if above:
            result[above, :] = result[above, :] - np.outer(result[above, c], result[k, :])

    return result, pivots


def rref(matrix: ExactMatrix) -> tuple[ExactMatrix, RankCertificate]:
    """
    Reduced row-echelon form.

    Args:
        matrix (ExactMatrix): The matrix to reduce.

    Returns:
        tuple[ExactMatrix, RankCertificate]: The RREF, with zero rows last, and its rank
        certificate.
    """

    if matrix.field.modulus is None:
        data, pivots = _rref_rationals(matrix)
    else:
        data, pivots = _eliminate_mod_p(matrix.data, matrix.field.modulus, reduced=True)

    reduced = ExactMatrix(matrix.field, data)
    return reduced, _certificate(matrix, pivots)


def _reduce_mod(matrix: ExactMatrix, prime: int) -> ExactMatrix | None:
    """The same matrix over Z/prime, or ``None`` if a denominator is divisible by it."""

    field = FieldSpec.prime(prime)
    reduced = np.zeros(matrix.shape, dtype=object)
    for (i, j), value in np.ndenumerate(matrix.data):
        value = Fraction(value)
        if value.denominator % prime == 0:
            return None
        reduced[i, j] = value.numerator * pow(value.denominator, -1, prime) % prime
    return ExactMatrix(field, reduced.astype(field_dtype(field)))


def rank_certificate(matrix: ExactMatrix, modular_shortcut: bool | None = None) -> RankCertificate:
    """
    Certifies the rank without forming the RREF.

    Over QQ the matrix is first ranked modulo ``SHORTCUT_PRIME``. Rank modulo a prime
    never exceeds the rational rank, so a maximal modular rank is the rational rank;
    such certificates carry ``method="modular-lower-bound"``. Otherwise the exact
    fraction-free elimination runs.

    Args:
        matrix (ExactMatrix): The matrix.
        modular_shortcut (bool | None): Override for the ``QQ_MODULAR_SHORTCUT`` setting.

    Returns:
        RankCertificate: Rank, pivots and verdict.
    """

    if matrix.field.modulus is not None:
        _, pivots = _eliminate_mod_p(matrix.data, matrix.field.modulus, reduced=False)
        return _certificate(matrix, pivots)

    use_shortcut = settings.QQ_MODULAR_SHORTCUT if modular_shortcut is None else modular_shortcut
    if use_shortcut and matrix.rows and matrix.cols:
        image = _reduce_mod(matrix, settings.SHORTCUT_PRIME)
        if image is not None:
            _, pivots = _eliminate_mod_p(image.data, settings.SHORTCUT_PRIME, reduced=False)
            if len(pivots) == min(matrix.shape):
                logger.debug("rank of %r settled modulo %d", matrix, settings.SHORTCUT_PRIME)
                return _certificate(matrix, pivots, RankMethod.MODULAR_LOWER_BOUND)

    _, pivots = _bareiss(_integer_rows(matrix.data), matrix.cols)
    return _certificate(matrix, pivots)


def rank(matrix: ExactMatrix) -> int:
    return rank_certificate(matrix).rank


def is_surjective(matrix: ExactMatrix) -> bool:
    """True iff the columns span the whole target space, i.e. rank equals rows."""

    return rank_certificate(matrix).full_target_rank


def pivot_columns(basis_rref: ExactMatrix) -> list[int]:
    """Pivot columns read off a matrix already in RREF."""

    pivots = []
    for row in basis_rref.data:
        nonzero = np.flatnonzero(row)
        if nonzero.size == 0:
            break
        pivots.append(int(nonzero[0]))
    return pivots


def reduce_rows(basis_rref: ExactMatrix, vectors: ExactMatrix, pivots: list[int] | None = None) -> ExactMatrix:
    """
    Residues of many row vectors modulo the row space of an RREF matrix.

    Each residue is ``v - v[pivots] @ R``; it vanishes exactly when ``v`` lies in the span.
    """

    if vectors.cols != basis_rref.cols or vectors.field != basis_rref.field:
        raise DimensionMismatch(expected=basis_rref.cols, actual=vectors.cols)

    pivots = pivot_columns(basis_rref) if pivots is None else pivots
    if not pivots or not vectors.rows:
        return vectors.copy()

    basis_rows = basis_rref.data[: len(pivots)]
    coefficients = vectors.data[:, pivots]
    modulus = basis_rref.field.modulus

    if modulus is None:
        return ExactMatrix(vectors.field, vectors.data - coefficients.dot(basis_rows))

    if modulus * modulus * len(pivots) < 2**62:
        projection = coefficients.dot(basis_rows) % modulus
    else:
        projection = coefficients.astype(object).dot(basis_rows.astype(object)) % modulus
    residue = (vectors.data - projection) % modulus
    return ExactMatrix(vectors.field, residue.astype(field_dtype(vectors.field)))


def row_space_reduce(basis_rref: ExactMatrix, vector: list) -> list:
    """
    The canonical residue of one vector modulo the row space of an RREF matrix.

    Raises:
        DimensionMismatch: If the vector length differs from the column count.
    """

    if len(vector) != basis_rref.cols:
        raise DimensionMismatch(expected=basis_rref.cols, actual=len(vector))

    residue = reduce_rows(basis_rref, ExactMatrix.from_rows(basis_rref.field, [vector], cols=basis_rref.cols))
    return residue.to_rows()[0]

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gradus.config import settings as gradus_settings
from gradus.linalg.exceptions import DimensionMismatch, MatrixDumpError
from gradus.linalg.models import ExactMatrix
from gradus.linalg.schemas import RankMethod
from gradus.linalg.services import (
    is_surjective,
    pivot_columns,
    rank,
    rank_certificate,
    reduce_rows,
    row_space_reduce,
    rref,
)
from gradus.scalar.schemas import FieldSpec

QQ = FieldSpec.rationals()
F7 = FieldSpec.prime(7)
BIG = FieldSpec.prime(4294967311)


def matrices(max_rows: int = 6, max_cols: int = 6, bound: int = 4):
    return st.integers(1, max_rows).flatmap(
        lambda rows: st.integers(1, max_cols).flatmap(
            lambda cols: st.lists(
                st.lists(st.integers(-bound, bound), min_size=cols, max_size=cols),
                min_size=rows,
                max_size=rows,
            )
        )
    )


def test_rank_of_dependent_rows():
    matrix = ExactMatrix.from_rows(QQ, [[1, 2], [2, 4]])
    certificate = rank_certificate(matrix)

    assert certificate.rank == 1
    assert certificate.cokernel_dim == 1
    assert not certificate.full_target_rank


@pytest.mark.parametrize("field", [QQ, F7, BIG], ids=str)
def test_identity_and_zero(field):
    assert rank(ExactMatrix.identity(field, 4)) == 4
    assert rank(ExactMatrix.zeros(field, 3, 5)) == 0
    assert rank(ExactMatrix.zeros(field, 3, 0)) == 0
    assert rank(ExactMatrix.from_rows(field, [[1, 2], [3, 4]])) == 2


def test_surjective():
    assert is_surjective(ExactMatrix.from_rows(QQ, [[1, 0, 0], [0, 1, 0]]))
    assert not is_surjective(ExactMatrix.from_rows(QQ, [[1, 0, 0], [0, 0, 0]]))
    assert not is_surjective(ExactMatrix.zeros(F7, 3, 0))


def test_rank_depends_on_characteristic():
    rows = [[1, 2], [3, -1]]

    assert rank(ExactMatrix.from_rows(QQ, rows)) == 2
    assert rank(ExactMatrix.from_rows(F7, rows)) == 1


def test_rref_over_rationals():
    reduced, certificate = rref(ExactMatrix.from_rows(QQ, [[2, 4, 1], [1, 3, 0]]))

    assert reduced.to_rows() == [[1, 0, Fraction(3, 2)], [0, 1, Fraction(-1, 2)]]
    assert certificate.pivot_cols == [0, 1]
    assert pivot_columns(reduced) == [0, 1]


def test_rref_mod_p_puts_zero_rows_last():
    reduced, certificate = rref(ExactMatrix.from_rows(F7, [[0, 0, 0], [0, 2, 4], [0, 1, 2]]))

    assert reduced.to_rows() == [[0, 1, 2], [0, 0, 0], [0, 0, 0]]
    assert certificate.rank == 1
    assert certificate.pivot_cols == [1]


def test_row_space_reduce():
    basis, _ = rref(ExactMatrix.from_rows(QQ, [[1, 0, 2], [0, 1, 3]]))

    assert row_space_reduce(basis, [2, 5, 19]) == [0, 0, 0]
    assert row_space_reduce(basis, [0, 0, 5]) == [0, 0, 5]
    assert row_space_reduce(basis, [1, 1, 1]) == [0, 0, -4]
    with pytest.raises(DimensionMismatch):
        row_space_reduce(basis, [1, 2])


@given(rows=matrices(), vector_seed=st.lists(st.integers(-5, 5), min_size=6, max_size=6))
def test_row_space_reduce_is_idempotent(rows, vector_seed):
    basis, _ = rref(ExactMatrix.from_rows(F7, rows))
    vector = vector_seed[: basis.cols]

    once = row_space_reduce(basis, vector)

    assert row_space_reduce(basis, once) == once


def test_reduce_rows_many_vectors():
    basis, _ = rref(ExactMatrix.from_rows(F7, [[1, 1, 0], [0, 0, 1]]))
    vectors = ExactMatrix.from_rows(F7, [[2, 2, 5], [1, 0, 0]])

    assert reduce_rows(basis, vectors).to_rows() == [[0, 0, 0], [0, 6, 0]]


@pytest.mark.parametrize("field", [QQ, F7], ids=str)
@settings(max_examples=60)
@given(rows=matrices())
def test_rank_of_transpose(field, rows):
    matrix = ExactMatrix.from_rows(field, rows)

    assert rank(matrix) == rank(matrix.transpose())


@settings(max_examples=60)
@given(rows=matrices(bound=20))
def test_modular_shortcut_agrees_with_exact(rows):
    matrix = ExactMatrix.from_rows(QQ, rows)

    exact = rank_certificate(matrix, modular_shortcut=False)
    fast = rank_certificate(matrix, modular_shortcut=True)

    assert exact.method == RankMethod.EXACT
    assert fast.rank == exact.rank
    assert rref(matrix)[1].rank == exact.rank


def test_modular_shortcut_method():
    certificate = rank_certificate(ExactMatrix.from_rows(QQ, [["1/2", 0], [0, 3]]), modular_shortcut=True)

    assert certificate.method == RankMethod.MODULAR_LOWER_BOUND
    assert certificate.full_target_rank


def test_modular_shortcut_pivots_are_independent_over_qq():
    prime = gradus_settings.SHORTCUT_PRIME
    rows = [[prime, 1]]
    matrix = ExactMatrix.from_rows(QQ, rows)

    fast = rank_certificate(matrix, modular_shortcut=True)
    exact = rank_certificate(matrix, modular_shortcut=False)

    assert fast.method == RankMethod.MODULAR_LOWER_BOUND
    assert fast.pivot_cols == [1]
    assert exact.pivot_cols == [0]
    chosen = [[row[column] for column in fast.pivot_cols] for row in rows]
    assert rank(ExactMatrix.from_rows(QQ, chosen)) == fast.rank


def test_matmul():
    left = ExactMatrix.from_rows(F7, [[1, 2], [3, 4]])
    right = ExactMatrix.from_rows(F7, [[0, 1], [1, 0]])

    assert (left @ right).to_rows() == [[2, 1], [4, 3]]
    with pytest.raises(DimensionMismatch):
        left @ ExactMatrix.identity(F7, 3)


def test_dump_and_load():
    matrix = ExactMatrix.from_rows(QQ, [["1/2", -3], [0, 7]])
    text = matrix.dump()

    assert text.splitlines()[0] == "2 2 qq"
    assert ExactMatrix.load(text) == matrix


@pytest.mark.parametrize("text", ["", "2 2 qq\n1 2\n", "x y qq\n", "1 2 qq\n1 a\n"])
def test_load_rejects(text):
    with pytest.raises(MatrixDumpError):
        ExactMatrix.load(text)


def test_ragged_rows_rejected():
    with pytest.raises(DimensionMismatch):
        ExactMatrix.from_rows(QQ, [[1, 2], [3]])

import logging

import numpy as np

from gradus.ideals.schemas import IdealPieceBasis, MembershipDetail, MembershipProblem
from gradus.linalg.models import ExactMatrix
from gradus.linalg.schemas import RankCertificate
from gradus.linalg.services import rank_certificate, reduce_rows, rref
from gradus.poly.exceptions import RingMismatch
from gradus.poly.models import Exponents, Polynomial
from gradus.poly.schemas import Bidegree, RingSpec
from gradus.poly.services import basis, basis_index
from gradus.scalar.schemas import FieldSpec

logger = logging.getLogger(__name__)

ColumnLabel = tuple[int, Exponents]


def _shift(exponents: Exponents, other: Exponents) -> Exponents:
    return tuple(a + b for a, b in zip(exponents, other))


class IdealService:
    """Containment and membership questions for graded pieces of ideals, decided by rank."""

    def build_matrix_with_labels(self, prob: MembershipProblem) -> tuple[ExactMatrix, list[ColumnLabel]]:
        """
        Assembles the multiplication matrix of a membership problem.

        Rows are indexed by ``basis(ring, target)``; one column per generator ``g`` and
        monomial ``c`` of ``basis(ring, target - deg g)`` holds the coordinates of ``g*c``.
        Generators with an empty source piece add no columns.

        Args:
            prob (MembershipProblem): Generators and target bidegree.

        Returns:
            tuple[ExactMatrix, list[ColumnLabel]]: The matrix and, per column, the
            generator index and multiplier monomial.
        """

        index = basis_index(prob.ring, prob.target)
        labels: list[ColumnLabel] = []
        for position, generator in enumerate(prob.generators):
            degree = generator.bidegree
            if degree is None:
                continue
            for multiplier in basis(prob.ring, prob.target - degree):
                labels.append((position, multiplier))

        matrix = ExactMatrix.zeros(prob.field, len(index), len(labels))
        data = matrix.data
        for column, (position, multiplier) in enumerate(labels):
            for exponents, value in prob.generators[position].terms.items():
                data[index[_shift(exponents, multiplier)], column] = value

        logger.debug("membership matrix %dx%d at %s", matrix.rows, matrix.cols, prob.target)
        return matrix, labels

    def build_matrix(self, prob: MembershipProblem) -> ExactMatrix:
        return self.build_matrix_with_labels(prob)[0]

    def contains_full_piece(
        self, prob: MembershipProblem, modular_shortcut: bool | None = None
    ) -> RankCertificate:
        """
        Decides whether the ideal contains the whole target piece.

        Args:
            prob (MembershipProblem): Generators and target bidegree.
            modular_shortcut (bool | None): Over QQ, allow settling full rank modulo a prime.

        Returns:
            RankCertificate: ``full_target_rank`` is true iff the rank equals the piece
            dimension.
        """

        return rank_certificate(self.build_matrix(prob), modular_shortcut=modular_shortcut)

    def quotient_piece_dim(self, prob: MembershipProblem) -> int:
        return self.contains_full_piece(prob).cokernel_dim

    def piece_basis(self, prob: MembershipProblem) -> IdealPieceBasis:
        """
        RREF of the ideal's piece, rows spanning it inside the target piece.

        Args:
            prob (MembershipProblem): Generators and target bidegree.

        Returns:
            IdealPieceBasis: Nonzero RREF rows and their pivots.
        """

        matrix = self.build_matrix(prob)
        reduced, certificate = rref(matrix.transpose())
        rows = ExactMatrix(prob.field, reduced.data[: certificate.rank].copy())

        logger.debug(
            "ideal piece at %s: rank %d of %d", prob.target, certificate.rank, matrix.rows
        )
        return IdealPieceBasis(
            ring=prob.ring,
            target=prob.target,
            rref_rows=rows,
            pivots=tuple(certificate.pivot_cols),
            piece_dim=matrix.rows,
        )

    def vectors(self, polys: list[Polynomial], ring: RingSpec, field: FieldSpec, target: Bidegree) -> ExactMatrix:
        """Coordinates of homogeneous polynomials of the target bidegree, one row each."""

        index = basis_index(ring, target)
        matrix = ExactMatrix.zeros(field, len(polys), len(index))
        for row, poly in enumerate(polys):
            for exponents, value in poly.terms.items():
                matrix.data[row, index[exponents]] = value
        return matrix

    def multiples(self, r: Polynomial, ambient: Bidegree) -> tuple[list[Exponents], ExactMatrix]:
        """All products ``c*r`` with ``c`` running over the monomials completing r to the ambient piece."""

        degree = r.bidegree
        multipliers = list(basis(r.ring, ambient - degree)) if degree is not None else []
        index = basis_index(r.ring, ambient)

        matrix = ExactMatrix.zeros(r.field, len(multipliers), len(index))
        for row, multiplier in enumerate(multipliers):
            for exponents, value in r.terms.items():
                matrix.data[row, index[_shift(exponents, multiplier)]] = value
        return multipliers, matrix

    def in_j_detail(self, r: Polynomial, ideal_piece: IdealPieceBasis, ambient: Bidegree) -> MembershipDetail:
        """
        Tests whether ``r*S`` meets the ambient piece inside the ideal.

        Every product ``c*r`` with a monomial ``c`` of bidegree ``ambient - deg r`` is
        reduced against the ideal piece; ``r`` belongs to J iff all residues vanish.

        Args:
            r (Polynomial): Homogeneous polynomial.
            ideal_piece (IdealPieceBasis): RREF of the ideal at the ambient bidegree.
            ambient (Bidegree): Usually ``(t, 4)``.

        Returns:
            MembershipDetail: Verdict, the number of multipliers, the rank deficit and
            the first multiplier whose product escapes the ideal.
        """

        if r.ring != ideal_piece.ring or ideal_piece.target != ambient:
            raise RingMismatch(left=r.ring.label, right=ideal_piece.ring.label)

        degree = r.bidegree
        multipliers, products = self.multiples(r, ambient)
        residues = reduce_rows(ideal_piece.rref_rows, products, list(ideal_piece.pivots))

        failing = [row for row in range(residues.rows) if np.any(residues.data[row])]
        deficit = 0
        if failing:
            failed = ExactMatrix(residues.field, residues.data[failing])
            deficit = rank_certificate(failed).rank

        return MembershipDetail(
            polynomial=r.to_text(),
            bidegree=degree,
            ambient=ambient,
            member=not failing,
            multipliers=len(multipliers),
            deficit=deficit,
            offending_monomial=multipliers[failing[0]] if failing else None,
        )

    def in_j(self, r: Polynomial, ideal_piece: IdealPieceBasis, ambient: Bidegree) -> bool:
        return self.in_j_detail(r, ideal_piece, ambient).member

    def hilbert_values(self, prob: MembershipProblem, degrees: range) -> list[int]:
        """Quotient dimensions at several bidegrees ``(m, n)`` for m in ``degrees``, n fixed."""

        return [self.quotient_piece_dim(prob.at(Bidegree(m, prob.target.n))) for m in degrees]

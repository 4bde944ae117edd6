import itertools
import logging
import random
from typing import Iterator, Sequence

import numpy as np

from gradus.config import settings
from gradus.ideals.schemas import IdealPieceBasis, MembershipProblem
from gradus.ideals.services import IdealService
from gradus.lefschetz.exceptions import InvalidDegrees, NotCompleteIntersection, NotLinear
from gradus.lefschetz.schemas import (
    BoundCheck,
    CIQuotient,
    HarimaWatanabeReport,
    HilbertFunction,
    LefschetzCheck,
    LefschetzSearch,
    MaximalRankFailure,
)
from gradus.linalg.models import ExactMatrix
from gradus.linalg.services import rank, reduce_rows
from gradus.poly.models import Polynomial
from gradus.poly.schemas import Bidegree, RingSpec
from gradus.poly.services import basis, basis_index, power_of_linear
from gradus.scalar.schemas import FieldSpec, RawScalar

logger = logging.getLogger(__name__)

ideal_service = IdealService()


def linear_coefficients(ell: Polynomial) -> list[RawScalar]:
    """Coefficients of a linear form in the base variables."""

    if ell.is_zero or ell.bidegree != Bidegree(1, 0):
        raise NotLinear(polynomial=ell.to_text())

    width = ell.ring.num_base
    coefficients = [ell.field.zero] * width
    for exponents, value in ell.terms.items():
        coefficients[exponents[:width].index(1)] = value
    return coefficients


def _signed(values: Sequence[RawScalar], field: FieldSpec) -> list[str]:
    """Prints residues in the symmetric range so that -1 reads as -1."""

    modulus = field.modulus
    if modulus is None:
        return [str(value) for value in values]
    return [str(value - modulus if value > modulus // 2 else value) for value in values]


class QuotientPieces:
    """RREF data of the ideal in every degree up to the socle, shared by all multiplication maps."""

    def __init__(self, quotient: CIQuotient):
        self.quotient = quotient
        self.ring = RingSpec.projective(quotient.n)
        problem = MembershipProblem(
            ring=self.ring, field=quotient.field, generators=quotient.generators, target=Bidegree(0, 0)
        )
        self.pieces: list[IdealPieceBasis] = [
            ideal_service.piece_basis(problem.at(Bidegree(m, 0)))
            for m in range(quotient.socle_degree + 1)
        ]
        self.standard = [piece.standard_positions() for piece in self.pieces]

    def dim(self, m: int) -> int:
        if 0 <= m < len(self.pieces):
            return len(self.standard[m])
        return 0

    def multiplication_map(self, power: Polynomial, m: int, i: int) -> ExactMatrix:
        """
        Matrix of multiplication by ``power`` (of degree i) from Q(m) to Q(m+i).

        Rows are indexed by the standard monomials of degree m, columns by those of m+i.
        """

        field = self.quotient.field
        source = basis(self.ring, Bidegree(m, 0))
        index = basis_index(self.ring, Bidegree(m + i, 0))

        products = ExactMatrix.zeros(field, self.dim(m), len(index))
        for row, position in enumerate(self.standard[m]):
            for exponents, value in power.multiply_monomial(source[position]).terms.items():
                products.data[row, index[exponents]] = value

        target = self.pieces[m + i]
        residues = reduce_rows(target.rref_rows, products, list(target.pivots))
        return ExactMatrix(field, residues.data[:, self.standard[m + i]])


class LefschetzService:
    """Hilbert functions of complete intersections and strong Lefschetz elements."""

    def hilbert_ci(self, degrees: Sequence[int]) -> HilbertFunction:
        """
        Coefficients of the product of ``1 + t + ... + t^(m_j - 1)``.

        Args:
            degrees (Sequence[int]): Generator degrees, all at least 1.

        Returns:
            HilbertFunction: h(0), ..., h(s).
        """

        if not degrees or any(m < 1 for m in degrees):
            raise InvalidDegrees(degrees=list(degrees))

        coefficients = np.ones(1, dtype=np.int64)
        for m in degrees:
            coefficients = np.convolve(coefficients, np.ones(m, dtype=np.int64))
        return HilbertFunction(coefficients=[int(value) for value in coefficients])

    def monomial_ci(self, degrees: Sequence[int], field: FieldSpec) -> list[Polynomial]:
        ring = RingSpec.projective(len(degrees) - 1)
        return [Polynomial.variable(ring, field, k, m) for k, m in enumerate(degrees)]

    def quotient_dims(self, generators: Sequence[Polynomial], degrees: range) -> list[int]:
        problem = MembershipProblem.of(list(generators), Bidegree(0, 0))
        return ideal_service.hilbert_values(problem, degrees)

    def certify(self, generators: Sequence[Polynomial]) -> CIQuotient:
        """
        Certifies that n + 1 forms in P_n form a complete intersection.

        The quotient must vanish one degree above the socle and match the product formula
        up to the socle.

        Raises:
            InvalidDegrees: On a constant generator or a ring with fiber variables.
            NotCompleteIntersection: On a wrong number of generators or a Hilbert
                function that disagrees with the product formula.
        """

        if not generators:
            raise InvalidDegrees(degrees=[])

        ring = generators[0].ring
        n = ring.num_base - 1
        if ring.fiber_weights:
            raise InvalidDegrees(ring=ring.label)
        if len(generators) != n + 1:
            raise NotCompleteIntersection(ring=ring.label, generators=len(generators))

        degrees = []
        for generator in generators:
            degree = generator.bidegree
            if degree is None or degree.m < 1:
                raise InvalidDegrees(generator=generator.to_text())
            degrees.append(degree.m)

        expected = self.hilbert_ci(degrees)
        socle = expected.socle_degree
        actual = self.quotient_dims(generators, range(socle + 2))

        if actual[:-1] != expected.coefficients or actual[-1] != 0:
            logger.warning("not a complete intersection: degrees %s, h=%s", degrees, actual)
            raise NotCompleteIntersection(degrees=degrees, expected=expected.coefficients, actual=actual)

        return CIQuotient(
            n=n,
            field=generators[0].field,
            generator_degrees=tuple(degrees),
            generators=tuple(generators),
            hilbert=expected,
        )

    def hilbert_actual(self, quotient: CIQuotient) -> HilbertFunction:
        values = self.quotient_dims(quotient.generators, range(quotient.socle_degree + 1))
        return HilbertFunction(coefficients=values)

    def is_sl_element(
        self, quotient: CIQuotient, ell: Polynomial, pieces: QuotientPieces | None = None
    ) -> LefschetzCheck:
        """
        Tests the strong Lefschetz property of a linear form.

        For all ``0 <= m <= m + i <= s`` with ``i >= 1`` the map ``ell^i: Q(m) -> Q(m+i)``
        must have rank ``min(dim Q(m), dim Q(m+i))``; ``i = 0`` is the identity.

        Args:
            quotient (CIQuotient): A certified complete intersection.
            ell (Polynomial): A linear form of the same ring.
            pieces (QuotientPieces | None): Precomputed quotient data, reused across candidates.

        Returns:
            LefschetzCheck: Verdict and every map that fails to have maximal rank.
        """

        coefficients = linear_coefficients(ell)
        pieces = pieces or QuotientPieces(quotient)
        socle = quotient.socle_degree

        failures: list[MaximalRankFailure] = []
        checked = 0
        for i in range(1, socle + 1):
            power = power_of_linear(pieces.ring, quotient.field, coefficients, i)
            for m in range(0, socle - i + 1):
                expected = min(pieces.dim(m), pieces.dim(m + i))
                observed = rank(pieces.multiplication_map(power, m, i))
                checked += 1
                if observed != expected:
                    failures.append(MaximalRankFailure(m=m, i=i, rank=observed, expected=expected))

        return LefschetzCheck(
            coefficients=_signed(coefficients, quotient.field),
            is_sl=not failures,
            checked_maps=checked,
            failures=failures,
        )

    def candidates(self, n: int, limit: int | None = None, seed: int = 0) -> Iterator[tuple[int, ...]]:
        """
        Candidate coefficient vectors: the coordinate sum first, then every vector with
        entries in {1, -1, 0}, then seeded random vectors with entries in [-9, 9].
        """

        limit = settings.SL_CANDIDATE_LIMIT if limit is None else limit
        seen: set[tuple[int, ...]] = set()

        def fresh() -> Iterator[tuple[int, ...]]:
            yield (1,) * (n + 1)
            for vector in itertools.product((1, -1, 0), repeat=n + 1):
                if any(vector):
                    yield vector
            rng = random.Random(seed)
            while True:
                yield tuple(rng.randint(-9, 9) for _ in range(n + 1))

        for vector in fresh():
            if len(seen) >= limit:
                return
            if vector in seen or not any(vector):
                continue
            seen.add(vector)
            yield vector

    def find_sl_element(self, quotient: CIQuotient, limit: int | None = None) -> tuple[Polynomial | None, LefschetzSearch]:
        """
        Searches the candidate list for a strong Lefschetz element.

        Returns:
            tuple[Polynomial | None, LefschetzSearch]: The element, or ``None`` when no
            candidate passes (NOT-FOUND is reported, not raised).
        """

        pieces = QuotientPieces(quotient)
        checks: list[LefschetzCheck] = []
        for vector in self.candidates(quotient.n, limit):
            ell = power_of_linear(pieces.ring, quotient.field, vector, 1)
            check = self.is_sl_element(quotient, ell, pieces)
            checks.append(check)
            logger.debug("candidate %s: %s", vector, "SL" if check.is_sl else "fails")
            if check.is_sl:
                return ell, LefschetzSearch(
                    degrees=quotient.generator_degrees,
                    hilbert=quotient.hilbert.coefficients,
                    socle=quotient.socle_degree,
                    found=True,
                    sl_element=check.coefficients,
                    candidates_tried=len(checks),
                    checks=checks,
                )

        logger.warning(
            "no strong Lefschetz element among %d candidates for %s", len(checks), quotient.generator_degrees
        )
        return None, LefschetzSearch(
            degrees=quotient.generator_degrees,
            hilbert=quotient.hilbert.coefficients,
            socle=quotient.socle_degree,
            found=False,
            candidates_tried=len(checks),
            checks=checks,
        )

    def gen3_bound_check(self, quotient: CIQuotient) -> BoundCheck:
        """
        Confirms containment from degree ``sum(m_j) - n`` on, one above the socle, where
        the quotient is one-dimensional.
        """

        degrees = quotient.generator_degrees
        bound = sum(degrees) - quotient.n
        problem = MembershipProblem.of(list(quotient.generators), Bidegree(bound, 0))

        certificate = ideal_service.contains_full_piece(problem)
        socle_dim = ideal_service.quotient_piece_dim(problem.at(Bidegree(quotient.socle_degree, 0)))

        return BoundCheck(
            degrees=degrees,
            degree=bound,
            twice_bound=2 * bound,
            full=certificate.full_target_rank,
            socle_dim=socle_dim,
        )

    def gen4_bound_check(self, quotient: CIQuotient, ell: Polynomial, k: int, m: int | None = None) -> BoundCheck:
        """
        Containment of ``P_n(m)`` in ``(f_0, ..., f_n, ell^k)``.

        It is guaranteed for ``2m >= sum(m_j) + k - n - 1`` when ell is a strong Lefschetz
        element; below the bound the verdict is only observed.

        Args:
            quotient (CIQuotient): A certified complete intersection.
            ell (Polynomial): A verified strong Lefschetz element.
            k (int): The power of ell added as generator.
            m (int | None): Degree to check; defaults to the smallest guaranteed degree.

        Returns:
            BoundCheck: The observed verdict together with the bound.
        """

        twice_bound = sum(quotient.generator_degrees) + k - quotient.n - 1
        if m is None:
            m = max(0, -(-twice_bound // 2))

        power = power_of_linear(ell.ring, ell.field, linear_coefficients(ell), k)
        problem = MembershipProblem.of(list(quotient.generators) + [power], Bidegree(m, 0))
        full = ideal_service.contains_full_piece(problem).full_target_rank

        check = BoundCheck(
            degrees=quotient.generator_degrees, power=k, degree=m, twice_bound=twice_bound, full=full
        )
        if check.guaranteed and not full:
            logger.error("containment fails above the proven bound: %s", check)
        elif not check.guaranteed:
            logger.warning("degree %d lies below the bound; verdict %s observed only", m, full)
        return check

    def harima_watanabe_check(
        self, linear: Polynomial, power: int, f1: Polynomial, f2: Polynomial, limit: int | None = None
    ) -> HarimaWatanabeReport:
        """
        Searches a strong Lefschetz element for ``(linear^power, f1, f2)`` in P_2.

        Raises:
            NotCompleteIntersection: If the three forms have a common zero.
        """

        linear_coefficients(linear)
        f0 = linear**power
        quotient = self.certify([f0, f1, f2])
        _, search = self.find_sl_element(quotient, limit)
        return HarimaWatanabeReport(
            degrees=quotient.generator_degrees, linear_power=f0.to_text(), search=search
        )

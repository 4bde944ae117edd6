import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gradus.ideals.exceptions import NoAmbientRing
from gradus.ideals.schemas import MembershipProblem
from gradus.ideals.services import IdealService
from gradus.poly.exceptions import RingMismatch
from gradus.poly.models import Polynomial
from gradus.poly.schemas import Bidegree, RingSpec
from gradus.poly.services import basis, dim, jacobian_generators, sum_of_powers
from gradus.scalar.schemas import FieldSpec

QQ = FieldSpec.rationals()
F7 = FieldSpec.prime(7)
P2 = RingSpec.projective(2)

service = IdealService()


def variables(ring, field, *names):
    return [Polynomial.variable(ring, field, name) for name in names]


def fraction_rank(rows: list[list[Fraction]]) -> int:
    """Textbook Gauss-Jordan, kept independent of the library elimination."""

    rows = [row[:] for row in rows]
    rank = 0
    width = len(rows[0]) if rows else 0
    for column in range(width):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][column] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][column] != 0:
                factor = rows[i][column] / rows[rank][column]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def oracle_is_full(generators: list[Polynomial], target: int) -> bool:
    """Every target monomial lies in the span of the generator multiples."""

    monomials = basis(P2, Bidegree(target, 0))
    position = {monomial: i for i, monomial in enumerate(monomials)}
    products: list[list[Fraction]] = []
    for generator in generators:
        degree = generator.bidegree
        if degree is None:
            continue
        for multiplier in basis(P2, Bidegree(target - degree.m, 0)):
            row = [Fraction(0)] * len(monomials)
            for exponents, value in generator.terms.items():
                shifted = tuple(a + b for a, b in zip(exponents, multiplier))
                row[position[shifted]] = Fraction(value)
            products.append(row)

    base = fraction_rank(products) if products else 0
    for monomial in monomials:
        unit = [Fraction(int(i == position[monomial])) for i in range(len(monomials))]
        if fraction_rank(products + [unit]) != base:
            return False
    return True


def random_form(rng: random.Random, degree: int) -> Polynomial:
    return Polynomial(P2, QQ, {monomial: rng.randint(-3, 3) for monomial in basis(P2, Bidegree(degree, 0))})


def test_linear_generators_give_square_matrix():
    prob = MembershipProblem.of(variables(P2, QQ, "x0", "x1", "x2"), (1, 0))
    matrix = service.build_matrix(prob)

    assert matrix.shape == (3, 3)
    assert service.contains_full_piece(prob).full_target_rank


def test_generator_above_target_adds_no_columns(parse):
    prob = MembershipProblem.of([parse("x0^2", P2, QQ)], (1, 0))

    assert service.build_matrix(prob).shape == (3, 0)
    assert service.quotient_piece_dim(prob) == 3


def test_column_labels(parse):
    prob = MembershipProblem.of([parse("x0", P2, QQ), parse("x1^2", P2, QQ)], (2, 0))
    matrix, labels = service.build_matrix_with_labels(prob)

    assert matrix.shape == (6, 4)
    assert labels[0] == (0, (1, 0, 0))
    assert labels[-1] == (1, (0, 0, 0))


@pytest.mark.parametrize("power", [1, 2, 3])
@pytest.mark.parametrize("target", range(7))
def test_two_powers_never_fill_p2(power, target):
    prob = MembershipProblem.of(
        [Polynomial.variable(P2, F7, 0, power), Polynomial.variable(P2, F7, 1, power)], (target, 0)
    )

    assert not service.contains_full_piece(prob).full_target_rank


def test_monomial_complete_intersection_fills_above_socle():
    generators = [Polynomial.variable(P2, QQ, 0, 2), Polynomial.variable(P2, QQ, 1, 3), Polynomial.variable(P2, QQ, 2, 2)]
    prob = MembershipProblem.of(generators, (5, 0))

    assert service.contains_full_piece(prob).full_target_rank
    assert service.quotient_piece_dim(prob.at((4, 0))) == 1


def test_fermat_cubic_partials_leave_socle(fp, p3):
    partials = jacobian_generators(sum_of_powers(p3, fp, 3, range(4)))
    certificate = service.contains_full_piece(MembershipProblem.of(partials, (4, 0)))

    assert not certificate.full_target_rank
    assert certificate.cokernel_dim == 1
    assert service.contains_full_piece(MembershipProblem.of(partials, (5, 0))).full_target_rank


def test_fermat_quartic_partials_at_socle_degree(fp, p3):
    partials = jacobian_generators(sum_of_powers(p3, fp, 4, range(4)))
    certificate = service.contains_full_piece(MembershipProblem.of(partials, (8, 0)))

    assert certificate.rows == 165
    assert not certificate.full_target_rank
    assert certificate.cokernel_dim == 1


def test_fermat_quartic_quotient_dimension(fp, p3):
    partials = jacobian_generators(sum_of_powers(p3, fp, 4, range(4)))

    assert service.quotient_piece_dim(MembershipProblem.of(partials, (4, 0))) == 19
    assert service.hilbert_values(MembershipProblem.of(partials, (0, 0)), range(9)) == [
        1, 4, 10, 16, 19, 16, 10, 4, 1,
    ]


def test_empty_generators_leave_whole_piece(qq):
    prob = MembershipProblem(ring=P2, field=qq, target=Bidegree(3, 0))

    assert service.quotient_piece_dim(prob) == dim(P2, Bidegree(3, 0)) == 10


def test_generators_must_share_the_ring(parse):
    with pytest.raises(RingMismatch):
        MembershipProblem.of([parse("x0", P2, QQ), parse("x0", RingSpec.projective(3), QQ)], (2, 0))


@settings(max_examples=40, deadline=None)
@given(
    seed=st.integers(0, 10**6),
    degrees=st.lists(st.integers(1, 3), min_size=1, max_size=3),
    target=st.integers(0, 6),
)
def test_containment_agrees_with_oracle(seed, degrees, target):
    rng = random.Random(seed)
    generators = [random_form(rng, degree) for degree in degrees]
    generators = [g for g in generators if not g.is_zero]
    if not generators:
        return
    prob = MembershipProblem.of(generators, (target, 0))

    assert service.contains_full_piece(prob).full_target_rank == oracle_is_full(generators, target)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6), target=st.integers(0, 5))
def test_extra_generator_keeps_containment(seed, target):
    rng = random.Random(seed)
    generators = [random_form(rng, 2), random_form(rng, 2), random_form(rng, 2)]
    prob = MembershipProblem.of(generators, (target, 0))

    if service.contains_full_piece(prob).full_target_rank:
        assert service.contains_full_piece(prob.with_generators(random_form(rng, 1))).full_target_rank


def test_in_j_over_projective_plane(parse):
    prob = MembershipProblem.of([parse("x0^2", P2, QQ), parse("x1^2", P2, QQ)], (3, 0))
    piece = service.piece_basis(prob)
    ambient = Bidegree(3, 0)

    assert not piece.is_full
    assert service.in_j(parse("x0^2", P2, QQ), piece, ambient)
    assert service.in_j(parse("x0^2 - 3*x1^2", P2, QQ), piece, ambient)
    assert not service.in_j(parse("1", P2, QQ), piece, ambient)

    detail = service.in_j_detail(parse("x0", P2, QQ), piece, ambient)
    assert not detail.member
    assert detail.multipliers == 6
    assert detail.offending_monomial is not None


def test_everything_is_in_j_of_a_full_piece(parse):
    prob = MembershipProblem.of(variables(P2, QQ, "x0", "x1", "x2"), (2, 0))
    piece = service.piece_basis(prob)

    assert piece.is_full
    assert piece.standard_positions() == []
    assert service.in_j(parse("1", P2, QQ), piece, Bidegree(2, 0))


def test_in_j_needs_matching_ambient(parse):
    prob = MembershipProblem.of([parse("x0^2", P2, QQ)], (3, 0))
    piece = service.piece_basis(prob)

    with pytest.raises(RingMismatch):
        service.in_j(parse("x0", P2, QQ), piece, Bidegree(4, 0))


def test_empty_generators_need_an_ambient_ring(qq):
    with pytest.raises(NoAmbientRing):
        MembershipProblem.of([], (2, 0))

    prob = MembershipProblem.of([], (3, 0), ring=P2, field=qq)
    assert prob.generators == ()
    assert service.quotient_piece_dim(prob) == 10

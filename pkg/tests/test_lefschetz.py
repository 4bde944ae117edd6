import itertools
import random

import pytest
from hypothesis import given, reject, settings, strategies as st

from gradus.lefschetz.exceptions import InvalidDegrees, NotCompleteIntersection, NotLinear
from gradus.lefschetz.services import LefschetzService, linear_coefficients
from gradus.poly.models import Polynomial
from gradus.poly.schemas import Bidegree, RingSpec
from gradus.poly.services import basis, jacobian_generators, linear_form, power_of_linear, sum_of_powers
from gradus.scalar.schemas import FieldSpec

FP = FieldSpec.prime(65537)
P2 = RingSpec.projective(2)

service = LefschetzService()


def monomial_quotient(*degrees):
    return service.certify(service.monomial_ci(degrees, FP))


@pytest.mark.parametrize(
    "degrees, expected",
    [
        ((3, 3, 3, 3), [1, 4, 10, 16, 19, 16, 10, 4, 1]),
        ((1, 2), [1, 1]),
        ((2, 2, 2), [1, 3, 3, 1]),
        ((1, 1, 1), [1]),
        ((2, 3), [1, 2, 2, 1]),
    ],
)
def test_hilbert_ci(degrees, expected):
    hilbert = service.hilbert_ci(degrees)

    assert hilbert.coefficients == expected
    assert hilbert.is_symmetric
    assert hilbert.is_unimodal
    assert hilbert.socle_degree == sum(degrees) - len(degrees)


@pytest.mark.parametrize("degrees", [(), (0, 2, 2), (2, -1)])
def test_hilbert_ci_rejects(degrees):
    with pytest.raises(InvalidDegrees):
        service.hilbert_ci(degrees)


def test_fermat_quartic_partials_match_product_formula(p3):
    partials = jacobian_generators(sum_of_powers(p3, FP, 4, range(4)))
    quotient = service.certify(partials)

    assert service.hilbert_actual(quotient) == quotient.hilbert
    assert quotient.hilbert.coefficients == [1, 4, 10, 16, 19, 16, 10, 4, 1]


def test_linear_generators_are_a_complete_intersection():
    quotient = monomial_quotient(1, 1, 1)

    assert quotient.hilbert.coefficients == [1]
    assert quotient.socle_degree == 0


def test_too_few_generators(parse):
    with pytest.raises(NotCompleteIntersection):
        service.certify([parse("x0^2", P2, FP), parse("x1^2", P2, FP)])


def test_common_zero_is_not_a_complete_intersection(parse):
    with pytest.raises(NotCompleteIntersection):
        service.certify([parse("x0^2", P2, FP), parse("x1^2", P2, FP), parse("x0*x1", P2, FP)])


def test_constant_generator_rejected(parse):
    with pytest.raises(InvalidDegrees):
        service.certify([parse("1", P2, FP), parse("x1^2", P2, FP), parse("x2", P2, FP)])


def test_coordinate_sum_is_strong_lefschetz(parse):
    quotient = monomial_quotient(2, 2, 2)

    check = service.is_sl_element(quotient, parse("x0 + x1 + x2", P2, FP))
    assert check.is_sl
    assert check.coefficients == ["1", "1", "1"]
    # pairs 0 <= m < m + i <= 3
    assert check.checked_maps == 6


def test_coordinate_is_not_strong_lefschetz(parse):
    check = service.is_sl_element(monomial_quotient(2, 2, 2), parse("x0", P2, FP))

    assert not check.is_sl
    assert check.failures


def test_negative_coefficients_print_signed(parse):
    check = service.is_sl_element(monomial_quotient(1, 1, 1), parse("x0 - x1", P2, FP))

    assert check.coefficients == ["1", "-1", "0"]


def test_linear_coefficients(parse):
    assert linear_coefficients(parse("3*x0 - x2", P2, FP)) == [3, 0, 65536]
    with pytest.raises(NotLinear):
        linear_coefficients(parse("x0^2", P2, FP))
    with pytest.raises(NotLinear):
        linear_coefficients(parse("0", P2, FP))


def test_candidates_are_distinct_and_bounded():
    candidates = list(service.candidates(2, limit=40))

    assert candidates[0] == (1, 1, 1)
    assert len(candidates) == 40
    assert len(set(candidates)) == 40
    assert all(any(vector) for vector in candidates)
    assert candidates == list(service.candidates(2, limit=40))


def test_find_sl_element_for_monomial_ci():
    ell, search = service.find_sl_element(monomial_quotient(2, 2, 2))

    assert search.found
    assert search.sl_element == ["1", "1", "1"]
    assert search.hilbert == [1, 3, 3, 1]
    assert ell == linear_form(P2, FP, [1, 1, 1])


def test_search_records_every_candidate_check():
    _, search = service.find_sl_element(monomial_quotient(2, 3, 3))

    assert len(search.checks) == search.candidates_tried
    assert search.checks[-1].is_sl
    assert search.checks[-1].coefficients == search.sl_element
    assert not any(check.is_sl for check in search.checks[:-1])


@pytest.mark.parametrize(
    "degrees",
    [degrees for size in (2, 3) for degrees in itertools.combinations_with_replacement(range(1, 4), size)],
    ids=str,
)
def test_coordinate_sum_for_small_monomial_cis(degrees):
    quotient = monomial_quotient(*degrees)

    assert service.is_sl_element(quotient, linear_form(quotient.generators[0].ring, FP, [1] * len(degrees))).is_sl


@pytest.mark.slow
@pytest.mark.parametrize(
    "degrees",
    [degrees for size in (3, 4) for degrees in itertools.combinations_with_replacement(range(1, 5), size)],
    ids=str,
)
def test_coordinate_sum_for_monomial_cis(degrees):
    quotient = monomial_quotient(*degrees)

    assert service.is_sl_element(quotient, linear_form(quotient.generators[0].ring, FP, [1] * len(degrees))).is_sl


def test_bound_above_socle():
    check = service.gen3_bound_check(monomial_quotient(3, 3, 3))

    assert check.degree == 7
    assert check.full
    assert check.socle_dim == 1
    assert check.guaranteed
    assert check.consistent


def test_lefschetz_power_fills_fermat_quartic(p3):
    quotient = service.certify(jacobian_generators(sum_of_powers(p3, FP, 4, range(4))))
    ell, _ = service.find_sl_element(quotient)

    check = service.gen4_bound_check(quotient, ell, 4, 8)

    assert check.twice_bound == 12
    assert check.guaranteed
    assert check.full
    assert check.consistent


def test_lefschetz_power_default_degree():
    quotient = monomial_quotient(2, 2, 2)
    ell, _ = service.find_sl_element(quotient)

    check = service.gen4_bound_check(quotient, ell, 1)

    # 2m >= 6 + 1 - 2 - 1
    assert check.degree == 2
    assert check.full


def test_harima_watanabe_example(parse):
    report = service.harima_watanabe_check(
        parse("x0 + x1", P2, FP), 3, parse("x0^4 + x2^4", P2, FP), parse("x1^4 + 2*x2^4", P2, FP)
    )

    assert report.degrees == (3, 4, 4)
    assert report.search.found
    assert report.search.socle == 8


def test_harima_watanabe_common_zero(parse):
    # x0 = -x1 with x2^4 = -x0^4 is a common zero
    with pytest.raises(NotCompleteIntersection):
        service.harima_watanabe_check(
            parse("x0 + x1", P2, FP), 3, parse("x0^4 + x2^4", P2, FP), parse("x1^4 + x2^4", P2, FP)
        )


def random_form(rng: random.Random, degree: int) -> Polynomial:
    return Polynomial(P2, FP, {monomial: rng.randrange(65537) for monomial in basis(P2, Bidegree(degree, 0))})


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(20))
def test_harima_watanabe_random(seed):
    rng = random.Random(seed)
    linear = linear_form(P2, FP, [rng.randint(1, 9) for _ in range(3)])

    report = service.harima_watanabe_check(
        linear, rng.randint(1, 3), random_form(rng, rng.randint(1, 3)), random_form(rng, rng.randint(1, 3))
    )

    assert report.search.found


@settings(max_examples=25)
@given(seed=st.integers(0, 10**6), degrees=st.lists(st.integers(1, 3), min_size=3, max_size=3))
def test_generic_complete_intersections(seed, degrees):
    rng = random.Random(seed)
    generators = [random_form(rng, degree) for degree in degrees]
    try:
        quotient = service.certify(generators)
    except NotCompleteIntersection:
        reject()

    hilbert = service.hilbert_actual(quotient)
    assert hilbert == service.hilbert_ci(degrees)
    assert hilbert.is_symmetric
    assert hilbert[0] == hilbert[quotient.socle_degree] == 1


def test_power_of_a_lefschetz_element_has_expected_degree(parse):
    ell = parse("x0 + 2*x1 - x2", P2, FP)

    assert power_of_linear(P2, FP, linear_coefficients(ell), 5).bidegree == (5, 0)
    assert power_of_linear(P2, FP, linear_coefficients(ell), 2) == ell * ell

import random
from fractions import Fraction
from typing import Callable

import sympy as sp

from gradus.config import settings
from gradus.constructions.exceptions import InvalidStep
from gradus.constructions.schemas import G_PAIRS, GForm, MinorMatrix, Mode, QuadricForm, Variant
from gradus.poly.models import Polynomial
from gradus.poly.schemas import Bidegree, RingSpec, TypeTuple
from gradus.poly.services import basis, power_of_linear, sum_of_powers
from gradus.scalar.schemas import FieldSpec, RawScalar

CoefficientSource = Callable[[], RawScalar | int]


def g_exponent(bundle: TypeTuple, i: int, j: int) -> int:
    """Base degree of g_ij, that is t - d + r_i + r_j."""

    return bundle.t - bundle.d + bundle.r[i] + bundle.r[j]


def base_form(ring: RingSpec, field: FieldSpec, degree: int, draw: CoefficientSource) -> Polynomial:
    """A form in the base variables with every monomial coefficient drawn from ``draw``."""

    if degree < 0:
        return Polynomial.zero(ring, field)
    monomials = basis(RingSpec.projective(ring.num_base - 1), Bidegree(degree, 0))
    return Polynomial.base_form(ring, field, {monomial: draw() for monomial in monomials})


def coefficient_source(field: FieldSpec, mode: Mode, rng: random.Random) -> CoefficientSource:
    if mode == Mode.EXPLICIT:
        bound = settings.EXPLICIT_COEFFICIENT_BOUND
        choices = [value for value in range(-bound, bound + 1) if value]
        return lambda: rng.choice(choices)
    return lambda: field.random_element(rng, settings.RANDOM_QQ_BOUND)


def system_rng(bundle: TypeTuple, mode: Mode, seed: int | None) -> random.Random:
    if mode == Mode.EXPLICIT:
        return random.Random(f"gradus-explicit:{bundle.label}")
    return random.Random(f"gradus-random:{bundle.label}:{seed or 0}")


def build_system(
    bundle: TypeTuple, field: FieldSpec, mode: Mode = Mode.EXPLICIT, seed: int | None = None
) -> tuple[QuadricForm, GForm]:
    """
    The quadric f and the form g used for the headline containment.

    Explicit mode draws nonzero integers in a small range from a generator keyed by the
    type, so the system is the same on every run and over every field; random mode draws
    field elements from a seeded generator.

    Args:
        bundle (TypeTuple): The bundle type.
        field (FieldSpec): Coefficient field.
        mode (Mode): ``explicit`` or ``random``.
        seed (int | None): Seed for random mode.

    Returns:
        tuple[QuadricForm, GForm]: f with general f_j, and g without g00 and g22.
    """

    ring = RingSpec.for_s(bundle)
    draw = coefficient_source(field, mode, system_rng(bundle, mode, seed))

    components = tuple(base_form(ring, field, degree, draw) for degree in bundle.degrees)
    form = QuadricForm(bundle=bundle, ring=ring, field=field, components=components)

    g_components = {
        (i, j): base_form(ring, field, g_exponent(bundle, i, j), draw) for i, j in G_PAIRS
    }
    return form, GForm(bundle=bundle, ring=ring, field=field, components=g_components)


def _unit_or(ring: RingSpec, field: FieldSpec, degree: int, build: Callable[[], Polynomial]) -> Polynomial:
    if degree == 0:
        return Polynomial.constant(ring, field)
    return build()


def fermat(ring: RingSpec, field: FieldSpec, degree: int) -> Polynomial:
    return _unit_or(ring, field, degree, lambda: sum_of_powers(ring, field, degree, range(ring.num_base)))


def build_explicit_f(bundle: TypeTuple, variant: Variant | str, field: FieldSpec) -> QuadricForm:
    """
    The special components f_j used by the individual steps.

    Components a step leaves open are Fermat forms ``x0^dj + x1^dj + x2^dj``; every
    component of degree 0 is the constant 1.

    Args:
        bundle (TypeTuple): The bundle type.
        variant (Variant | str): ``step1`` to ``step4`` or ``nl_fermat``.
        field (FieldSpec): Coefficient field.

    Returns:
        QuadricForm: The diagonal quadric with the special components.
    """

    try:
        variant = Variant(variant)
    except ValueError:
        raise InvalidStep(variant=str(variant))

    ring = RingSpec.for_s(bundle)
    d0, d1, d2, d3 = bundle.degrees
    x = [Polynomial.variable(ring, field, k) for k in range(3)]
    components = [fermat(ring, field, degree) for degree in bundle.degrees]

    if variant == Variant.STEP1:
        components[:3] = [
            _unit_or(ring, field, degree, lambda k=k, degree=degree: x[k] ** degree)
            for k, degree in enumerate((d0, d1, d2))
        ]
    elif variant == Variant.STEP2:
        components[0] = _unit_or(ring, field, d0, lambda: (x[0] + x[1]) ** d0 + x[2] ** d0)
        components[1] = _unit_or(ring, field, d1, lambda: (x[0] - x[1]) ** d1 + x[2] ** d1)
    elif variant == Variant.STEP3:
        components = [
            _unit_or(ring, field, d0, lambda: x[0] ** d0),
            _unit_or(ring, field, d1, lambda: x[0] ** d1),
            _unit_or(ring, field, d2, lambda: x[0] ** d2 + x[1] ** d2),
            _unit_or(ring, field, d3, lambda: x[0] ** d3 + x[2] ** d3),
        ]

    return QuadricForm(bundle=bundle, ring=ring, field=field, components=tuple(components))


def linear_power(ring: RingSpec, field: FieldSpec, coefficients: list[RawScalar | int], exponent: int) -> Polynomial:
    """``ell^k`` for an ell given by coefficients; negative k yields 0, k = 0 yields 1."""

    return power_of_linear(ring, field, coefficients, exponent)


def build_explicit_g(
    bundle: TypeTuple,
    mu: list[RawScalar | int],
    nu: list[RawScalar | int],
    field: FieldSpec,
    rng: random.Random | None = None,
) -> GForm:
    """
    The special g of the third step: g11 = x2^(t-d+2r1), g12 = nu^(t-d+r1+r2),
    g23 = mu^(t-d+r2+r3) and g33 = mu^(t-d+2r3).

    The remaining g_ij are random when a generator is given and zero otherwise.
    """

    ring = RingSpec.for_s(bundle)
    exponent11 = g_exponent(bundle, 1, 1)
    components = {
        (1, 1): (
            Polynomial.variable(ring, field, 2, exponent11)
            if exponent11 >= 0
            else Polynomial.zero(ring, field)
        ),
        (1, 2): linear_power(ring, field, nu, g_exponent(bundle, 1, 2)),
        (2, 3): linear_power(ring, field, mu, g_exponent(bundle, 2, 3)),
        (3, 3): linear_power(ring, field, mu, g_exponent(bundle, 3, 3)),
    }

    for pair in G_PAIRS:
        if pair in components:
            continue
        if rng is None:
            components[pair] = Polynomial.zero(ring, field)
        else:
            draw = coefficient_source(field, Mode.RANDOM, rng)
            components[pair] = base_form(ring, field, g_exponent(bundle, *pair), draw)

    return GForm(bundle=bundle, ring=ring, field=field, components=components)


def _to_sympy(poly: Polynomial, symbols: tuple[sp.Symbol, ...]) -> sp.Expr:
    return sp.Add(
        *(
            sp.Rational(value.numerator, value.denominator)
            * sp.Mul(*(symbol**power for symbol, power in zip(symbols, exponents)))
            for exponents, value in poly
        )
    )


def _det(entries: list[list[Polynomial]], ring: RingSpec, field: FieldSpec) -> Polynomial:
    """
    Berkowitz determinant over the integers or rationals, mapped back into the field.

    Residues mod p enter as their integer representatives and the result is reduced again.
    """

    if not entries:
        return Polynomial.zero(ring, field)

    symbols = sp.symbols(f"v0:{ring.num_vars}")
    matrix = sp.Matrix([[_to_sympy(entry, symbols) for entry in row] for row in entries])
    det = sp.Poly(matrix.det(method="berkowitz"), *symbols)
    return Polynomial(
        ring,
        field,
        {exponents: Fraction(int(value.p), int(value.q)) for exponents, value in det.terms()},
    )


def minor_det(form: QuadricForm, j: int) -> MinorMatrix:
    """
    The minor of ``(df_l/dx_k)`` with column j left out.

    With d0 > 0 it is the 3x3 minor over k = 0, 1, 2 and columns 0..3. With d0 = 0 the
    column of f0 vanishes, so the 2x2 minor over k = 0, 1 and columns 1..3 is used; the
    minor with j = 0 is then zero.
    """

    ring, field = form.ring, form.field
    derivatives = [[component.partial(k) for component in form.components] for k in range(3)]

    if form.bundle.degrees[0] > 0:
        columns = [column for column in range(4) if column != j]
        entries = [[derivatives[k][column] for column in columns] for k in range(3)]
    elif j == 0:
        return MinorMatrix(j=0, entries=[], det=Polynomial.zero(ring, field))
    else:
        columns = [column for column in (1, 2, 3) if column != j]
        entries = [[derivatives[k][column] for column in columns] for k in range(2)]

    return MinorMatrix(j=j, entries=entries, det=_det(entries, ring, field))


def cofactor_sign(i: int, j: int) -> int:
    return 1 if (i + j) % 2 == 0 else -1


def determinant_relation(form: QuadricForm, i: int, j: int, sign: int) -> Polynomial:
    """``det(A_j)*y_i^2 - sign*det(A_i)*y_j^2``."""

    ring, field = form.ring, form.field
    base = ring.num_base
    y_i2 = Polynomial.variable(ring, field, base + i, 2)
    y_j2 = Polynomial.variable(ring, field, base + j, 2)
    return minor_det(form, j).det * y_i2 - (minor_det(form, i).det * y_j2).scale(sign)

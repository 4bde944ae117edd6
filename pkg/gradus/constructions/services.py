import itertools
import logging
from collections import Counter, deque
from typing import Iterable, Sequence

from gradus.config import settings
from gradus.constructions.builders import (
    build_explicit_f,
    build_explicit_g,
    build_system,
    cofactor_sign,
    determinant_relation,
    fermat,
    g_exponent,
    linear_power,
    minor_det,
)
from gradus.constructions.exceptions import DegreeTooSmall, InvalidStep, NeitherSign, StepFailure
from gradus.constructions.schemas import (
    ClaimCheck,
    ClassCheck,
    DecompositionReport,
    GForm,
    InequalityCheck,
    Mode,
    NegativeControlReport,
    NLCertificate,
    PropCertificate,
    QuadricForm,
    SignCheck,
    StepReport,
    TransitionCheck,
    Variant,
    Verdict,
)
from gradus.ideals.schemas import IdealPieceBasis, MembershipProblem
from gradus.ideals.services import IdealService
from gradus.lefschetz.exceptions import LefschetzElementNotFound
from gradus.lefschetz.schemas import BoundCheck
from gradus.lefschetz.services import LefschetzService, linear_coefficients
from gradus.linalg.models import ExactMatrix
from gradus.poly.models import Polynomial
from gradus.poly.schemas import Bidegree, RingSpec, TypeTuple
from gradus.poly.services import basis
from gradus.scalar.schemas import FieldSpec, RawScalar

logger = logging.getLogger(__name__)

# (tau0, tau1, tau2, tau3) with tau3 < tau2: multiples of y_tau0^2 y_tau1^2 move to y_tau0^2 y_tau2^2
TRANSITIONS: tuple[tuple[int, int, int, int], ...] = (
    (1, 0, 3, 2),
    (0, 1, 3, 2),
    (3, 1, 2, 0),
    (1, 3, 2, 0),
    (3, 0, 2, 1),
    (2, 3, 1, 0),
    (0, 2, 3, 1),
    (2, 0, 3, 1),
)
FINAL_PAIR = (1, 2)

DROPPABLE = {"g11": (1, 1), "g33": (3, 3)}

P2 = RingSpec.projective(2)


def _pair(a: int, b: int) -> tuple[int, int]:
    return (min(a, b), max(a, b))


def _pair_label(pair: tuple[int, int]) -> str:
    return f"{pair[0]},{pair[1]}"


def fiber_text(exponents: Sequence[int]) -> str:
    factors = [f"y{j}" if power == 1 else f"y{j}^{power}" for j, power in enumerate(exponents) if power]
    return "*".join(factors) or "1"


def step_classes(step: int, sigma: Sequence[int] | None = None) -> list[tuple[int, int, int, int]]:
    """
    Fiber exponent vectors of the monomial classes handled by a step.

    Without a permutation every class of the step is listed: all triples y_i*y_j*y_k,
    all y_i^3*y_j, all y_i^2*y_j^2 and all y_j^4.
    """

    def vector(powers: dict[int, int]) -> tuple[int, int, int, int]:
        return tuple(powers.get(j, 0) for j in range(4))

    if sigma is not None:
        if sorted(sigma) != [0, 1, 2, 3]:
            raise InvalidStep(sigma=list(sigma))
        s0, s1, s2, _ = sigma
        shapes = {
            1: {s0: 1, s1: 1, s2: 1},
            2: {s0: 3, s1: 1},
            3: {s0: 2, s1: 2},
            4: {s0: 4},
        }
        if step not in shapes:
            raise InvalidStep(step=step)
        return [vector(shapes[step])]

    if step == 1:
        return [vector({i: 1 for i in triple}) for triple in itertools.combinations(range(4), 3)]
    if step == 2:
        return [vector({i: 3, j: 1}) for i, j in itertools.permutations(range(4), 2)]
    if step == 3:
        return [vector({i: 2, j: 2}) for i, j in itertools.combinations(range(4), 2)]
    if step == 4:
        return [vector({j: 4}) for j in range(4)]
    raise InvalidStep(step=step)


def handling_step(fiber: Sequence[int]) -> int | None:
    """The step whose classes divide a fiber monomial of degree 4."""

    shape = sorted((power for power in fiber if power), reverse=True)
    if len(shape) >= 3:
        return 1
    return {(3, 1): 2, (2, 2): 3, (4,): 4}.get(tuple(shape))


class ConstructionService:
    """Certificates for the special constructions and the headline containment at (t, 4)."""

    def __init__(self):
        self.ideals = IdealService()
        self.lefschetz = LefschetzService()

    # containment at (t, 4)

    def resolve_field(self, field: FieldSpec | str | None) -> FieldSpec:
        if isinstance(field, FieldSpec):
            return field
        return FieldSpec.parse(field or settings.FIELD)

    def system(
        self,
        bundle: TypeTuple,
        field: FieldSpec,
        mode: Mode = Mode.EXPLICIT,
        seed: int | None = None,
        drop: Iterable[str] = (),
    ) -> tuple[QuadricForm, GForm]:
        form, gform = build_system(bundle, field, Mode(mode), seed)
        pairs = []
        for name in drop:
            if name not in DROPPABLE:
                raise InvalidStep(dropped=name)
            pairs.append(DROPPABLE[name])
        return form, gform.without(*pairs)

    def main_problem(self, form: QuadricForm, gform: GForm) -> MembershipProblem:
        generators = form.jacobian()
        g = gform.g
        if not g.is_zero:
            generators.append(g)
        bundle = form.bundle
        return MembershipProblem(
            ring=form.ring,
            field=form.field,
            generators=tuple(generators),
            target=Bidegree(bundle.t, 4),
        )

    def verify_prop_main(
        self,
        bundle: TypeTuple,
        mode: Mode | str = Mode.EXPLICIT,
        seed: int | None = None,
        field: FieldSpec | str | None = None,
        drop: Iterable[str] = (),
        modular_shortcut: bool | None = None,
    ) -> PropCertificate:
        """
        Certifies that the partials of f together with g span all of S(t, 4).

        Args:
            bundle (TypeTuple): The bundle type.
            mode (Mode | str): ``explicit`` for the reproducible integer system, ``random``
                for a seeded random system.
            seed (int | None): Seed for random mode.
            field (FieldSpec | str | None): Working field; defaults to ``FIELD``.
            drop (Iterable[str]): Components of g forced to zero (``g11``, ``g33``).
            modular_shortcut (bool | None): Over QQ, allow settling full rank modulo a prime.

        Returns:
            PropCertificate: Verdict and rank certificate; type (0,0,0,0) is reported as
            trivially rational without computation.
        """

        mode = Mode(mode)
        field = self.resolve_field(field)
        drop = sorted(drop)
        common = dict(
            bundle=bundle.label,
            input_degrees=bundle.input_degrees,
            degrees=bundle.degrees,
            mode=mode,
            seed=seed if mode == Mode.RANDOM else None,
            field=str(field),
            dropped=drop,
        )

        if bundle.is_trivially_rational:
            logger.info("type %s is a product with a quadric surface", bundle)
            return PropCertificate(verdict=Verdict.TRIVIALLY_RATIONAL, **common)

        form, gform = self.system(bundle, field, mode, seed, drop)
        problem = self.main_problem(form, gform)
        certificate = self.ideals.contains_full_piece(problem, modular_shortcut=modular_shortcut)

        verdict = Verdict.FULL if certificate.full_target_rank else Verdict.DEFICIENT
        log = logger.info if verdict == Verdict.FULL else logger.error
        log(
            "type %s (%s): rank %d of %d at %s",
            bundle,
            mode.value,
            certificate.rank,
            certificate.rows,
            problem.target,
        )
        return PropCertificate(target=problem.target, verdict=verdict, certificate=certificate, **common)

    def main_matrix(
        self,
        bundle: TypeTuple,
        field: FieldSpec | str | None = None,
        mode: Mode | str = Mode.EXPLICIT,
        seed: int | None = None,
        drop: Iterable[str] = (),
    ) -> ExactMatrix:
        """The multiplication matrix behind ``verify_prop_main``, for dumping failed certificates."""

        form, gform = self.system(bundle, self.resolve_field(field), Mode(mode), seed, drop)
        return self.ideals.build_matrix(self.main_problem(form, gform))

    def global_piece(self, form: QuadricForm, gform: GForm) -> IdealPieceBasis:
        return self.ideals.piece_basis(self.main_problem(form, gform))

    def jacobian_piece(self, form: QuadricForm) -> IdealPieceBasis:
        bundle = form.bundle
        problem = MembershipProblem(
            ring=form.ring,
            field=form.field,
            generators=tuple(form.jacobian()),
            target=Bidegree(bundle.t, 4),
        )
        return self.ideals.piece_basis(problem)

    # membership in J

    def fiber_monomial(self, ring: RingSpec, field: FieldSpec, fiber: Sequence[int]) -> Polynomial:
        return Polynomial.monomial(ring, field, (0,) * ring.num_base + tuple(fiber))

    def class_check(self, piece: IdealPieceBasis, form: QuadricForm, fiber: Sequence[int]) -> ClassCheck:
        """
        J-membership of a fiber monomial; a variable y_j with d_j = 0 already lies in J
        and settles every class containing it.
        """

        bundle = form.bundle
        ambient = Bidegree(bundle.t, 4)
        units = [j for j, power in enumerate(fiber) if power and bundle.degrees[j] == 0]

        if units:
            j = units[0]
            single = [0, 0, 0, 0]
            single[j] = 1
            detail = self.ideals.in_j_detail(self.fiber_monomial(form.ring, form.field, single), piece, ambient)
            short_circuit = f"y{j} in J"
        else:
            detail = self.ideals.in_j_detail(self.fiber_monomial(form.ring, form.field, fiber), piece, ambient)
            short_circuit = None

        offending = None
        if detail.offending_monomial is not None:
            offending = Polynomial.monomial(form.ring, form.field, detail.offending_monomial).to_text()

        if not detail.member:
            logger.error("%s is not in J for type %s (deficit %d)", fiber_text(fiber), bundle, detail.deficit)

        return ClassCheck(
            monomial=fiber_text(fiber),
            member=detail.member,
            multipliers=detail.multipliers,
            deficit=detail.deficit,
            offending_monomial=offending,
            short_circuit=short_circuit,
        )

    def det_congruence_sign(self, form: QuadricForm, i: int, j: int, ideal_piece: IdealPieceBasis) -> SignCheck:
        """
        Determines the sign in ``det(A_j)*y_i^2 = sign*det(A_i)*y_j^2`` modulo J.

        Both signs are tested against the ideal of the partials of f; the cofactor sign
        ``(-1)^(i+j)`` is reported whenever it holds.

        Raises:
            NeitherSign: If neither relation lies in J.
        """

        ambient = Bidegree(form.bundle.t, 4)
        holds = {
            sign: self.ideals.in_j(determinant_relation(form, i, j, sign), ideal_piece, ambient)
            for sign in (1, -1)
        }
        expected = cofactor_sign(i, j)

        if not any(holds.values()):
            raise NeitherSign(type=str(form.bundle), i=i, j=j)

        sign = expected if holds[expected] else -expected
        return SignCheck(
            i=i, j=j, sign=sign, cofactor_sign=expected, plus_holds=holds[1], minus_holds=holds[-1]
        )

    # claims

    def claim(
        self,
        name: str,
        ring: RingSpec,
        field: FieldSpec,
        generators: Iterable[Polynomial],
        target: Bidegree,
        note: str | None = None,
        sign: int | None = None,
    ) -> ClaimCheck:
        moved = [generator.change_ring(ring) for generator in generators if not generator.is_zero]
        problem = MembershipProblem(ring=ring, field=field, generators=tuple(moved), target=target)
        certificate = self.ideals.contains_full_piece(problem)

        if not certificate.full_target_rank:
            logger.error("claim %s fails: rank %d of %d", name, certificate.rank, certificate.rows)
        return ClaimCheck(
            name=name,
            ring=ring.label,
            target=target,
            generators=len(moved),
            certificate=certificate,
            sign=sign,
            note=note,
        )

    def sl_element(
        self, generators: Sequence[Polynomial]
    ) -> tuple[list[RawScalar | int], list[str] | None, str | None]:
        """
        A certified strong Lefschetz element of the complete intersection in P_2.

        A unit generator makes the quotient zero, so every linear form qualifies and the
        coordinate sum is taken.

        Returns:
            tuple: The element's coefficients, their printed form, and a note for the
            unit case.

        Raises:
            NotCompleteIntersection: If the generators have a common zero.
            LefschetzElementNotFound: If no candidate passes.
        """

        if any(not generator.is_zero and generator.bidegree == (0, 0) for generator in generators):
            return [1, 1, 1], None, "unit generator, coordinate sum"

        quotient = self.lefschetz.certify([generator.change_ring(P2) for generator in generators])
        ell, search = self.lefschetz.find_sl_element(quotient)
        if ell is None:
            raise LefschetzElementNotFound(degrees=list(quotient.generator_degrees))
        return linear_coefficients(ell), search.sl_element, None

    def sl_power(
        self, generators: Sequence[Polynomial], exponent: int, ring: RingSpec
    ) -> tuple[Polynomial, list[str] | None, str | None]:
        """
        ``ell^exponent`` for a strong Lefschetz element ell of the generators.

        Exponents of at most 0 give 1 or 0 whatever ell is, so no search is run.

        Returns:
            tuple: The power in ``ring``, the element's coefficients and a note.
        """

        field = generators[0].field
        if exponent <= 0:
            return linear_power(ring, field, [1, 1, 1], exponent), None, None

        coefficients, printed, note = self.sl_element(generators)
        return linear_power(ring, field, coefficients, exponent), printed, note

    # steps

    def _ambient_checks(self, piece: IdealPieceBasis, form: QuadricForm, step: int, sigma) -> list[ClassCheck]:
        return [self.class_check(piece, form, fiber) for fiber in step_classes(step, sigma)]

    def _step1(self, report: StepReport, form: QuadricForm) -> None:
        bundle = form.bundle
        d0, d1, d2, _ = bundle.degrees
        special = build_explicit_f(bundle, Variant.STEP1, form.field)
        report.claims.append(
            self.claim(
                "ci",
                P2,
                form.field,
                special.components[:3],
                Bidegree(d0 + d1 + d2 - 2, 0),
            )
        )

        r, d = bundle.r, bundle.d
        for j in range(4):
            if bundle.degrees[j] > 0:
                report.inequalities.append(
                    InequalityCheck(label=f"r3 + r{j} + d >= 1", lhs=r[3] + r[j] + d, rhs=1)
                )

    def _step2(self, report: StepReport, form: QuadricForm, piece: IdealPieceBasis) -> None:
        bundle = form.bundle
        field = form.field
        d0, d1 = bundle.degrees[:2]
        r, t = bundle.r, bundle.t

        special = build_explicit_f(bundle, Variant.STEP2, field)
        f0, f1 = special.components[:2]
        ring_t = RingSpec.for_t(bundle)
        z0 = Polynomial.variable(ring_t, field, "z0")
        z1 = Polynomial.variable(ring_t, field, "z1")

        def mixed(k: int) -> Polynomial:
            return f0.partial(k).change_ring(ring_t) * z0 + f1.partial(k).change_ring(ring_t) * z1

        report.claims.append(
            self.claim(
                "claimT",
                ring_t,
                field,
                [f0, f1, mixed(0), mixed(1)],
                Bidegree(d0 + d1 - 3, 1),
                note="unit component" if d0 == 0 or d1 == 0 else None,
            )
        )

        x = [Polynomial.variable(P2, field, k) for k in range(3)]
        if d0 >= 2 and d1 >= 1:
            plus = (x[0] + x[1]) ** (d0 - 1)
            report.claims.append(
                self.claim(
                    "ci (x0+x1)^(d0-1), f0, f1", P2, field, [plus, f0, f1], Bidegree(2 * d0 + d1 - 3, 0)
                )
            )
        if d1 >= 2 and d0 >= 1:
            minus = (x[0] - x[1]) ** (d1 - 1)
            report.claims.append(
                self.claim(
                    "ci (x0-x1)^(d1-1), f0, f1", P2, field, [minus, f0, f1], Bidegree(d0 + 2 * d1 - 3, 0)
                )
            )

        report.inequalities.append(
            InequalityCheck(
                label="t + 3r0 + r1 >= 2d0 + d1 - 3", lhs=t + 3 * r[0] + r[1], rhs=2 * d0 + d1 - 3
            )
        )

        # (df0/dxk y0^2 + df1/dxk y1^2) y0 y1 for k = 0, 1 on the system itself
        ring = form.ring
        y = [Polynomial.variable(ring, field, ring.num_base + j) for j in range(4)]
        c0, c1 = form.components[:2]
        ambient = Bidegree(t, 4)
        for k in range(2):
            relation = (c0.partial(k) * y[0] ** 2 + c1.partial(k) * y[1] ** 2) * y[0] * y[1]
            report.dfy2_variants[f"k={k}"] = self.ideals.in_j(relation, piece, ambient)

    def claim_u_generators(self, form: QuadricForm, sign: int) -> tuple[list[Polynomial], list[str]]:
        """
        The seven generators of the step-3 ideal in U under the special choice of f and g.

        mu and nu are certified strong Lefschetz elements; one is only searched for when a
        component of g raises it to a positive power. ``sign`` enters the last generator
        ``det(A_3)*z1 - sign*det(A_1)*z3``.

        Returns:
            tuple: The generators in U and the notes of the Lefschetz searches.
        """

        bundle = form.bundle
        field = form.field
        d0, _, d2, d3 = bundle.degrees
        ring_u = RingSpec.for_u(bundle)

        special = build_explicit_f(bundle, Variant.STEP3, field)
        _, f1, f2, f3 = special.components
        ring = special.ring
        notes: list[str] = []

        nu: list[RawScalar | int] = [1, 1, 1]
        if g_exponent(bundle, 1, 2) > 0:
            g11_exponent = g_exponent(bundle, 1, 1)
            g11 = Polynomial.zero(ring, field)
            if g11_exponent >= 0:
                g11 = Polynomial.variable(ring, field, 2, g11_exponent)
            nu, _, note = self.sl_element([f1, f2, g11])
            notes += [f"nu: {note}"] if note else []

        mu: list[RawScalar | int] = [1, 1, 1]
        if max(g_exponent(bundle, 2, 3), g_exponent(bundle, 3, 3)) > 0:
            x0_power = Polynomial.variable(ring, field, 0, d0 + d2 + d3 - 1)
            mu, _, note = self.sl_element([x0_power, f2, f3])
            notes += [f"mu: {note}"] if note else []

        gform = build_explicit_g(bundle, mu, nu, field)
        z1 = Polynomial.variable(ring_u, field, "z1")
        z3 = Polynomial.variable(ring_u, field, "z3")

        def u(poly: Polynomial) -> Polynomial:
            return poly.change_ring(ring_u)

        generators = [
            u(f1) * z1,
            u(f2),
            u(f3) * z3,
            u(gform.component(1, 2)) * z1,
            u(gform.component(2, 3)) * z3,
            u(gform.component(1, 1)) * z1 + u(gform.component(3, 3)) * z3,
            u(minor_det(special, 3).det) * z1 - (u(minor_det(special, 1).det) * z3).scale(sign),
        ]
        return generators, notes

    def _claim_u(self, form: QuadricForm, sign: int) -> ClaimCheck:
        bundle = form.bundle
        target = Bidegree(bundle.t - bundle.d + 2 * bundle.r[2], 1)
        ring_u = RingSpec.for_u(bundle)

        if bundle.degrees[2] == 0:
            return ClaimCheck(
                name="claimU",
                ring=ring_u.label,
                target=target,
                generators=7,
                trivial=True,
                sign=sign,
                note="f2 is a unit",
            )

        generators, notes = self.claim_u_generators(form, sign)
        return self.claim(
            "claimU", ring_u, form.field, generators, target, note="; ".join(notes) or None, sign=sign
        )

    def _transition(self, form: QuadricForm, tau: tuple[int, int, int, int]) -> TransitionCheck:
        bundle = form.bundle
        field = form.field
        degrees, r = bundle.degrees, bundle.r
        t0, t1, t2, t3 = tau
        a, b, c = degrees[t0], degrees[t1], degrees[t3]

        inequality = InequalityCheck(label=f"r{t2} >= r{t3} - 1", lhs=r[t2], rhs=r[t3] - 1)
        common = dict(tau=tau, source=_pair(t0, t1), target=_pair(t0, t2), inequality=inequality)
        if a == 0 or b == 0:
            return TransitionCheck(skipped=True, **common)

        ring = form.ring
        x = [Polynomial.variable(ring, field, k) for k in range(3)]
        components = [fermat(ring, field, degree) for degree in degrees]
        components[t0] = x[0] ** a + x[1] ** a
        components[t1] = x[0] ** b + x[2] ** b
        components[t3] = x[0] ** c
        special = QuadricForm(bundle=bundle, ring=ring, field=field, components=tuple(components))

        det = minor_det(special, t2).det
        g, printed, note = self.sl_power(
            [x[0] ** (a + b + c - 1), components[t0], components[t1]],
            g_exponent(bundle, t0, t1),
            ring,
        )
        claim = self.claim(
            f"transition {tau}",
            P2,
            field,
            [components[t0], components[t1], g, det],
            Bidegree(bundle.t + 2 * r[t0] + 2 * r[t1], 0),
            note=note,
        )
        return TransitionCheck(skipped=False, claim=claim, sl_element=printed, **common)

    @staticmethod
    def diagram_paths(transitions: Iterable[TransitionCheck]) -> dict[str, list[str]]:
        """Shortest path from every index pair to {1, 2} along passing transitions."""

        edges: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for transition in transitions:
            if transition.passed:
                edges.setdefault(transition.source, []).append(transition.target)

        paths: dict[str, list[str]] = {}
        for start in itertools.combinations(range(4), 2):
            previous: dict[tuple[int, int], tuple[int, int] | None] = {start: None}
            queue = deque([start])
            while queue:
                node = queue.popleft()
                for following in edges.get(node, []):
                    if following not in previous:
                        previous[following] = node
                        queue.append(following)

            route: list[str] = []
            if FINAL_PAIR in previous:
                node = FINAL_PAIR
                while node is not None:
                    route.append(_pair_label(node))
                    node = previous[node]
                route.reverse()
            paths[_pair_label(start)] = route
        return paths

    def _step3(self, report: StepReport, form: QuadricForm) -> None:
        bundle = form.bundle
        r = bundle.r

        jacobian = self.jacobian_piece(form)
        for i, j in itertools.combinations(range(4), 2):
            report.signs.append(self.det_congruence_sign(form, i, j, jacobian))

        sign13 = next(check.sign for check in report.signs if (check.i, check.j) == (1, 3))
        report.claims.append(self._claim_u(form, sign13))
        report.inequalities.extend(
            [
                InequalityCheck(label="r2 >= r1 - 3", lhs=r[2], rhs=r[1] - 3),
                InequalityCheck(label="r1 >= r0 - 1", lhs=r[1], rhs=r[0] - 1),
            ]
        )
        report.transitions.extend(self._transition(form, tau) for tau in TRANSITIONS)
        report.paths.update(self.diagram_paths(report.transitions))

    def _step4(self, report: StepReport, form: QuadricForm) -> None:
        bundle = form.bundle
        field = form.field
        r, d, t = bundle.r, bundle.d, bundle.t
        degrees = bundle.degrees

        for j in range(3):
            if degrees[j] == 0:
                continue
            partials = [fermat(P2, field, degrees[j]).partial(k) for k in range(3)]
            report.claims.append(
                self.claim(f"fermat partials f{j}", P2, field, partials, Bidegree(3 * degrees[j] - 5, 0))
            )
            report.inequalities.append(
                InequalityCheck(label=f"r0 + r1 + r2 + r3 + d + 2 >= 2r{j}", lhs=sum(r) + d + 2, rhs=2 * r[j])
            )

        report.inequalities.append(
            InequalityCheck(label="r0 + r1 + r2 + r3 + 2d + 3 >= 0", lhs=sum(r) + 2 * d + 3, rhs=0)
        )

        d3 = degrees[3]
        target = Bidegree(t + 4 * r[3], 0)
        partials = [fermat(P2, field, d3).partial(k) for k in range(3)]
        exponent = g_exponent(bundle, 3, 3)

        if d3 < 2:
            report.claims.append(self.claim("fermat partials f3 with g33", P2, field, partials, target))
            return

        quotient = self.lefschetz.certify(partials)
        ell, _ = self.lefschetz.find_sl_element(quotient)
        if ell is None:
            raise LefschetzElementNotFound(degrees=list(quotient.generator_degrees))

        g33 = linear_power(P2, field, linear_coefficients(ell), exponent)
        report.claims.append(
            self.claim("fermat partials f3 with g33", P2, field, partials + [g33], target)
        )
        if exponent >= 0:
            report.bounds.append(self.lefschetz.gen4_bound_check(quotient, ell, exponent, target.m))

    def verify_step(
        self,
        bundle: TypeTuple,
        step: int,
        sigma: Sequence[int] | None = None,
        field: FieldSpec | str | None = None,
        mode: Mode | str = Mode.EXPLICIT,
        seed: int | None = None,
        piece: IdealPieceBasis | None = None,
        strict: bool = False,
    ) -> StepReport:
        """
        Certifies one step of the construction for a type.

        The step's monomial classes are tested for membership in J, computed from the
        system used by ``verify_prop_main``; the step's special claims and integer
        inequalities are certified alongside. The third step also determines the signs of
        the determinant congruences and walks the transition diagram.

        Args:
            bundle (TypeTuple): The bundle type.
            step (int): 1 to 4.
            sigma (Sequence[int] | None): A permutation picking one class; all classes
                of the step when omitted.
            field (FieldSpec | str | None): Working field.
            mode (Mode | str): System mode.
            seed (int | None): Seed for random mode.
            piece (IdealPieceBasis | None): A precomputed ideal piece at (t, 4).
            strict (bool): Raise ``StepFailure`` instead of returning a failing report.

        Returns:
            StepReport: Class verdicts, claims, inequalities and, for step 3, signs,
            transitions and diagram paths.
        """

        if step not in (1, 2, 3, 4):
            raise InvalidStep(step=step)

        field = self.resolve_field(field)
        report = StepReport(bundle=bundle.label, step=step)
        if bundle.is_trivially_rational:
            return report

        form, gform = self.system(bundle, field, Mode(mode), seed)
        if piece is None:
            piece = self.global_piece(form, gform)

        report.classes.extend(self._ambient_checks(piece, form, step, sigma))
        if step == 1:
            self._step1(report, form)
        elif step == 2:
            self._step2(report, form, piece)
        elif step == 3:
            self._step3(report, form)
        else:
            self._step4(report, form)

        logger.info("type %s step %d: %s", bundle, step, "passed" if report.passed else "FAILED")
        if strict and not report.passed:
            failing = next((check for check in report.classes if not check.member), None)
            raise StepFailure(
                type=str(bundle),
                step=step,
                monomial=failing.monomial if failing else None,
                deficit=failing.deficit if failing else None,
            )
        return report

    def verify_steps(
        self,
        bundle: TypeTuple,
        field: FieldSpec | str | None = None,
        mode: Mode | str = Mode.EXPLICIT,
        seed: int | None = None,
    ) -> list[StepReport]:
        field = self.resolve_field(field)
        if bundle.is_trivially_rational:
            return [StepReport(bundle=bundle.label, step=step) for step in (1, 2, 3, 4)]

        form, gform = self.system(bundle, field, Mode(mode), seed)
        piece = self.global_piece(form, gform)
        return [
            self.verify_step(bundle, step, field=field, mode=mode, seed=seed, piece=piece)
            for step in (1, 2, 3, 4)
        ]

    def decomposition(self, bundle: TypeTuple) -> DecompositionReport:
        """Matches every monomial of S(t, 4) with the step handling its fiber part."""

        ring = RingSpec.for_s(bundle)
        counts: Counter[str] = Counter()
        unmatched = 0
        monomials = basis(ring, Bidegree(bundle.t, 4))
        for monomial in monomials:
            step = handling_step(monomial[ring.num_base :])
            if step is None:
                unmatched += 1
            else:
                counts[f"step{step}"] += 1

        return DecompositionReport(
            bundle=bundle.label, total=len(monomials), per_step=dict(sorted(counts.items())), unmatched=unmatched
        )

    # classical argument and negative controls

    def verify_classical_nl(self, d: int, field: FieldSpec | str | None = None) -> NLCertificate:
        """
        Certifies ``P_3(3d-4)`` inside the ideal of the Fermat partials and ``ell^(2d-4)``.

        Raises:
            DegreeTooSmall: For d < 4.
            LefschetzElementNotFound: If the candidate search fails.
        """

        if d < 4:
            raise DegreeTooSmall(degree=d)

        field = self.resolve_field(field)
        ring = RingSpec.projective(3)
        partials = [fermat(ring, field, d).partial(k) for k in range(4)]

        quotient = self.lefschetz.certify(partials)
        ell, search = self.lefschetz.find_sl_element(quotient)
        if ell is None:
            raise LefschetzElementNotFound(degrees=list(quotient.generator_degrees))

        power = 2 * d - 4
        target = Bidegree(3 * d - 4, 0)
        g = linear_power(ring, field, linear_coefficients(ell), power)
        problem = MembershipProblem(ring=ring, field=field, generators=tuple(partials + [g]), target=target)
        certificate = self.ideals.contains_full_piece(problem)
        bound: BoundCheck = self.lefschetz.gen4_bound_check(quotient, ell, power, target.m)

        logger.info("classical degree %d: rank %d of %d", d, certificate.rank, certificate.rows)
        return NLCertificate(
            degree=d,
            target_degree=target.m,
            field=str(field),
            sl_element=search.sl_element,
            certificate=certificate,
            bound=bound,
        )

    def negative_control_remark(
        self, bundle: TypeTuple, drop: str = "g33", field: FieldSpec | str | None = None
    ) -> NegativeControlReport:
        """
        Forces g33 (or g11) to zero and records whether the containment survives.

        Without g33 the fourth step needs ``d3 <= d0 + d1 + d2 + 4``; without g11 the
        third step needs ``d3 <= d2 + 6``. Observed verdicts are reported, not asserted.
        """

        if drop not in DROPPABLE:
            raise InvalidStep(dropped=drop)

        field = self.resolve_field(field)
        d0, d1, d2, d3 = bundle.degrees
        if drop == "g33":
            label, violated, fiber = "d3 <= d0 + d1 + d2 + 4", d3 > d0 + d1 + d2 + 4, (0, 0, 0, 4)
        else:
            label, violated, fiber = "d3 <= d2 + 6", d3 > d2 + 6, (0, 2, 2, 0)

        result = self.verify_prop_main(bundle, Mode.EXPLICIT, field=field, drop=[drop])
        class_check = None
        if result.verdict != Verdict.TRIVIALLY_RATIONAL:
            form, gform = self.system(bundle, field, Mode.EXPLICIT, None, [drop])
            class_check = self.class_check(self.global_piece(form, gform), form, fiber)

        report = NegativeControlReport(
            bundle=bundle.label,
            dropped=drop,
            bound=label,
            bound_violated=violated,
            result=result,
            class_check=class_check,
        )
        if not report.agrees:
            logger.warning("negative control %s on %s disagrees with the expected verdict", drop, bundle)
        return report

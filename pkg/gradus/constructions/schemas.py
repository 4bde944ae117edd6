import enum

from pydantic import BaseModel as BaseSchema, ConfigDict, computed_field

from gradus.lefschetz.schemas import BoundCheck
from gradus.linalg.schemas import RankCertificate
from gradus.poly.models import Polynomial
from gradus.poly.schemas import Bidegree, RingSpec, TypeTuple
from gradus.scalar.schemas import FieldSpec

# pairs (i, j) carrying a g_ij; g00 and g22 are left out
G_PAIRS: tuple[tuple[int, int], ...] = ((1, 1), (3, 3), (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


class Mode(str, enum.Enum):
    EXPLICIT = "explicit"
    RANDOM = "random"


class Variant(str, enum.Enum):
    STEP1 = "step1"
    STEP2 = "step2"
    STEP3 = "step3"
    STEP4 = "step4"
    NL_FERMAT = "nl_fermat"


class Verdict(str, enum.Enum):
    FULL = "FULL"
    DEFICIENT = "DEFICIENT"
    TRIVIALLY_RATIONAL = "TRIVIALLY-RATIONAL"


class QuadricForm(BaseSchema):
    """The diagonal quadric ``f = f0*y0^2 + f1*y1^2 + f2*y2^2 + f3*y3^2`` over S."""

    bundle: TypeTuple
    ring: RingSpec
    field: FieldSpec
    components: tuple[Polynomial, Polynomial, Polynomial, Polynomial]

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def f(self) -> Polynomial:
        result = Polynomial.zero(self.ring, self.field)
        for j, component in enumerate(self.components):
            result = result + component * Polynomial.variable(self.ring, self.field, self.ring.num_base + j, 2)
        return result

    def jacobian(self) -> list[Polynomial]:
        """The seven partial derivatives of f, zero ones omitted."""

        f = self.f
        partials = [f.partial(index) for index in range(self.ring.num_vars)]
        return [p for p in partials if not p.is_zero]


class GForm(BaseSchema):
    """``g = g11*y1^2 + g33*y3^2 + sum g_ij*y_i*y_j`` with g_ij of base degree t - d + r_i + r_j."""

    bundle: TypeTuple
    ring: RingSpec
    field: FieldSpec
    components: dict[tuple[int, int], Polynomial]

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def component(self, i: int, j: int) -> Polynomial:
        key = (min(i, j), max(i, j))
        return self.components.get(key, Polynomial.zero(self.ring, self.field))

    @property
    def g(self) -> Polynomial:
        base = self.ring.num_base
        result = Polynomial.zero(self.ring, self.field)
        for (i, j), component in self.components.items():
            exponents = [0] * self.ring.num_vars
            exponents[base + i] += 1
            exponents[base + j] += 1
            result = result + component.multiply_monomial(tuple(exponents))
        return result

    def without(self, *pairs: tuple[int, int]) -> "GForm":
        return GForm(
            bundle=self.bundle,
            ring=self.ring,
            field=self.field,
            components={key: value for key, value in self.components.items() if key not in pairs},
        )


class MinorMatrix(BaseSchema):
    """A minor of the derivative matrix (df_j/dx_k) with column j left out."""

    j: int
    entries: list[list[Polynomial]]
    det: Polynomial

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def size(self) -> int:
        return len(self.entries)


class ClaimCheck(BaseSchema):
    """A containment of a full graded piece in an ideal, certified by rank."""

    name: str
    ring: str
    target: Bidegree
    generators: int
    certificate: RankCertificate | None = None
    trivial: bool = False
    sign: int | None = None
    note: str | None = None

    @computed_field
    @property
    def full(self) -> bool:
        return self.trivial or (self.certificate is not None and self.certificate.full_target_rank)


class ClassCheck(BaseSchema):
    """J-membership of one monomial class of the fiber variables."""

    monomial: str
    member: bool
    multipliers: int
    deficit: int = 0
    offending_monomial: str | None = None
    short_circuit: str | None = None


class InequalityCheck(BaseSchema):
    label: str
    lhs: int
    rhs: int

    @computed_field
    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs


class SignCheck(BaseSchema):
    i: int
    j: int
    sign: int
    cofactor_sign: int
    plus_holds: bool
    minus_holds: bool


class TransitionCheck(BaseSchema):
    tau: tuple[int, int, int, int]
    source: tuple[int, int]
    target: tuple[int, int]
    skipped: bool
    claim: ClaimCheck | None = None
    inequality: InequalityCheck
    sl_element: list[str] | None = None

    @computed_field
    @property
    def passed(self) -> bool:
        return self.inequality.holds and (self.skipped or (self.claim is not None and self.claim.full))


class StepReport(BaseSchema):
    bundle: str
    step: int
    classes: list[ClassCheck] = []
    claims: list[ClaimCheck] = []
    inequalities: list[InequalityCheck] = []
    signs: list[SignCheck] = []
    transitions: list[TransitionCheck] = []
    paths: dict[str, list[str]] = {}
    dfy2_variants: dict[str, bool] = {}
    bounds: list[BoundCheck] = []

    @computed_field
    @property
    def passed(self) -> bool:
        return (
            all(check.member for check in self.classes)
            and all(claim.full for claim in self.claims)
            and all(check.holds for check in self.inequalities)
            and all(transition.passed for transition in self.transitions)
            and all(path for path in self.paths.values())
            and all(bound.consistent for bound in self.bounds)
        )


class DecompositionReport(BaseSchema):
    """Every monomial of S(t,4) matched to the step that handles its fiber part."""

    bundle: str
    total: int
    per_step: dict[str, int]
    unmatched: int


class PropCertificate(BaseSchema):
    bundle: str
    input_degrees: tuple[int, int, int, int]
    degrees: tuple[int, int, int, int]
    mode: Mode
    seed: int | None = None
    field: str
    target: Bidegree | None = None
    verdict: Verdict
    certificate: RankCertificate | None = None
    dropped: list[str] = []


class NLCertificate(BaseSchema):
    degree: int
    target_degree: int
    field: str
    sl_element: list[str] | None
    certificate: RankCertificate
    bound: BoundCheck


class NegativeControlReport(BaseSchema):
    bundle: str
    dropped: str
    bound: str
    bound_violated: bool
    result: PropCertificate
    class_check: ClassCheck | None = None

    @computed_field
    @property
    def expected_full(self) -> bool:
        return not self.bound_violated

    @computed_field
    @property
    def agrees(self) -> bool:
        return (self.result.verdict == Verdict.FULL) == self.expected_full

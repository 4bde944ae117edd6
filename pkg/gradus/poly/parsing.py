import re
from fractions import Fraction

from gradus.poly.exceptions import PolynomialParseError, UnknownVariable
from gradus.poly.models import Polynomial
from gradus.poly.schemas import RingSpec
from gradus.scalar.schemas import FieldSpec

TOKEN = re.compile(r"\s*(?:(?P<number>\d+)|(?P<name>[a-z]\d+)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = TOKEN.match(stripped, position)
        if not match:
            raise PolynomialParseError(text=text, position=position)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind)))
        position = match.end()
    return tokens


class _Parser:
    """
    Recursive descent over ``sum := term (('+'|'-') term)*``,
    ``term := factor ('*'? factor)*`` and ``factor := atom ('^' number)?``.
    """

    def __init__(self, text: str, ring: RingSpec, field: FieldSpec):
        self.text = text
        self.ring = ring
        self.field = field
        self.tokens = _tokenize(text)
        self.position = 0

    def _peek(self) -> tuple[str, str] | None:
        if self.position < len(self.tokens):
            return self.tokens[self.position]
        return None

    def _take(self, value: str | None = None) -> tuple[str, str]:
        token = self._peek()
        if token is None or (value is not None and token[1] != value):
            raise PolynomialParseError(text=self.text, expected=value or "more input")
        self.position += 1
        return token

    def parse(self) -> Polynomial:
        result = self._sum()
        if self._peek() is not None:
            raise PolynomialParseError(text=self.text, unexpected=self._peek()[1])
        return result

    def _sum(self) -> Polynomial:
        sign = 1
        if self._peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self._take()[1] == "-" else 1

        result = self._term().scale(sign)
        while self._peek() in (("op", "+"), ("op", "-")):
            operator = self._take()[1]
            term = self._term()
            result = result + term if operator == "+" else result - term
        return result

    def _starts_factor(self) -> bool:
        token = self._peek()
        return token is not None and (token[0] in ("number", "name") or token == ("op", "("))

    def _term(self) -> Polynomial:
        result = self._factor()
        while True:
            if self._peek() == ("op", "*"):
                self._take()
                result = result * self._factor()
            elif self._starts_factor():
                result = result * self._factor()
            else:
                return result

    def _factor(self) -> Polynomial:
        atom = self._atom()
        if self._peek() == ("op", "^"):
            self._take()
            kind, value = self._take()
            if kind != "number":
                raise PolynomialParseError(text=self.text, expected="exponent")
            atom = atom ** int(value)
        return atom

    def _atom(self) -> Polynomial:
        kind, value = self._take()

        if kind == "number":
            number = Fraction(int(value))
            if self._peek() == ("op", "/"):
                self._take()
                kind, denominator = self._take()
                if kind != "number":
                    raise PolynomialParseError(text=self.text, expected="denominator")
                number = Fraction(int(value), int(denominator))
            return Polynomial.constant(self.ring, self.field, number)

        if kind == "name":
            if value not in self.ring.variable_names:
                raise UnknownVariable(variable=value, ring=self.ring.label)
            return Polynomial.variable(self.ring, self.field, value)

        if value == "(":
            inner = self._sum()
            self._take(")")
            return inner

        raise PolynomialParseError(text=self.text, unexpected=value)


def parse_polynomial(text: str, ring: RingSpec, field: FieldSpec) -> Polynomial:
    """
    Parses text such as ``3*x0^2*y1 - 1/2 x1 y0`` into a polynomial of the ring.

    Args:
        text (str): Polynomial text; ``*`` is optional and parentheses are allowed.
        ring (RingSpec): Ring providing the variable names.
        field (FieldSpec): Coefficient field.

    Returns:
        Polynomial: The parsed polynomial.
    """

    if not text.strip():
        raise PolynomialParseError(text=text)
    return _Parser(text, ring, field).parse()


def format_polynomial(poly: Polynomial) -> str:
    return poly.to_text()

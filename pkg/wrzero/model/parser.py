"""Polynomial system input: the text grammar, the JSON documents, and rendering back to text.

Text grammar (statements separated by ";" or newlines, "#" starts a comment):

    line  := "dx" INT "/dt" "=" poly
    poly  := ["+"|"-"] term (("+"|"-") term)*
    term  := coeff? ("*"? mono)*
    mono  := "x" INT ("^" INT)?
    coeff := INT | DECIMAL | INT "/" INT
"""

import json
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from pydantic import ValidationError

from wrzero.model.graph import PolySystem, Vertex, WeightedEGraph, associated_system
from wrzero.model.schemas import RealizationDocument, SystemDocument
from wrzero.ratmat import format_rational

logger = logging.getLogger(__name__)


class ParseError(ValueError):
    """Malformed system input; line and column are 1-based when known."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


_TOKEN_SPEC = [
    ("COMMENT", r"#[^\n]*"),
    ("DERIV", r"dx(\d+)\s*/\s*dt"),
    ("VAR", r"x(\d+)"),
    ("NUMBER", r"\d+\.\d*|\.\d+|\d+"),
    ("SEP", r"[;\n]"),
    ("OP", r"[-+*/^=]"),
    ("SPACE", r"[ \t\r]+"),
    ("MISMATCH", r"."),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKEN_SPEC))


@dataclass
class _Token:
    kind: str
    text: str
    line: int
    column: int
    index: Optional[int] = None  # subscript of DERIV / VAR tokens


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, line_start = 1, 0
    for match in _TOKEN_RE.finditer(text):
        kind = match.lastgroup
        column = match.start() - line_start + 1
        value = match.group()
        if kind == "MISMATCH":
            raise ParseError(f"unexpected character {value!r}", line, column)
        if kind in ("DERIV", "VAR"):
            digits = re.search(r"\d+", value).group()
            tokens.append(_Token(kind, value, line, column, int(digits)))
        elif kind not in ("SPACE", "COMMENT"):
            tokens.append(_Token(kind, value, line, column))
        if value == "\n":
            line += 1
            line_start = match.end()
    tokens.append(_Token("EOF", "", line, len(text) - line_start + 1))
    return tokens


class _Parser:
    """Recursive descent over the token list; one instance per input."""

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def _error(self, message: str, token: Optional[_Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(message, token.line, token.column)

    def _is_op(self, text: str) -> bool:
        return self.current.kind == "OP" and self.current.text == text

    def _expect_op(self, text: str) -> None:
        if not self._is_op(text):
            raise self._error(f"expected {text!r}, found {self.current.text or 'end of input'!r}")
        self._advance()

    def parse(self) -> list[tuple[_Token, list[tuple[Fraction, dict[int, int]]]]]:
        equations = []
        while self.current.kind != "EOF":
            if self.current.kind == "SEP":
                self._advance()
                continue
            equations.append(self._equation())
            if self.current.kind not in ("SEP", "EOF"):
                raise self._error(f"unexpected {self.current.text!r} after equation")
        return equations

    def _equation(self):
        head = self.current
        if head.kind != "DERIV":
            raise self._error(f"expected 'dx<i>/dt', found {head.text!r}")
        self._advance()
        self._expect_op("=")
        return head, self._poly()

    def _poly(self) -> list[tuple[Fraction, dict[int, int]]]:
        terms = []
        sign = 1
        if self._is_op("+") or self._is_op("-"):
            sign = -1 if self._advance().text == "-" else 1
        while True:
            coeff, powers = self._term()
            terms.append((sign * coeff, powers))
            if self._is_op("+") or self._is_op("-"):
                sign = -1 if self._advance().text == "-" else 1
            else:
                return terms

    def _term(self) -> tuple[Fraction, dict[int, int]]:
        start = self.current
        coeff = Fraction(1)
        has_coeff = False
        if self.current.kind == "NUMBER":
            coeff = self._coeff()
            has_coeff = True
        powers: dict[int, int] = {}
        while True:
            if self._is_op("*"):
                self._advance()
                if self.current.kind != "VAR":
                    raise self._error("expected a variable after '*'")
            if self.current.kind != "VAR":
                break
            var = self._advance()
            exponent = 1
            if self._is_op("^"):
                self._advance()
                token = self.current
                if token.kind != "NUMBER":
                    raise self._error("expected an integer exponent")
                if not token.text.isdigit():
                    raise self._error(f"non-integer exponent {token.text!r}", token)
                self._advance()
                exponent = int(token.text)
            if var.index < 1:
                raise self._error("variables are numbered from x1", var)
            powers[var.index] = powers.get(var.index, 0) + exponent
        if not has_coeff and not powers:
            raise self._error(f"expected a term, found {start.text or 'end of input'!r}", start)
        return coeff, powers

    def _coeff(self) -> Fraction:
        token = self._advance()
        value = Fraction(token.text)
        if self._is_op("/"):
            self._advance()
            denominator = self.current
            if denominator.kind != "NUMBER" or not denominator.text.isdigit():
                raise self._error("expected an integer denominator")
            if not token.text.isdigit():
                raise self._error("fractions need an integer numerator", token)
            self._advance()
            if int(denominator.text) == 0:
                raise self._error("division by zero", denominator)
            value = Fraction(int(token.text), int(denominator.text))
        return value


def parse_system(text: str) -> PolySystem:
    """
    Parse the text grammar into a PolySystem.

    Equal monomials are merged by adding coefficients; monomials whose merged
    coefficients all vanish are dropped with a warning.
    """
    equations = _Parser(text).parse()
    if not equations:
        raise ParseError("no equations found")

    indices = [head.index for head, _ in equations]
    n = len(equations)
    for head, _ in equations:
        if indices.count(head.index) > 1:
            raise ParseError(f"duplicate equation for dx{head.index}/dt", head.line, head.column)
    if sorted(indices) != list(range(1, n + 1)):
        raise ParseError(
            f"inconsistent variable count: {n} equations must be dx1/dt..dx{n}/dt, "
            f"got {', '.join(f'dx{i}/dt' for i in sorted(indices))}"
        )

    merged: dict[Vertex, list[Fraction]] = {}
    for head, terms in equations:
        for coeff, powers in terms:
            if any(var > n for var in powers):
                raise ParseError(
                    f"inconsistent variable count: x{max(powers)} used in a {n}-variable system",
                    head.line,
                    head.column,
                )
            if coeff == 0:
                continue
            vertex = tuple(powers.get(k, 0) for k in range(1, n + 1))
            merged.setdefault(vertex, [Fraction(0)] * n)[head.index - 1] += coeff

    terms = {}
    for vertex, coefficients in merged.items():
        if all(c == 0 for c in coefficients):
            logger.warning("Dropping monomial %s: its coefficients cancel to zero", render_monomial(vertex))
            continue
        terms[vertex] = tuple(coefficients)
    if not terms:
        raise ParseError("empty system: every monomial cancels")
    return PolySystem.from_terms(n, terms)


def render_monomial(vertex: Vertex) -> str:
    """x1*x3^2 style; the zero vector renders as "1"."""
    factors = [
        f"x{k + 1}" if e == 1 else f"x{k + 1}^{e}" for k, e in enumerate(vertex) if e
    ]
    return "*".join(factors) if factors else "1"


def render_system(sys: PolySystem) -> str:
    """Render back into the text grammar with exact coefficients."""
    lines = []
    for k in range(sys.n):
        parts = []
        for vertex, w in zip(sys.sources, sys.net_vectors):
            c = w[k]
            if c == 0:
                continue
            magnitude = abs(c)
            monomial = render_monomial(vertex)
            if monomial == "1":
                term = format_rational(magnitude)
            elif magnitude == 1:
                term = monomial
            else:
                term = f"{format_rational(magnitude)}*{monomial}"
            if parts:
                parts.append(f"- {term}" if c < 0 else f"+ {term}")
            else:
                parts.append(f"-{term}" if c < 0 else term)
        lines.append(f"dx{k + 1}/dt = {' '.join(parts) if parts else '0'}")
    return "\n".join(lines)


def _parse_json(text: str) -> Union[SystemDocument, RealizationDocument]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from e
    if not isinstance(data, dict):
        raise ParseError("JSON input must be an object")
    try:
        if "edges" in data:
            return RealizationDocument.model_validate(data)
        return SystemDocument.model_validate(data)
    except ValidationError as e:
        raise ParseError(f"invalid JSON document: {e}") from e


def parse_document(text: str) -> PolySystem:
    """Text grammar, SystemDocument JSON, or RealizationDocument JSON (its associated system)."""
    if text.lstrip().startswith("{"):
        document = _parse_json(text)
        try:
            if isinstance(document, RealizationDocument):
                return associated_system(document.to_graph())
            return document.to_system()
        except ValueError as e:
            raise ParseError(str(e)) from e
    return parse_system(text)


def load_system(path: Union[str, Path]) -> PolySystem:
    return parse_document(Path(path).read_text(encoding="utf-8"))


def load_graph(path: Union[str, Path]) -> WeightedEGraph:
    """Read a RealizationDocument back into a graph."""
    document = _parse_json(Path(path).read_text(encoding="utf-8"))
    if not isinstance(document, RealizationDocument):
        raise ParseError("expected a realization document with 'edges'")
    try:
        return document.to_graph()
    except ValueError as e:
        raise ParseError(str(e)) from e

"""Reader and writer for the line-oriented ``.lie`` structure-equation format.

    # comment
    generators 3
    d f3 = -f1^f2

Terms are ``[scalar [*]] GEN ^ GEN ...`` with ``GEN := fK | ~fK`` and scalars
such as ``1/2``, ``-3``, ``i``, ``3/4i`` or ``(1/2+3/4i)``. Floats are rejected.
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from pyparsing import (
    Combine,
    Keyword,
    Literal,
    Opt,
    ParseBaseException,
    ParserElement,
    Regex,
    StringEnd,
    Suppress,
    Word,
    ZeroOrMore,
    nums,
    one_of,
)

from src.exceptions import FrolicherError, GeneratorLimitError
from src.models.forms import Form, check_generator_count, format_terms
from src.models.scalar import ONE, Scalar
from src.models.structure import StructureEquations

logger = logging.getLogger(__name__)

PARSE_ERROR_KINDS = (
    "syntax",
    "unknown-generator",
    "degree-mismatch",
    "duplicate-definition",
    "bad-scalar",
)


@dataclass(frozen=True)
class SourceSpan:
    """1-based line/column plus byte offsets [start, end) into the whole input."""

    line: int
    column: int
    start: int
    end: int

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}"


class ParseError(FrolicherError, ValueError):
    """Malformed ``.lie`` text or form expression."""

    def __init__(self, message: str, span: SourceSpan, kind: str = "syntax") -> None:
        if kind not in PARSE_ERROR_KINDS:
            raise ValueError(f"Unknown parse error kind: {kind}")
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span
        self.kind = kind


@dataclass(frozen=True)
class LintWarning:
    message: str
    span: SourceSpan


@dataclass
class ParsedStructureFile:
    equations: StructureEquations
    warnings: List[LintWarning] = field(default_factory=list)


# Grammar tokens

@dataclass(frozen=True)
class _Gen:
    start: int
    end: int
    conjugate: bool
    number: int


@dataclass(frozen=True)
class _ScalarText:
    start: int
    end: int
    text: str


@dataclass(frozen=True)
class _Term:
    start: int
    scalar: Optional[_ScalarText]
    generators: Tuple[_Gen, ...]


def _gen_action(s: str, loc: int, toks: Any) -> _Gen:
    text = toks[0]
    conjugate = text.startswith("~")
    return _Gen(loc, loc + len(text), conjugate, int(text.lstrip("~")[1:]))


def _scalar_action(s: str, loc: int, toks: Any) -> _ScalarText:
    text = toks[0]
    end = s.index(")", loc) + 1 if text.startswith("(") else loc + len(text)
    return _ScalarText(loc, end, text)


def _term_action(s: str, loc: int, toks: Any) -> _Term:
    items = list(toks)
    scalar = items.pop(0) if isinstance(items[0], _ScalarText) else None
    return _Term(loc, scalar, tuple(items))


def _build_grammar() -> Dict[str, ParserElement]:
    gen = Combine(Opt("~") + Literal("f") + Word(nums)).set_parse_action(_gen_action)
    bare = (
        Regex(r"\d*\.\d+i?|\d+\.\d*i?")
        | Regex(r"(?:\d+(?:/\d+)?)?i")
        | Regex(r"\d+(?:/\d+)?")
    )
    sign = one_of("+ -")
    paren = Combine(
        Literal("(") + Opt(sign) + bare + Opt(sign + bare) + Literal(")"),
        adjacent=False,
    )
    scalar = (paren | bare.copy()).set_parse_action(_scalar_action)
    wedges = gen + ZeroOrMore(Suppress("^") + gen)
    term = (Opt(scalar + Opt(Suppress("*"))) + wedges).set_parse_action(_term_action)
    # a sign commits to the term after it, so errors point past the sign
    terms = Opt(sign) + term + ZeroOrMore(sign - term)
    expr = (Literal("0") + StringEnd()) | (terms + StringEnd())
    header = Suppress(Keyword("generators")) + Word(nums) + StringEnd()
    definition = Suppress(Keyword("d")) + gen + Suppress("=") + expr
    return {"expr": expr, "header": header, "definition": definition}


_GRAMMAR = _build_grammar()


def parse_scalar(text: str) -> Scalar:
    """Gaussian rational from its ``.lie`` spelling.

    Raises:
        ValueError: For floats, zero denominators or malformed text
    """
    body = re.sub(r"\s+", "", text)
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body or "." in body:
        raise ValueError(f"Not an exact scalar: {text!r}")
    value = Scalar(0)
    for part in re.findall(r"[+-]?[^+-]+", body):
        sign = -1 if part.startswith("-") else 1
        part = part.lstrip("+-")
        if part.endswith("i"):
            magnitude = part[:-1] or "1"
            value = value + Scalar(0, sign * Fraction(magnitude))
        else:
            value = value + Scalar(sign * Fraction(part))
    return value


class _Source:
    """Maps line-local character positions to spans in the full text."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.lines = text.split("\n")
        self._starts: List[int] = []
        position = 0
        for line in self.lines:
            self._starts.append(position)
            position += len(line) + 1

    def span(self, lineno: int, start: int, end: Optional[int] = None) -> SourceSpan:
        base = self._starts[lineno - 1]
        end = start + 1 if end is None else max(end, start + 1)
        return SourceSpan(
            line=lineno,
            column=start + 1,
            start=len(self.text[: base + start].encode("utf-8")),
            end=len(self.text[: base + end].encode("utf-8")),
        )


def _strip_comment(line: str) -> str:
    index = line.find("#")
    return line if index < 0 else line[:index]


def _parse_line(
    element: ParserElement, line: str, source: _Source, lineno: int
) -> List[Any]:
    try:
        return list(element.parse_string(line, parse_all=True))
    except ParseBaseException as e:
        span = source.span(lineno, e.loc)
        raise ParseError(f"Syntax error: {e.msg}", span, "syntax") from e


def _term_form(
    term: _Term,
    m: int,
    source: _Source,
    lineno: int,
    warnings: Optional[List[LintWarning]],
) -> Form:
    coeff = ONE
    if term.scalar is not None:
        try:
            coeff = parse_scalar(term.scalar.text)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(
                f"Bad scalar {term.scalar.text!r}: {e}",
                source.span(lineno, term.scalar.start, term.scalar.end),
                "bad-scalar",
            ) from e
    result = Form.one(m).scale(coeff)
    for gen in term.generators:
        if not 1 <= gen.number <= m:
            tilde = "~" if gen.conjugate else ""
            raise ParseError(
                f"Unknown generator {tilde}f{gen.number} (m={m})",
                source.span(lineno, gen.start, gen.end),
                "unknown-generator",
            )
        result = result ^ Form.generator(m, gen.number - 1, gen.conjugate)
    if not result and coeff and warnings is not None:
        last = term.generators[-1]
        warnings.append(
            LintWarning(
                "Term wedges to zero (repeated generator)",
                source.span(lineno, term.start, last.end),
            )
        )
    return result


def _expr_form(
    tokens: List[Any],
    m: int,
    source: _Source,
    lineno: int,
    warnings: Optional[List[LintWarning]],
    degree: Optional[int] = None,
) -> Form:
    result = Form.zero(m)
    sign = 1
    for token in tokens:
        if token in ("+", "-"):
            sign = -1 if token == "-" else 1
        elif isinstance(token, _Term):
            if degree is not None and len(token.generators) != degree:
                last = token.generators[-1]
                count = len(token.generators)
                raise ParseError(
                    f"Expected a wedge of {degree} generators, got {count}",
                    source.span(lineno, token.start, last.end),
                    "degree-mismatch",
                )
            form = _term_form(token, m, source, lineno, warnings)
            result = result + form if sign > 0 else result - form
            sign = 1
    return result


def read_structure_file(text: str) -> ParsedStructureFile:
    """Parse ``.lie`` text into structure equations plus lint warnings.

    Raises:
        ParseError: On any syntax, scalar, generator, degree or duplicate error
    """
    source = _Source(text)
    m: Optional[int] = None
    diffs: Dict[int, Form] = {}
    warnings: List[LintWarning] = []
    for lineno, raw in enumerate(source.lines, start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        if m is None:
            tokens = _parse_line(_GRAMMAR["header"], line, source, lineno)
            m = int(tokens[0])
            try:
                check_generator_count(m)
            except GeneratorLimitError as e:
                column = line.index(tokens[0])
                span = source.span(lineno, column, column + len(tokens[0]))
                raise ParseError(str(e), span) from e
            continue
        tokens = _parse_line(_GRAMMAR["definition"], line, source, lineno)
        target: _Gen = tokens[0]
        target_span = source.span(lineno, target.start, target.end)
        if target.conjugate:
            raise ParseError(
                "Only d of f-generators may be defined", target_span, "syntax"
            )
        if not 1 <= target.number <= m:
            raise ParseError(
                f"Unknown generator f{target.number} (m={m})",
                target_span,
                "unknown-generator",
            )
        if target.number in diffs:
            raise ParseError(
                f"d f{target.number} is defined twice",
                target_span,
                "duplicate-definition",
            )
        diffs[target.number] = _expr_form(
            tokens[1:], m, source, lineno, warnings, degree=2
        )

    if m is None:
        raise ParseError(
            "Missing 'generators N' header", source.span(len(source.lines), 0), "syntax"
        )
    for warning in warnings:
        logger.warning(f"{warning.span}: {warning.message}")
    equations = StructureEquations(
        m, [diffs.get(k, Form.zero(m)) for k in range(1, m + 1)]
    )
    return ParsedStructureFile(equations=equations, warnings=warnings)


def parse_structure_file(text: str) -> StructureEquations:
    return read_structure_file(text).equations


def serialize_structure_file(eq: StructureEquations) -> str:
    """Canonical ``.lie`` text; zero differentials are left implicit."""
    lines = []
    if eq.name:
        lines.append(f"# {eq.name}")
    lines.append(f"generators {eq.m}")
    for index, form in enumerate(eq.diffs, start=1):
        if form:
            lines.append(f"d f{index} = {format_terms(form.sorted_terms())}")
    return "\n".join(lines) + "\n"


def parse_form_expr(text: str, m: int) -> Form:
    """A form of any degree, e.g. ``"~f4^~f2"`` or ``"f1^f2 - (1/2+i)*f3^~f1"``.

    Raises:
        ParseError: On malformed text or generators outside 1..m
    """
    source = _Source(text.replace("\n", " "))
    tokens = _parse_line(_GRAMMAR["expr"], source.text, source, 1)
    return _expr_form(tokens, m, source, 1, None)

import random
from fractions import Fraction
from pathlib import Path

import pytest

from src.models.forms import Form
from src.models.scalar import Scalar
from src.models.structure import StructureEquations
from src.services.examples import family_xn, iwasawa, kodaira, torus
from src.storage.lie_file import (
    ParseError,
    parse_form_expr,
    parse_scalar,
    parse_structure_file,
    read_structure_file,
    serialize_structure_file,
)

EXAMPLES = Path(__file__).parent.parent / "data" / "examples"


def f(m, k):
    return Form.generator(m, k - 1)


def g(m, k):
    return Form.generator(m, k - 1, conjugate=True)


class TestParseScalar:
    @pytest.mark.parametrize(
        "text, value",
        [
            ("3", Scalar(3)),
            ("-1/2", Scalar(Fraction(-1, 2))),
            ("i", Scalar(0, 1)),
            ("3/4i", Scalar(0, Fraction(3, 4))),
            ("(1/2+3/4i)", Scalar(Fraction(1, 2), Fraction(3, 4))),
            ("(1 - i)", Scalar(1, -1)),
        ],
    )
    def test_exact_values(self, text, value):
        assert parse_scalar(text) == value

    @pytest.mark.parametrize("text", ["1.5", "0.5i", ""])
    def test_rejects_inexact(self, text):
        with pytest.raises(ValueError):
            parse_scalar(text)


class TestReadStructureFile:
    def test_iwasawa(self):
        text = (EXAMPLES / "iwasawa.lie").read_text()
        assert parse_structure_file(text) == iwasawa()

    def test_kodaira(self):
        assert parse_structure_file((EXAMPLES / "kodaira.lie").read_text()) == kodaira()

    def test_comments_blank_lines_and_implicit_zeros(self):
        text = "# torus\n\ngenerators 2   # two\n\n"
        assert parse_structure_file(text) == torus(2)

    def test_scalars_and_conjugates(self):
        text = "generators 3\nd f3 = (1/2+i)*f1^~f2 - 3/4i f2^f1\n"
        eq = parse_structure_file(text)
        expected = (f(3, 1) ^ g(3, 2)).scale(Scalar(Fraction(1, 2), 1)) + (
            f(3, 1) ^ f(3, 2)
        ).scale(Scalar(0, Fraction(3, 4)))
        assert eq.diff(2) == expected

    def test_zero_right_hand_side(self):
        assert parse_structure_file("generators 1\nd f1 = 0\n") == torus(1)

    def test_lint_warning_for_repeated_generator(self, caplog):
        parsed = read_structure_file("generators 2\nd f2 = f1^f1\n")
        assert len(parsed.warnings) == 1
        warning = parsed.warnings[0]
        assert warning.span.line == 2
        assert warning.span.column == 8
        assert not parsed.equations.diff(1)
        assert "wedges to zero" in caplog.text


class TestParseErrors:
    def test_unknown_generator_span(self):
        with pytest.raises(ParseError) as excinfo:
            parse_structure_file("generators 2\nd f2 = f1^f3\n")
        error = excinfo.value
        assert error.kind == "unknown-generator"
        assert (error.span.line, error.span.column) == (2, 11)
        assert (error.span.start, error.span.end) == (23, 25)

    def test_float_scalar(self):
        with pytest.raises(ParseError) as excinfo:
            parse_structure_file("generators 2\nd f2 = 1.5*f1^~f1\n")
        assert excinfo.value.kind == "bad-scalar"
        assert excinfo.value.span.column == 8

    def test_degree_mismatch(self):
        with pytest.raises(ParseError) as excinfo:
            parse_structure_file("generators 3\nd f3 = f1 + f1^f2\n")
        assert excinfo.value.kind == "degree-mismatch"
        assert excinfo.value.span.column == 8

    def test_duplicate_definition(self):
        with pytest.raises(ParseError) as excinfo:
            parse_structure_file("generators 3\nd f3 = f1^f2\nd f3 = f1^~f2\n")
        assert excinfo.value.kind == "duplicate-definition"
        assert excinfo.value.span.line == 3

    @pytest.mark.parametrize(
        "text",
        [
            "d f1 = 0\n",
            "gens 2\n",
            "generators 2\nd ~f2 = f1^~f1\n",
            "generators 2\nd f2 = f1^\n",
            "generators 2\nd f2 f1^f1\n",
            "",
        ],
    )
    def test_syntax_errors(self, text):
        with pytest.raises(ParseError) as excinfo:
            parse_structure_file(text)
        assert excinfo.value.kind == "syntax"

    def test_doubled_sign_points_at_second_sign(self):
        with pytest.raises(ParseError) as excinfo:
            parse_structure_file("generators 3\nd f3 = f1^f2 + + f1^~f1\n")
        error = excinfo.value
        assert error.kind == "syntax"
        assert (error.span.line, error.span.column) == (2, 16)

    def test_too_many_generators(self):
        with pytest.raises(ParseError):
            parse_structure_file("generators 65\n")

    def test_message_includes_position(self):
        with pytest.raises(ParseError, match="line 2, column 11"):
            parse_structure_file("generators 2\nd f2 = f1^f3\n")


class TestSerialize:
    def test_x2_canonical_text(self):
        expected = (EXAMPLES / "x2.lie").read_text()
        assert serialize_structure_file(family_xn(2)) == expected

    def test_x2_lines(self):
        lines = serialize_structure_file(family_xn(2)).splitlines()
        assert lines[1:] == ["generators 4", "d f3 = -f1^~f1", "d f4 = f1^f2 - f1^~f1"]

    @pytest.mark.parametrize(
        "eq", [iwasawa(), kodaira(), torus(3), family_xn(3)], ids=lambda eq: eq.name
    )
    def test_reads_back(self, eq):
        assert parse_structure_file(serialize_structure_file(eq)) == eq

    @pytest.mark.parametrize("seed", range(20))
    def test_random_equations_read_back(self, seed):
        rng = random.Random(seed)
        m = rng.randint(1, 4)
        generators = [f(m, k) for k in range(1, m + 1)]
        generators += [g(m, k) for k in range(1, m + 1)]
        diffs = []
        for _ in range(m):
            form = Form.zero(m)
            for _ in range(rng.randint(0, 3)):
                a, b = rng.sample(generators, 2)
                coeff = Scalar(
                    Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
                    Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
                )
                form = form + (a ^ b).scale(coeff)
            diffs.append(form)
        eq = StructureEquations(m, diffs, name=f"random-{seed}")
        text = serialize_structure_file(eq)
        assert parse_structure_file(text) == eq


class TestParseFormExpr:
    def test_expression(self):
        form = parse_form_expr("f1^f2 - (1/2+i)*f3^~f1", 3)
        coefficient = Scalar(Fraction(1, 2), 1)
        expected = (f(3, 1) ^ f(3, 2)) - (f(3, 3) ^ g(3, 1)).scale(coefficient)
        assert form == expected

    def test_any_degree(self):
        assert parse_form_expr("~f4^~f2", 4) == -(g(4, 2) ^ g(4, 4))
        assert parse_form_expr("~f3", 4) == g(4, 3)
        assert parse_form_expr("0", 2) == Form.zero(2)

    def test_unknown_generator(self):
        with pytest.raises(ParseError) as excinfo:
            parse_form_expr("f1^f5", 4)
        assert excinfo.value.kind == "unknown-generator"

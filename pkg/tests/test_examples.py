import pytest

from src.exceptions import FamilyParameterError, UnknownExampleError
from src.models.forms import Form
from src.services.examples import (
    ExampleFactory,
    builtin_example,
    dx_form,
    family_xn,
    iwasawa,
    omega_form,
    torus,
)


def test_registered_names():
    assert ExampleFactory.names() == ["iwasawa", "kodaira", "torus", "xn"]


def test_builtin_by_name_is_case_insensitive():
    assert builtin_example("Iwasawa") == iwasawa()
    assert builtin_example("torus", m=3) == torus(3)
    assert builtin_example("xn", n=2) == family_xn(2)


def test_unknown_example():
    with pytest.raises(UnknownExampleError, match="known: iwasawa"):
        builtin_example("hopf")


@pytest.mark.parametrize(
    "name, kwargs", [("torus", {}), ("torus", {"m": 0}), ("xn", {"n": "2"})]
)
def test_bad_parameters(name, kwargs):
    with pytest.raises(FamilyParameterError):
        builtin_example(name, **kwargs)


def test_family_needs_n_at_least_two():
    with pytest.raises(FamilyParameterError):
        family_xn(1)


class TestFamilyXn:
    def test_generator_order(self):
        n = 3
        assert dx_form(n, 2) == Form.generator(6, 1)
        assert omega_form(n, 1) == Form.generator(6, 3)
        assert omega_form(n, 3, conjugate=True) == Form.generator(6, 5, conjugate=True)

    def test_x2_equations(self):
        eq = family_xn(2)
        assert eq.m == 4
        assert [str(form) for form in eq.diffs] == [
            "0",
            "0",
            "-f1^~f1",
            "f1^f2 - f1^~f1",
        ]

    def test_x3_equations(self):
        eq = family_xn(3)
        assert str(eq.diff(3)) == "-f1^~f1"
        assert str(eq.diff(4)) == "f1^f2 - f1^~f1"
        assert str(eq.diff(5)) == "f1^f3 - f1^~f2"

    def test_torus_is_abelian(self):
        assert all(not form for form in torus(4).diffs)

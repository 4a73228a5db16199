"""Built-in structure equations and the factory that creates them by name."""

from typing import Any, Callable, Dict, List, Optional

from src.exceptions import FamilyParameterError, UnknownExampleError
from src.models.forms import Form, wedge
from src.models.structure import StructureEquations


def family_xn(n: int) -> StructureEquations:
    """Structure equations of the 2n-dimensional family X_n.

    Generators are ordered dx_1..dx_n, w_1..w_n, i.e. f_k = dx_k and
    f_{n+k} = w_k, so that

        d(dx_k) = 0
        d w_1   = ~dx_1 ^ dx_1
        d w_k   = -dx_k ^ dx_1 - dx_1 ^ ~dx_{k-1}     (k >= 2)
    """
    if n < 2:
        raise FamilyParameterError(f"X_n is defined for n >= 2, got n={n}")
    m = 2 * n

    def dx(k: int, conjugate: bool = False) -> Form:
        return Form.generator(m, k - 1, conjugate)

    diffs: List[Form] = [Form.zero(m) for _ in range(n)]
    diffs.append(wedge(dx(1, True), dx(1)))
    for k in range(2, n + 1):
        diffs.append(-wedge(dx(k), dx(1)) - wedge(dx(1), dx(k - 1, True)))
    return StructureEquations(m, diffs, name=f"xn-{n}")


def dx_form(n: int, k: int, conjugate: bool = False) -> Form:
    """dx_k (or its conjugate) inside family_xn(n)."""
    return Form.generator(2 * n, k - 1, conjugate)


def omega_form(n: int, k: int, conjugate: bool = False) -> Form:
    """w_k (or its conjugate) inside family_xn(n)."""
    return Form.generator(2 * n, n + k - 1, conjugate)


def torus(m: int) -> StructureEquations:
    """Abelian Lie algebra: every differential vanishes."""
    return StructureEquations(m, [Form.zero(m) for _ in range(m)], name=f"torus-{m}")


def iwasawa() -> StructureEquations:
    """Complex Heisenberg group: d f3 = -f1 ^ f2."""
    f1, f2 = Form.generator(3, 0), Form.generator(3, 1)
    return StructureEquations(
        3, [Form.zero(3), Form.zero(3), -wedge(f1, f2)], name="iwasawa"
    )


def kodaira() -> StructureEquations:
    """Primary Kodaira surface: d f2 = f1 ^ ~f1."""
    f1, g1 = Form.generator(2, 0), Form.generator(2, 0, conjugate=True)
    return StructureEquations(2, [Form.zero(2), wedge(f1, g1)], name="kodaira")


def _require_positive(name: str) -> Callable[[Dict[str, Any]], None]:
    def validator(kwargs: Dict[str, Any]) -> None:
        value = kwargs.get(name)
        if not isinstance(value, int) or value < 1:
            raise FamilyParameterError(f"Parameter '{name}' must be a positive integer")

    return validator


class ExampleFactory:
    """Factory class to create built-in structure equations by name."""

    _builders: Dict[str, Callable[..., StructureEquations]] = {}
    _validators: Dict[str, Callable[[Dict[str, Any]], None]] = {}

    @classmethod
    def register(
        cls,
        name: str,
        builder: Callable[..., StructureEquations],
        validator: Optional[Callable[[Dict[str, Any]], None]] = None,
    ) -> None:
        """Register a builder.

        Args:
            name: The identifier for this example
            builder: Callable returning the structure equations
            validator: Optional function to validate keyword parameters
        """
        name = name.lower()
        cls._builders[name] = builder
        if validator is not None:
            cls._validators[name] = validator

    @classmethod
    def names(cls) -> List[str]:
        return sorted(cls._builders)

    @classmethod
    def create(cls, name: str, **kwargs: Any) -> StructureEquations:
        """Create the structure equations of a registered example.

        Raises:
            UnknownExampleError: If the name is not registered
            FamilyParameterError: If the parameters are invalid
        """
        name = name.lower()
        if name not in cls._builders:
            raise UnknownExampleError(
                f"Unknown example: {name} (known: {', '.join(cls.names())})"
            )
        if name in cls._validators:
            cls._validators[name](kwargs)
        return cls._builders[name](**kwargs)


ExampleFactory.register("torus", torus, _require_positive("m"))
ExampleFactory.register("iwasawa", iwasawa)
ExampleFactory.register("kodaira", kodaira)
ExampleFactory.register("xn", family_xn, _require_positive("n"))


def builtin_example(name: str, **kwargs: Any) -> StructureEquations:
    return ExampleFactory.create(name, **kwargs)

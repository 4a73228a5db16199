from typing import Iterator, List, Sequence, Tuple

from pydantic import BaseModel, Field

from src.exceptions import AmbientMismatchError
from src.models.forms import Form, check_generator_count, conjugate


class StructureEquations:
    """Complex dimension m and the 2-forms d(f_i) for the (1,0)-generators.

    This is the whole input datum: the differential of the conjugate
    generators is forced by conjugation.
    """

    __slots__ = ("_m", "_diffs", "_conjugates", "name")

    def __init__(self, m: int, diffs: Sequence[Form], name: str = "") -> None:
        check_generator_count(m)
        if len(diffs) != m:
            raise AmbientMismatchError(f"Expected {m} differentials, got {len(diffs)}")
        for index, form in enumerate(diffs):
            if form.m != m:
                raise AmbientMismatchError(
                    f"d f{index + 1} lives over m={form.m}, expected m={m}"
                )
            if form and form.degrees() != [2]:
                raise AmbientMismatchError(
                    f"d f{index + 1} must be a 2-form, has degrees {form.degrees()}"
                )
        self._m = m
        self._diffs: Tuple[Form, ...] = tuple(diffs)
        self._conjugates: Tuple[Form, ...] = tuple(conjugate(f) for f in diffs)
        self.name = name

    @property
    def m(self) -> int:
        return self._m

    @property
    def diffs(self) -> Tuple[Form, ...]:
        return self._diffs

    def diff(self, index: int, conjugated: bool = False) -> Form:
        """d of f_{index+1}, or of ~f_{index+1} when ``conjugated``."""
        return self._conjugates[index] if conjugated else self._diffs[index]

    def __iter__(self) -> Iterator[Form]:
        return iter(self._diffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StructureEquations):
            return NotImplemented
        return self._m == other._m and self._diffs == other._diffs

    def __hash__(self) -> int:
        return hash((self._m, self._diffs))

    def __repr__(self) -> str:
        lines = ", ".join(f"d f{i + 1} = {f}" for i, f in enumerate(self._diffs) if f)
        return f"StructureEquations(m={self._m}{', ' if lines else ''}{lines})"


class GeneratorDiagnostic(BaseModel):
    index: int
    check: str
    form: str


class ValidationReport(BaseModel):
    """Outcome of the Jacobi, integrability and nilpotency checks."""

    m: int
    jacobi_ok: bool
    integrable: bool
    nilpotent: bool
    nilpotency_steps: int = 0
    offending_generators: List[GeneratorDiagnostic] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Jacobi and integrability hold, so the double complex is meaningful."""
        return self.jacobi_ok and self.integrable

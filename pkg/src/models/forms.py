"""Bigraded exterior algebra over Q(i) on m (1,0)-generators and their conjugates.

A basis monomial is a pair of bitmasks ``(holo, anti)``: bit k of ``holo``
stands for the (1,0)-generator f_{k+1}, bit k of ``anti`` for its conjugate
~f_{k+1}. The canonical order of factors is generator index ascending with
every holomorphic factor before every anti-holomorphic one; all signs are
relative to that order.
"""

from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Tuple

from src.config import get_settings
from src.exceptions import (
    AmbientMismatchError,
    GeneratorLimitError,
    NonHomogeneousFormError,
)
from src.models.scalar import ONE, ZERO, Scalar, ScalarLike

MAX_GENERATORS = 64


def _bits(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _inversions(left: int, right: int) -> int:
    """Number of pairs (i in left, j in right) with i > j."""
    count = 0
    for j in _bits(right):
        count += (left >> (j + 1)).bit_count()
    return count


class Monomial(NamedTuple):
    holo: int
    anti: int

    @property
    def p(self) -> int:
        return self.holo.bit_count()

    @property
    def q(self) -> int:
        return self.anti.bit_count()

    @property
    def bidegree(self) -> Tuple[int, int]:
        return self.holo.bit_count(), self.anti.bit_count()

    @property
    def degree(self) -> int:
        return self.holo.bit_count() + self.anti.bit_count()

    def holo_indices(self) -> List[int]:
        return _bits(self.holo)

    def anti_indices(self) -> List[int]:
        return _bits(self.anti)

    def sort_key(self, m: int) -> Tuple[int, ...]:
        """Canonical factor sequence, anti-holomorphic slot k encoded as m + k."""
        return tuple(_bits(self.holo)) + tuple(m + k for k in _bits(self.anti))

    def label(self) -> str:
        """Text such as ``f1^f3^~f2``; the empty monomial is ``1``."""
        names = [f"f{k + 1}" for k in _bits(self.holo)]
        names += [f"~f{k + 1}" for k in _bits(self.anti)]
        return "^".join(names) if names else "1"


UNIT = Monomial(0, 0)


def monomial_wedge(a: Monomial, b: Monomial) -> Optional[Tuple[int, Monomial]]:
    """Wedge of two basis monomials as ``(sign, monomial)``, None if it vanishes."""
    if a.holo & b.holo or a.anti & b.anti:
        return None
    # a_h a_a b_h b_a -> (a_h b_h)(a_a b_a): b_h crosses a_a, then sort each block.
    swaps = a.anti.bit_count() * b.holo.bit_count()
    swaps += _inversions(a.holo, b.holo) + _inversions(a.anti, b.anti)
    return (-1 if swaps & 1 else 1), Monomial(a.holo | b.holo, a.anti | b.anti)


def check_generator_count(m: int) -> int:
    limit = min(MAX_GENERATORS, get_settings().max_generators)
    if not 0 <= m <= limit:
        raise GeneratorLimitError(
            f"Generator count {m} outside supported range 0..{limit}"
        )
    return m


class Form:
    """Immutable sparse combination of basis monomials with Scalar coefficients.

    A form may mix bidegrees (an element of the total complex); homogeneity is
    queried, not enforced. Zero coefficients are never stored, so equality of
    forms is equality of their term maps.
    """

    __slots__ = ("_m", "_terms", "_hash")

    def __init__(
        self, m: int, terms: Optional[Mapping[Monomial, ScalarLike]] = None
    ) -> None:
        check_generator_count(m)
        clean: Dict[Monomial, Scalar] = {}
        limit = 1 << m
        for mono, coeff in (terms or {}).items():
            if mono.holo >= limit or mono.anti >= limit:
                raise AmbientMismatchError(f"Monomial {mono} outside m={m}")
            value = Scalar.coerce(coeff)
            if value:
                clean[Monomial(*mono)] = value
        self._m = m
        self._terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def _trusted(cls, m: int, terms: Dict[Monomial, Scalar]) -> "Form":
        obj = object.__new__(cls)
        obj._m = m
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, m: int) -> "Form":
        return cls(m)

    @classmethod
    def one(cls, m: int) -> "Form":
        return cls(m, {UNIT: ONE})

    @classmethod
    def generator(cls, m: int, index: int, conjugate: bool = False) -> "Form":
        """The 1-form f_{index+1} (or ~f_{index+1} when ``conjugate``)."""
        if not 0 <= index < m:
            raise AmbientMismatchError(f"Generator index {index} outside m={m}")
        mono = Monomial(0, 1 << index) if conjugate else Monomial(1 << index, 0)
        return cls._trusted(m, {mono: ONE})

    @classmethod
    def monomial(cls, m: int, mono: Monomial, coeff: ScalarLike = ONE) -> "Form":
        return cls(m, {mono: coeff})

    @property
    def m(self) -> int:
        return self._m

    @property
    def terms(self) -> Mapping[Monomial, Scalar]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Scalar]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, mono: Monomial) -> Scalar:
        return self._terms.get(mono, ZERO)

    def bidegrees(self) -> List[Tuple[int, int]]:
        return sorted({mono.bidegree for mono in self._terms})

    def is_bihomogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def bidegree(self) -> Tuple[int, int]:
        """Bidegree of a nonzero bihomogeneous form."""
        degrees = self.bidegrees()
        if len(degrees) != 1:
            raise NonHomogeneousFormError(
                f"Form has bidegrees {degrees}, expected exactly one"
            )
        return degrees[0]

    def degrees(self) -> List[int]:
        return sorted({mono.degree for mono in self._terms})

    def sorted_terms(self) -> List[Tuple[Monomial, Scalar]]:
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key(self._m))

    def _check(self, other: "Form") -> None:
        if self._m != other._m:
            raise AmbientMismatchError(
                f"Forms over m={self._m} and m={other._m} cannot be combined"
            )

    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            value = out.get(mono)
            value = coeff if value is None else value + coeff
            if value:
                out[mono] = value
            else:
                out.pop(mono, None)
        return Form._trusted(self._m, out)

    def __neg__(self) -> "Form":
        return Form._trusted(self._m, {mono: -c for mono, c in self._terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: ScalarLike) -> "Form":
        value = Scalar.coerce(factor)
        if not value:
            return Form.zero(self._m)
        terms = {mono: c * value for mono, c in self._terms.items()}
        return Form._trusted(self._m, terms)

    def __mul__(self, factor: ScalarLike) -> "Form":
        if isinstance(factor, Form):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self._m == other._m and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._m, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Form(m={self._m}, {self})"

    def __str__(self) -> str:
        return format_terms(self.sorted_terms())


def format_term(mono: Monomial, coeff: Scalar) -> str:
    """Single signed term such as ``f1^f2``, ``-f1^~f1`` or ``(1/2+i)*f3``."""
    label = mono.label()
    if mono == UNIT:
        return str(coeff)
    if coeff == 1:
        return label
    if coeff == -1:
        return f"-{label}"
    return f"{coeff}*{label}"


def format_terms(terms: Iterable[Tuple[Monomial, Scalar]]) -> str:
    text = ""
    for mono, coeff in terms:
        term = format_term(mono, coeff)
        if not text:
            text = term
        elif term.startswith("-"):
            text += f" - {term[1:]}"
        else:
            text += f" + {term}"
    return text or "0"


def wedge(a: Form, b: Form) -> Form:
    """Exterior product, bilinear extension of :func:`monomial_wedge`."""
    a._check(b)
    out: Dict[Monomial, Scalar] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            product = monomial_wedge(ma, mb)
            if product is None:
                continue
            sign, mono = product
            coeff = ca * cb
            if sign < 0:
                coeff = -coeff
            value = out.get(mono)
            value = coeff if value is None else value + coeff
            if value:
                out[mono] = value
            else:
                out.pop(mono, None)
    return Form._trusted(a.m, out)


def wedge_all(m: int, factors: Iterable[Form]) -> Form:
    result = Form.one(m)
    for factor in factors:
        result = wedge(result, factor)
    return result


def conjugate(a: Form) -> Form:
    """Complex conjugation: swap masks, conjugate coefficients, sign (-1)^(p*q)."""
    out: Dict[Monomial, Scalar] = {}
    for mono, coeff in a._terms.items():
        value = coeff.conj()
        if (mono.p * mono.q) & 1:
            value = -value
        out[Monomial(mono.anti, mono.holo)] = value
    return Form._trusted(a.m, out)


def bigraded_component(a: Form, p: int, q: int) -> Form:
    """Sub-sum of the terms of bidegree exactly (p, q)."""
    return Form._trusted(
        a.m, {mono: c for mono, c in a._terms.items() if mono.bidegree == (p, q)}
    )


def bigraded_components(a: Form) -> Dict[Tuple[int, int], Form]:
    parts: Dict[Tuple[int, int], Dict[Monomial, Scalar]] = {}
    for mono, coeff in a._terms.items():
        parts.setdefault(mono.bidegree, {})[mono] = coeff
    return {key: Form._trusted(a.m, terms) for key, terms in sorted(parts.items())}

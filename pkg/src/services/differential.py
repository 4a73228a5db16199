"""Exterior differential induced by structure equations, and input validation."""

import logging
from typing import Dict, List, Tuple

from src.exceptions import NonHomogeneousFormError, AmbientMismatchError
from src.linalg.sparse import SparseMatrix, Vector
from src.linalg.subspace import Subspace, kernel
from src.models.forms import Form, Monomial, bigraded_component, monomial_wedge, wedge
from src.models.scalar import Scalar
from src.models.structure import (
    GeneratorDiagnostic,
    StructureEquations,
    ValidationReport,
)

logger = logging.getLogger(__name__)


def _factors(mono: Monomial) -> List[Tuple[int, bool]]:
    """Generators of a monomial in canonical order as (index, conjugated)."""
    return [(k, False) for k in mono.holo_indices()] + [
        (k, True) for k in mono.anti_indices()
    ]


def d_monomial(eq: StructureEquations, mono: Monomial) -> Dict[Monomial, Scalar]:
    """d of a basis monomial by the Leibniz rule.

    d(g_1 ^ ... ^ g_k) = sum_t (-1)^t g_1 ^ ... ^ d(g_t) ^ ... ^ g_k
    """
    out: Dict[Monomial, Scalar] = {}
    factors = _factors(mono)
    for t, (index, conjugated) in enumerate(factors):
        diff = eq.diff(index, conjugated)
        if not diff:
            continue
        prefix_holo = prefix_anti = 0
        for k, conj in factors[:t]:
            if conj:
                prefix_anti |= 1 << k
            else:
                prefix_holo |= 1 << k
        bit = 1 << index
        suffix = Monomial(
            mono.holo & ~prefix_holo & ~(0 if conjugated else bit),
            mono.anti & ~prefix_anti & ~(bit if conjugated else 0),
        )
        prefix = Monomial(prefix_holo, prefix_anti)
        for term, coeff in diff:
            left = monomial_wedge(prefix, term)
            if left is None:
                continue
            right = monomial_wedge(left[1], suffix)
            if right is None:
                continue
            sign = left[0] * right[0] * (-1 if t & 1 else 1)
            value = coeff if sign > 0 else -coeff
            target = right[1]
            current = out.get(target)
            value = value if current is None else current + value
            if value:
                out[target] = value
            else:
                out.pop(target, None)
    return out


def apply_d(eq: StructureEquations, form: Form) -> Form:
    """Exterior derivative of a form; linear extension of :func:`d_monomial`."""
    if form.m != eq.m:
        raise AmbientMismatchError(f"Form over m={form.m}, equations over m={eq.m}")
    out: Dict[Monomial, Scalar] = {}
    for mono, coeff in form:
        for target, value in d_monomial(eq, mono).items():
            current = out.get(target)
            update = value * coeff
            update = update if current is None else current + update
            if update:
                out[target] = update
            else:
                out.pop(target, None)
    return Form(eq.m, out)


def _bihomogeneous_degree(form: Form) -> Tuple[int, int]:
    if not form.is_bihomogeneous():
        raise NonHomogeneousFormError(
            f"del/del-bar need a bihomogeneous form, got bidegrees {form.bidegrees()}"
        )
    return form.bidegree()


def del_(eq: StructureEquations, form: Form) -> Form:
    """The (1,0)-part of d on a bihomogeneous form."""
    if not form:
        return Form.zero(eq.m)
    p, q = _bihomogeneous_degree(form)
    return bigraded_component(apply_d(eq, form), p + 1, q)


def del_bar(eq: StructureEquations, form: Form) -> Form:
    """The (0,1)-part of d on a bihomogeneous form."""
    if not form:
        return Form.zero(eq.m)
    p, q = _bihomogeneous_degree(form)
    return bigraded_component(apply_d(eq, form), p, q + 1)


def one_form_basis(m: int) -> List[Form]:
    """f_1..f_m followed by ~f_1..~f_m."""
    return [Form.generator(m, k) for k in range(m)] + [
        Form.generator(m, k, conjugate=True) for k in range(m)
    ]


def _two_form_index(m: int) -> Dict[Monomial, int]:
    one_forms = [Monomial(1 << k, 0) for k in range(m)] + [
        Monomial(0, 1 << k) for k in range(m)
    ]
    index: Dict[Monomial, int] = {}
    for i, a in enumerate(one_forms):
        for b in one_forms[i + 1:]:
            product = monomial_wedge(a, b)
            if product is not None:
                index.setdefault(product[1], len(index))
    return index


def _to_vector(form: Form, index: Dict[Monomial, int]) -> Vector:
    return {index[mono]: coeff for mono, coeff in form}


def _vector_to_one_form(m: int, vector: Vector, basis: List[Form]) -> Form:
    result = Form.zero(m)
    for k, coeff in vector.items():
        result = result + basis[k].scale(coeff)
    return result


def descending_chain(eq: StructureEquations) -> List[int]:
    """Dimensions of V_0 ⊆ V_1 ⊆ ... inside the 2m-dimensional space of 1-forms.

    V_0 = {a : da = 0} and V_{k+1} = {a : da ∈ Λ²V_k}; the chain stops once it
    is stationary, after at most 2m steps.
    """
    m = eq.m
    basis = one_form_basis(m)
    two_index = _two_form_index(m)
    rows = len(two_index)
    d_columns = [_to_vector(apply_d(eq, form), two_index) for form in basis]

    dims: List[int] = []
    wedge_space = Subspace.zero(rows)
    previous = -1
    for _ in range(2 * m + 1):
        columns = d_columns + [
            {i: -v for i, v in vector.items()} for vector in wedge_space.vectors()
        ]
        system = SparseMatrix.from_columns(columns, rows)
        solutions = kernel(system).vectors()
        projected = [{k: v for k, v in s.items() if k < 2 * m} for s in solutions]
        level = Subspace.span(2 * m, projected)
        dims.append(level.dim)
        if level.dim == previous or level.dim == 2 * m:
            break
        previous = level.dim
        level_forms = [
            _vector_to_one_form(m, vector, basis) for vector in level.vectors()
        ]
        wedges = []
        for i, a in enumerate(level_forms):
            for b in level_forms[i + 1:]:
                wedges.append(_to_vector(wedge(a, b), two_index))
        wedge_space = Subspace.span(rows, wedges)
    return dims


def validate(eq: StructureEquations) -> ValidationReport:
    """Check d² = 0 (Jacobi), absence of (0,2)-parts, and nilpotency.

    Problems are reported, not raised.
    """
    diagnostics: List[GeneratorDiagnostic] = []
    jacobi_ok = True
    integrable = True
    for index, diff in enumerate(eq.diffs):
        square = apply_d(eq, diff)
        if square:
            jacobi_ok = False
            diagnostics.append(
                GeneratorDiagnostic(index=index + 1, check="jacobi", form=str(square))
            )
        bad = bigraded_component(diff, 0, 2)
        if bad:
            integrable = False
            diagnostics.append(
                GeneratorDiagnostic(
                    index=index + 1, check="integrability", form=str(bad)
                )
            )

    chain = descending_chain(eq) if eq.m else [0]
    nilpotent = chain[-1] == 2 * eq.m
    if jacobi_ok and integrable and not nilpotent:
        logger.warning(
            f"Structure equations are not nilpotent (chain {chain}); "
            "pages are still computed but have no nilmanifold interpretation"
        )
    report = ValidationReport(
        m=eq.m,
        jacobi_ok=jacobi_ok,
        integrable=integrable,
        nilpotent=nilpotent,
        nilpotency_steps=len(chain),
        offending_generators=diagnostics,
    )
    logger.debug(f"Validated m={eq.m}: {report}")
    return report

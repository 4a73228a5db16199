"""Explicit zig-zag on X_n and the check of d_n[beta_1] = [dx_1 ^ ... ^ dx_n] != 0.

Chain (1-based as beta_1..beta_n, stored as chain index 0..n-1):

    beta_1 = ~w_1 ^ ~dx_2 ^ ... ^ ~dx_{n-1}
    beta_k = dx_2 ^ ... ^ dx_{k-1} ^ w_k ^ ~dx_k ^ ... ^ ~dx_{n-1}    (k = 2..n)

Every check runs in total degrees n-1, n and n+1 only, so n = 4 (an
algebra with 2^16 basis monomials) stays cheap.

The chain relations hold exactly, but the target class does not survive:
(w_2 - w_1) ^ dx_3 ^ ... ^ dx_n is del-bar closed with del equal to
dx_1 ^ ... ^ dx_n, so that class is already zero on E_2 and the chain
extends one step further. ``verify_xn`` reports this rather than assuming
the nonvanishing.
"""

import logging
from typing import Dict, List, Optional

from src.exceptions import (
    AmbientMismatchError,
    FamilyParameterError,
    InvariantViolationError,
    ZigZagExtensionError,
)
from src.models.forms import Form, wedge_all
from src.models.reports import XnVerification, ZigZag
from src.models.structure import StructureEquations
from src.services.differential import del_, del_bar
from src.services.double_complex import build_double_complex
from src.services.examples import dx_form, family_xn, omega_form
from src.services.spectral import FrolicherSpectralSequence
from src.services.zigzag import find_zigzag, verify_zigzag

logger = logging.getLogger(__name__)


def _check_n(n: int) -> None:
    if n < 2:
        raise FamilyParameterError(f"X_n is defined for n >= 2, got n={n}")


def witness_chain(n: int) -> List[Form]:
    """beta_1..beta_n of bidegrees (0,n-1), (1,n-2), ..., (n-1,0)."""
    _check_n(n)
    m = 2 * n
    chain = [
        wedge_all(
            m,
            [omega_form(n, 1, conjugate=True)]
            + [dx_form(n, j, conjugate=True) for j in range(2, n)],
        )
    ]
    for k in range(2, n + 1):
        factors = (
            [dx_form(n, j) for j in range(2, k)]
            + [omega_form(n, k)]
            + [dx_form(n, j, conjugate=True) for j in range(k, n)]
        )
        chain.append(wedge_all(m, factors))
    return chain


def top_form(n: int) -> Form:
    """dx_1 ^ ... ^ dx_n, a class of E_n^{n,0}."""
    _check_n(n)
    return wedge_all(2 * n, [dx_form(n, j) for j in range(1, n + 1)])


def top_primitive(n: int) -> Form:
    """(w_2 - w_1) ^ dx_3 ^ ... ^ dx_n, del-bar closed with del = :func:`top_form`."""
    _check_n(n)
    return wedge_all(
        2 * n,
        [omega_form(n, 2) - omega_form(n, 1)]
        + [dx_form(n, j) for j in range(3, n + 1)],
    )


def _span_label(name: str, lo: int, hi: int) -> str:
    """``dx_2``, ``dx_2^dx_3`` or ``dx_2^...^dx_5`` for the indices lo..hi."""
    if hi - lo > 1:
        return f"{name}_{lo}^...^{name}_{hi}"
    return "^".join(f"{name}_{j}" for j in range(lo, hi + 1))


def chain_relations(eq: StructureEquations, n: int) -> Dict[str, bool]:
    """The displayed relations of the chain, each checked as a Form equality."""
    chain = witness_chain(n)
    relations: Dict[str, bool] = {
        "dbar beta_1 = 0": not del_bar(eq, chain[0]),
        f"del beta_{n} = dx_1^...^dx_{n}": del_(eq, chain[-1]) == top_form(n),
        "del beta_1 = -dbar beta_2": del_(eq, chain[0]) == -del_bar(eq, chain[1]),
    }
    for k in range(2, n):
        sign = -1 if k & 1 else 1
        expected = wedge_all(
            2 * n,
            [dx_form(n, j) for j in range(2, k + 1)]
            + [dx_form(n, 1)]
            + [dx_form(n, j, conjugate=True) for j in range(k, n)],
        ) * sign
        dbar = del_bar(eq, chain[k])
        previous = del_(eq, chain[k - 1])
        relations[f"dbar beta_{k + 1} = -del beta_{k}"] = dbar == -previous
        label = f"{_span_label('dx', 2, k)}^dx_1^{_span_label('~dx', k, n - 1)}"
        relations[f"dbar beta_{k + 1} = (-1)^{k} {label}"] = dbar == expected
    return relations


def verify_xn(n: int, eq: Optional[StructureEquations] = None) -> XnVerification:
    """Check the explicit chain on X_n and whether d_n[beta_1] != 0.

    The target class is [dx_1 ^ ... ^ dx_n] in E_n^{n,0}.

    ``eq`` replaces the generated structure equations (it must have m = 2n);
    the explicit chain is still the one written for X_n.

    Raises:
        StructureValidationError: If ``eq`` fails Jacobi or integrability
    """
    _check_n(n)
    if eq is None:
        eq = family_xn(n)
    if eq.m != 2 * n:
        raise AmbientMismatchError(
            f"verify needs m = {2 * n} generators, got m = {eq.m}"
        )

    dc = build_double_complex(eq)
    chain = witness_chain(n)
    zigzag = ZigZag(start=(0, n - 1), chain=tuple(chain), terminal=del_(eq, chain[-1]))
    check = verify_zigzag(dc, zigzag)
    relations = chain_relations(eq, n)
    top = top_form(n)
    result = XnVerification(
        n=n,
        chain_valid=check.ok,
        violated_index=check.violated_index,
        relations=relations,
        terminal_matches=zigzag.terminal == top,
    )
    if not check.ok:
        logger.warning(
            f"Witness chain fails at index {check.violated_index}: {check.message}"
        )
        return result

    sequence = FrolicherSpectralSequence(dc)
    start_vector = dc.form_to_vector(zigzag.total(), n - 1)
    top_vector = dc.form_to_vector(top, n)
    try:
        result.start_class_nonzero = sequence.class_is_nonzero(
            n, 0, n - 1, start_vector
        )
        result.image_class_nonzero = sequence.class_is_nonzero(n, n, n, top_vector)
    except InvariantViolationError as e:
        logger.warning(f"Witness is not a page-{n} cycle: {e}")
        return result
    if not result.image_class_nonzero:
        result.top_dies_at = next(
            r
            for r in range(1, n + 1)
            if sequence.boundaries(r, n, n).contains(top_vector)
        )
    result.source_dim = sequence.entry_dim(n, 0, n - 1)
    result.target_dim = sequence.entry_dim(n, n, 0)

    try:
        find_zigzag(dc, chain[0], n + 1)
    except ZigZagExtensionError as e:
        result.lives_to = e.lives_to
        result.not_extendable = e.lives_to == n
    else:
        result.lives_to = n + 1
    logger.info(
        f"X_{n}: E_{n}^{{0,{n - 1}}} has dim {result.source_dim}, ok={result.ok}"
    )
    return result

"""Zig-zags: chains beta_0, ..., beta_{r-1} certifying that [beta_0] lives to E_r."""

import logging
from typing import List, Optional, Tuple

from src.exceptions import NotACocycleError, ZigZagExtensionError
from src.linalg.sparse import Vector, solve
from src.models.forms import Form, bigraded_component
from src.models.reports import ZigZag, ZigZagCheck
from src.services.differential import del_, del_bar
from src.services.double_complex import DoubleComplex

logger = logging.getLogger(__name__)


def _start_bidegree(beta0: Form, start: Optional[Tuple[int, int]]) -> Tuple[int, int]:
    if beta0:
        bidegree = beta0.bidegree()
        if start is not None and tuple(start) != bidegree:
            raise NotACocycleError(
                f"Start form has bidegree {bidegree}, not {tuple(start)}"
            )
        return bidegree
    return tuple(start) if start is not None else (0, 0)  # type: ignore[return-value]


def _solve_step(dc: DoubleComplex, previous: Form, p: int, q: int) -> Optional[Form]:
    """beta in A^{p,q} with del-bar beta = -del previous, or None."""
    rhs = -del_(dc.eq, previous)
    if not dc.in_range(p, q):
        return Form.zero(dc.m) if not rhs else None
    solution = solve(dc.del_bar_matrix(p, q), dc.block_vector(rhs))
    if solution is None:
        return None
    return dc.block_form(p, q, solution)


def _solve_jointly(
    dc: DoubleComplex, beta0: Form, p: int, n: int, count: int
) -> Optional[List[Form]]:
    """beta_1..beta_count solved together with beta_0 held fixed.

    The unknowns are the K^n blocks p+1..p+count and the equations are the
    K^{n+1} blocks p+1..p+count of d(beta_0 + ... + beta_count) = 0.
    """
    columns: List[int] = []
    rows: List[int] = []
    for i in range(p + 1, p + count + 1):
        columns.extend(dc.block_indices(n, i))
        rows.extend(dc.block_indices(n + 1, i))
    image = dc.apply_total(n, dc.form_to_vector(beta0, n))
    row_position = {row: k for k, row in enumerate(rows)}
    rhs: Vector = {row_position[i]: -v for i, v in image.items() if i in row_position}
    if not columns:
        return [Form.zero(dc.m)] * count if not rhs else None
    solution = solve(dc.total_matrix(n).submatrix(rows, columns), rhs)
    if solution is None:
        return None
    total = dc.vector_to_form(n, {columns[j]: v for j, v in solution.items()})
    return [bigraded_component(total, i, n - i) for i in range(p + 1, p + count + 1)]


def find_zigzag(
    dc: DoubleComplex,
    beta0: Form,
    r: int,
    start: Optional[Tuple[int, int]] = None,
) -> ZigZag:
    """Extend a del-bar closed form to a zig-zag of length ``r``.

    Each step solves del-bar beta_i = -del beta_{i-1}. When a step has no
    solution, beta_1..beta_i are solved again jointly, so a failure means
    that no zig-zag of that length starts at beta_0 at all.

    Raises:
        NotACocycleError: If del-bar beta_0 != 0
        ZigZagExtensionError: If the chain stops early; ``lives_to`` is the
            number of elements that could be built
    """
    if r < 1:
        raise ValueError(f"Zig-zag length must be at least 1, got {r}")
    p, q = _start_bidegree(beta0, start)
    n = p + q
    if del_bar(dc.eq, beta0):
        raise NotACocycleError(f"Start form {beta0} is not del-bar closed")

    chain: List[Form] = [beta0]
    for i in range(1, r):
        beta = _solve_step(dc, chain[-1], p + i, q - i)
        if beta is None:
            joint = _solve_jointly(dc, beta0, p, n, i)
            if joint is None:
                logger.debug(f"Zig-zag from A^{{{p},{q}}} stops after {i} elements")
                raise ZigZagExtensionError(
                    f"Start form lives exactly to E_{i}: no zig-zag of length {i + 1}",
                    lives_to=i,
                    partial=chain,
                )
            logger.debug(f"Joint solve rebuilt beta_1..beta_{i}")
            chain = [beta0] + joint
        else:
            chain.append(beta)
    return ZigZag(start=(p, q), chain=tuple(chain), terminal=del_(dc.eq, chain[-1]))


def verify_zigzag(dc: DoubleComplex, zigzag: ZigZag) -> ZigZagCheck:
    """Exact check of bidegrees and of every zig-zag relation.

    Index 0 is del-bar beta_0 = 0, index i is del beta_{i-1} + del-bar beta_i = 0
    and index r is terminal = del beta_{r-1}.
    """
    eq = dc.eq
    p, q = zigzag.start
    for i, beta in enumerate(zigzag.chain):
        if beta and (not beta.is_bihomogeneous() or beta.bidegree() != (p + i, q - i)):
            return ZigZagCheck(
                ok=False,
                violated_index=i,
                message=f"beta_{i} is not of bidegree ({p + i},{q - i})",
            )
    if not zigzag.chain:
        return ZigZagCheck(ok=False, violated_index=0, message="empty chain")
    if del_bar(eq, zigzag.chain[0]):
        return ZigZagCheck(ok=False, violated_index=0, message="del-bar beta_0 != 0")
    for i in range(1, zigzag.length):
        if del_(eq, zigzag.chain[i - 1]) + del_bar(eq, zigzag.chain[i]):
            return ZigZagCheck(
                ok=False,
                violated_index=i,
                message=f"del beta_{i - 1} + del-bar beta_{i} != 0",
            )
    if zigzag.terminal != del_(eq, zigzag.chain[-1]):
        return ZigZagCheck(
            ok=False,
            violated_index=zigzag.length,
            message=f"terminal form differs from del beta_{zigzag.length - 1}",
        )
    return ZigZagCheck(ok=True)


def lives_to(
    dc: DoubleComplex,
    beta0: Form,
    max_r: int,
    start: Optional[Tuple[int, int]] = None,
) -> int:
    """Largest r <= max_r such that beta_0 starts a zig-zag of length r."""
    try:
        find_zigzag(dc, beta0, max_r, start=start)
    except ZigZagExtensionError as e:
        return e.lives_to
    return max_r

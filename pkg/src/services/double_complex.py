"""The bigraded double complex (A^{p,q}, del, del-bar) of structure equations.

Blocks are built lazily and cached, so callers that only need a few total
degrees (for instance the theorem check at n = 4, whose full algebra has
2^16 basis monomials) never pay for the rest.
"""

import logging
from itertools import combinations
from math import comb
from typing import Dict, Iterator, List, Optional, Tuple

from src.exceptions import AmbientMismatchError, StructureValidationError
from src.linalg.sparse import SparseMatrix, Vector
from src.models.forms import Form, Monomial
from src.models.scalar import Scalar
from src.models.structure import StructureEquations
from src.services.differential import d_monomial, validate

logger = logging.getLogger(__name__)


def _masks(m: int, k: int) -> List[int]:
    return [sum(1 << i for i in combo) for combo in combinations(range(m), k)]


class DoubleComplex:
    """Monomial bases of every A^{p,q} and the matrices of del and del-bar.

    ``del_matrix(p, q)`` maps A^{p,q} -> A^{p+1,q} and ``del_bar_matrix(p, q)``
    maps A^{p,q} -> A^{p,q+1}; columns index the source basis, rows the
    target basis. The total complex K^n = sum_{p+q=n} A^{p,q} is indexed by
    concatenating the bases of A^{0,n}, A^{1,n-1}, ... in order of p.
    """

    def __init__(self, eq: StructureEquations) -> None:
        self.eq = eq
        self.m = eq.m
        self._bases: Dict[Tuple[int, int], List[Monomial]] = {}
        self._index: Dict[Tuple[int, int], Dict[Monomial, int]] = {}
        self._diff_cache: Dict[
            Tuple[int, int], Dict[Monomial, Dict[Monomial, Scalar]]
        ] = {}
        self._del: Dict[Tuple[int, int], SparseMatrix] = {}
        self._del_bar: Dict[Tuple[int, int], SparseMatrix] = {}
        self._total: Dict[int, SparseMatrix] = {}
        self._offsets: Dict[int, Dict[int, int]] = {}

    def in_range(self, p: int, q: int) -> bool:
        return 0 <= p <= self.m and 0 <= q <= self.m

    def basis(self, p: int, q: int) -> List[Monomial]:
        """Basis monomials of A^{p,q} in canonical order."""
        key = (p, q)
        if key not in self._bases:
            if not self.in_range(p, q):
                self._bases[key] = []
            else:
                monos = [
                    Monomial(h, a) for h in _masks(self.m, p) for a in _masks(self.m, q)
                ]
                monos.sort(key=lambda mono: mono.sort_key(self.m))
                self._bases[key] = monos
            self._index[key] = {mono: i for i, mono in enumerate(self._bases[key])}
        return self._bases[key]

    def dim(self, p: int, q: int) -> int:
        if not self.in_range(p, q):
            return 0
        return comb(self.m, p) * comb(self.m, q)

    def index(self, p: int, q: int) -> Dict[Monomial, int]:
        self.basis(p, q)
        return self._index[(p, q)]

    def _differentials(self, p: int, q: int) -> Dict[Monomial, Dict[Monomial, Scalar]]:
        key = (p, q)
        if key not in self._diff_cache:
            self._diff_cache[key] = {
                mono: d_monomial(self.eq, mono) for mono in self.basis(p, q)
            }
        return self._diff_cache[key]

    def _block(self, p: int, q: int, dp: int, dq: int) -> SparseMatrix:
        source = self.basis(p, q)
        target_index = self.index(p + dp, q + dq)
        entries: Dict[int, Vector] = {}
        if target_index:
            for j, mono in enumerate(source):
                for target, coeff in self._differentials(p, q)[mono].items():
                    i = target_index.get(target)
                    if i is not None:
                        entries.setdefault(i, {})[j] = coeff
        return SparseMatrix._trusted(len(target_index), len(source), entries)

    def del_matrix(self, p: int, q: int) -> SparseMatrix:
        if (p, q) not in self._del:
            self._del[(p, q)] = self._block(p, q, 1, 0)
        return self._del[(p, q)]

    def del_bar_matrix(self, p: int, q: int) -> SparseMatrix:
        if (p, q) not in self._del_bar:
            self._del_bar[(p, q)] = self._block(p, q, 0, 1)
        return self._del_bar[(p, q)]

    def bidegrees(self) -> Iterator[Tuple[int, int]]:
        for p in range(self.m + 1):
            for q in range(self.m + 1):
                yield p, q

    # Total complex

    def offsets(self, n: int) -> Dict[int, int]:
        """Start index of the A^{p,n-p} block inside K^n, keyed by p."""
        if n not in self._offsets:
            offsets: Dict[int, int] = {}
            position = 0
            for p in range(n + 1):
                if self.in_range(p, n - p):
                    offsets[p] = position
                    position += self.dim(p, n - p)
            self._offsets[n] = offsets
        return self._offsets[n]

    def total_dim(self, n: int) -> int:
        if not 0 <= n <= 2 * self.m:
            return 0
        return comb(2 * self.m, n)

    def filtration_indices(self, n: int, p: int) -> List[int]:
        """Coordinates of F^p K^n, the span of A^{i,n-i} with i >= p."""
        out: List[int] = []
        for i, start in self.offsets(n).items():
            if i >= p:
                out.extend(range(start, start + self.dim(i, n - i)))
        return out

    def block_indices(self, n: int, p: int) -> range:
        start = self.offsets(n).get(p)
        if start is None:
            return range(0)
        return range(start, start + self.dim(p, n - p))

    def holo_degree(self, n: int, index: int) -> int:
        """p of the A^{p,n-p} block containing a K^n coordinate."""
        for p, start in self.offsets(n).items():
            if start <= index < start + self.dim(p, n - p):
                return p
        raise AmbientMismatchError(f"Index {index} outside K^{n}")

    def total_matrix(self, n: int) -> SparseMatrix:
        """d = del + del-bar as a matrix K^n -> K^{n+1}."""
        if n not in self._total:
            entries: Dict[int, Vector] = {}
            source_offsets = self.offsets(n)
            target_offsets = self.offsets(n + 1)
            for p, start in source_offsets.items():
                q = n - p
                blocks = ((self.del_matrix(p, q), 1), (self.del_bar_matrix(p, q), 0))
                for block, dp in blocks:
                    row_start = target_offsets.get(p + dp)
                    if row_start is None:
                        continue
                    for i, row in block.entries.items():
                        target = entries.setdefault(row_start + i, {})
                        for j, value in row.items():
                            target[start + j] = value
            self._total[n] = SparseMatrix._trusted(
                self.total_dim(n + 1), self.total_dim(n), entries
            )
            logger.debug(f"Built total differential K^{n} -> K^{n + 1}")
        return self._total[n]

    def apply_total(self, n: int, vector: Vector) -> Vector:
        return self.total_matrix(n).matvec(vector)

    # Conversions between forms and coordinates

    def form_to_vector(self, form: Form, n: Optional[int] = None) -> Vector:
        """Coordinates in K^n of a form of pure total degree n."""
        if form.m != self.m:
            raise AmbientMismatchError(f"Form over m={form.m}, complex over m={self.m}")
        if n is None:
            degrees = form.degrees()
            if len(degrees) > 1:
                raise AmbientMismatchError(f"Form mixes total degrees {degrees}")
            n = degrees[0] if degrees else 0
        out: Vector = {}
        offsets = self.offsets(n)
        for mono, coeff in form:
            p, q = mono.bidegree
            if p + q != n:
                raise AmbientMismatchError(
                    f"Term {mono.label()} is not of total degree {n}"
                )
            out[offsets[p] + self.index(p, q)[mono]] = coeff
        return out

    def vector_to_form(self, n: int, vector: Vector) -> Form:
        terms: Dict[Monomial, Scalar] = {}
        for p, start in self.offsets(n).items():
            basis = self.basis(p, n - p)
            for i in range(len(basis)):
                value = vector.get(start + i)
                if value:
                    terms[basis[i]] = value
        return Form(self.m, terms)

    def block_vector(self, form: Form) -> Vector:
        """Coordinates of a bihomogeneous form in its own A^{p,q} basis."""
        if not form:
            return {}
        p, q = form.bidegree()
        index = self.index(p, q)
        return {index[mono]: coeff for mono, coeff in form}

    def block_form(self, p: int, q: int, vector: Vector) -> Form:
        basis = self.basis(p, q)
        return Form(self.m, {basis[i]: value for i, value in vector.items()})


def build_double_complex(eq: StructureEquations, check: bool = True) -> DoubleComplex:
    """Create the double complex of validated structure equations.

    Raises:
        StructureValidationError: If the Jacobi identity or integrability fails
    """
    if check:
        report = validate(eq)
        if not report.ok:
            checks = (
                ("jacobi", report.jacobi_ok),
                ("integrability", report.integrable),
            )
            failed = [name for name, ok in checks if not ok]
            raise StructureValidationError(
                f"Structure equations fail {' and '.join(failed)}", report=report
            )
    logger.info(f"Double complex for m={eq.m}: total dimension {2 ** (2 * eq.m)}")
    return DoubleComplex(eq)

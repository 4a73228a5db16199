"""Frölicher spectral sequence of a double complex by explicit subquotients.

With the column filtration F^p K^n = sum_{i >= p} A^{i,n-i} of the total
complex K^n,

    Z_r^{p,q} = F^p K^n ∩ d^{-1}(F^{p+r} K^{n+1}),        n = p + q
    B_r^{p,q} = Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2}
    E_r^{p,q} = Z_r^{p,q} / B_r^{p,q}

so every page is computed from kernels, images and sums of subspaces of
the fixed spaces K^n, without quotient-space bookkeeping.
"""

import logging
from typing import Dict, List, Optional, Tuple

from src.exceptions import InvariantViolationError
from src.linalg.sparse import SparseMatrix, Vector, rank, solve
from src.linalg.subspace import (
    Subspace,
    extend_basis,
    kernel,
    quotient_dim,
    subspace_sum,
)
from src.models.forms import Form
from src.models.reports import (
    FrolicherReport,
    Page,
    PageEntry,
    PageTable,
    ZigZag,
)
from src.services.double_complex import DoubleComplex

logger = logging.getLogger(__name__)

Key = Tuple[int, int, int]


class FrolicherSpectralSequence:
    """Pages E_r and differentials d_r of one double complex, with caches."""

    def __init__(self, dc: DoubleComplex) -> None:
        self.dc = dc
        self.m = dc.m
        self._cycles: Dict[Key, Subspace] = {}
        self._boundaries: Dict[Key, Subspace] = {}
        self._representatives: Dict[Key, List[Vector]] = {}
        self._class_systems: Dict[Key, SparseMatrix] = {}
        self._pages: Dict[int, Page] = {}

    # Filtration pieces, all inside K^n

    def filtration(self, p: int, n: int) -> Subspace:
        return Subspace.coordinate(
            self.dc.total_dim(n), self.dc.filtration_indices(n, p)
        )

    def cycles(self, r: int, p: int, n: int) -> Subspace:
        """Z_r^{p,n-p}: elements of F^p K^n whose differential lies in F^{p+r}."""
        key = (r, p, n)
        if key in self._cycles:
            return self._cycles[key]
        dc = self.dc
        ambient = dc.total_dim(n)
        source = dc.filtration_indices(n, p)
        rows: List[int] = []
        if r > 0 and source:
            for i in range(max(p, 0), p + r):
                rows.extend(dc.block_indices(n + 1, i))
        if not rows:
            space = Subspace.coordinate(ambient, source)
        else:
            block = dc.total_matrix(n).submatrix(rows, source)
            local = kernel(block)
            lifted = (
                {source[j]: v for j, v in vector.items()} for vector in local.vectors()
            )
            space = Subspace.span(ambient, lifted)
        self._cycles[key] = space
        return space

    def boundaries(self, r: int, p: int, n: int) -> Subspace:
        """B_r^{p,n-p}, the subspace of Z_r^{p,n-p} that is zero on page r."""
        key = (r, p, n)
        if key in self._boundaries:
            return self._boundaries[key]
        if r <= 0:
            space = self.filtration(p + 1, n)
        else:
            lower = self.cycles(r - 1, p + 1, n)
            space = lower
            if n >= 1:
                source = self.cycles(r - 1, p - r + 1, n - 1)
                if source.dim:
                    matrix = self.dc.total_matrix(n - 1)
                    images = Subspace.span(
                        self.dc.total_dim(n),
                        (matrix.matvec(v) for v in source.vectors()),
                    )
                    space = subspace_sum(lower, images)
        self._boundaries[key] = space
        return space

    def entry_dim(self, r: int, p: int, q: int) -> int:
        if not self.dc.in_range(p, q):
            return 0
        n = p + q
        return quotient_dim(self.cycles(r, p, n), self.boundaries(r, p, n))

    def representatives(self, r: int, p: int, q: int) -> List[Vector]:
        """Vectors of Z_r whose classes form a basis of E_r^{p,q}."""
        key = (r, p, q)
        if key not in self._representatives:
            if not self.dc.in_range(p, q):
                self._representatives[key] = []
            else:
                n = p + q
                self._representatives[key] = extend_basis(
                    self.boundaries(r, p, n), self.cycles(r, p, n).vectors()
                )
        return self._representatives[key]

    def entry(
        self, r: int, p: int, q: int, with_representatives: bool = True
    ) -> PageEntry:
        n = p + q
        if not self.dc.in_range(p, q):
            return PageEntry(p=p, q=q, dim=0, cycles_dim=0, boundaries_dim=0)
        cycles = self.cycles(r, p, n)
        boundaries = self.boundaries(r, p, n)
        dim = quotient_dim(cycles, boundaries)
        forms: Tuple[Form, ...] = ()
        if with_representatives:
            forms = tuple(
                self.dc.vector_to_form(n, vector)
                for vector in self.representatives(r, p, q)
            )
            if len(forms) != dim:
                raise InvariantViolationError(
                    f"E_{r}^{{{p},{q}}}: {len(forms)} representatives "
                    f"for dimension {dim}"
                )
        return PageEntry(
            p=p,
            q=q,
            dim=dim,
            cycles_dim=cycles.dim,
            boundaries_dim=boundaries.dim,
            representatives=forms,
        )

    def page(self, r: int) -> Page:
        if r not in self._pages:
            entries = {
                (p, q): self.entry(r, p, q) for p, q in self.dc.bidegrees()
            }
            self._pages[r] = Page(r=r, m=self.m, entries=entries)
            total = sum(self._pages[r].total_dims())
            logger.info(f"Computed page E_{r} (total dimension {total})")
        return self._pages[r]

    # Classes and differentials

    def _class_system(self, r: int, p: int, q: int) -> SparseMatrix:
        key = (r, p, q)
        if key not in self._class_systems:
            n = p + q
            columns = self.representatives(r, p, q) + self.boundaries(r, p, n).vectors()
            self._class_systems[key] = SparseMatrix.from_columns(
                columns, self.dc.total_dim(n)
            )
        return self._class_systems[key]

    def class_coordinates(self, r: int, p: int, q: int, vector: Vector) -> Vector:
        """Coordinates of [vector] in E_r^{p,q} w.r.t. the representatives.

        Raises:
            InvariantViolationError: If the vector is not in Z_r^{p,q}
        """
        if not self.dc.in_range(p, q):
            if vector:
                raise InvariantViolationError(f"Nonzero vector outside A^{{{p},{q}}}")
            return {}
        solution = solve(self._class_system(r, p, q), vector)
        if solution is None:
            raise InvariantViolationError(f"Vector is not an E_{r}^{{{p},{q}}} cycle")
        count = len(self.representatives(r, p, q))
        return {j: v for j, v in solution.items() if j < count}

    def contains_cycle(self, r: int, p: int, n: int, vector: Vector) -> bool:
        return self.cycles(r, p, n).contains(vector)

    def class_is_nonzero(self, r: int, p: int, n: int, vector: Vector) -> bool:
        """Whether an element of Z_r^{p,n-p} has a nonzero class on page r.

        Raises:
            InvariantViolationError: If the vector is not in Z_r^{p,n-p}
        """
        if not self.contains_cycle(r, p, n, vector):
            raise InvariantViolationError(f"Vector is not in Z_{r}^{{{p},{n - p}}}")
        return not self.boundaries(r, p, n).contains(vector)

    def differential(self, r: int, p: int, q: int) -> SparseMatrix:
        """Matrix of d_r: E_r^{p,q} -> E_r^{p+r,q-r+1} in representative bases."""
        source = self.representatives(r, p, q)
        tp, tq = p + r, q - r + 1
        if not self.dc.in_range(tp, tq):
            return SparseMatrix.zeros(0, len(source))
        target_count = len(self.representatives(r, tp, tq))
        n = p + q
        matrix = self.dc.total_matrix(n)
        columns = [
            self.class_coordinates(r, tp, tq, matrix.matvec(vector))
            for vector in source
        ]
        return SparseMatrix.from_columns(columns, target_count)

    def apply_differential(self, r: int, zigzag: ZigZag) -> Vector:
        """Coordinates of d_r[beta_0] = [del beta_{r-1}] in E_r of the target."""
        tp, tq = zigzag.target
        if not self.dc.in_range(tp, tq):
            return {}
        vector = self.dc.form_to_vector(zigzag.terminal, tp + tq)
        return self.class_coordinates(r, tp, tq, vector)

    # Cohomology computed without the filtration

    def total_cohomology(self) -> List[int]:
        """Betti numbers b_0..b_{2m} of (K, d)."""
        ranks = [rank(self.dc.total_matrix(n)) for n in range(2 * self.m + 1)]
        return [
            self.dc.total_dim(n) - ranks[n] - (ranks[n - 1] if n else 0)
            for n in range(2 * self.m + 1)
        ]

    def dolbeault_dims(self) -> Dict[Tuple[int, int], int]:
        """dim H_{del-bar}^{p,q} from kernel/image ranks of the del-bar blocks."""
        dc = self.dc
        return {
            (p, q): dc.dim(p, q)
            - rank(dc.del_bar_matrix(p, q))
            - (rank(dc.del_bar_matrix(p, q - 1)) if q else 0)
            for p, q in dc.bidegrees()
        }

    def del_cohomology_dims(self) -> Dict[Tuple[int, int], int]:
        """dim H_{del}^{p,q} from kernel/image ranks of the del blocks."""
        dc = self.dc
        return {
            (p, q): dc.dim(p, q)
            - rank(dc.del_matrix(p, q))
            - (rank(dc.del_matrix(p - 1, q)) if p else 0)
            for p, q in dc.bidegrees()
        }


def compute_page(
    dc: DoubleComplex, r: int, sequence: Optional[FrolicherSpectralSequence] = None
) -> Page:
    return (sequence or FrolicherSpectralSequence(dc)).page(r)


def page_entry(dc: DoubleComplex, r: int, p: int, q: int) -> PageEntry:
    """A single E_r^{p,q}, touching only total degrees p+q-1 .. p+q+1."""
    return FrolicherSpectralSequence(dc).entry(r, p, q, with_representatives=False)


def page_differential(dc: DoubleComplex, r: int, p: int, q: int) -> SparseMatrix:
    return FrolicherSpectralSequence(dc).differential(r, p, q)


def total_cohomology(dc: DoubleComplex) -> List[int]:
    return FrolicherSpectralSequence(dc).total_cohomology()


def _table(page: Page) -> PageTable:
    return PageTable(r=page.r, dims=[[p, q, d] for (p, q), d in page.dims().items()])


def pages_until_degeneration(
    dc: DoubleComplex,
    max_page: Optional[int] = None,
    witness: Optional[ZigZag] = None,
) -> FrolicherReport:
    """Pages E_0..E_R (R = m+1 unless capped), Betti and Hodge numbers.

    The degeneration page is the smallest r >= 1 after which every d_s
    vanishes; it is only reported when the computation reaches E_{m+1},
    where the sequence is stationary for quadrant reasons.

    Raises:
        InvariantViolationError: If Euler constancy, the rank/dimension
            bookkeeping, or convergence to the Betti numbers fails
    """
    sequence = FrolicherSpectralSequence(dc)
    m = dc.m
    stable = m + 1
    last = stable if max_page is None else max(0, min(max_page, stable))

    pages = [sequence.page(r) for r in range(last + 1)]
    euler = pages[0].euler
    for page in pages:
        if page.euler != euler:
            raise InvariantViolationError(
                f"Euler characteristic of E_{page.r} is {page.euler}, expected {euler}"
            )
        if page.r and any(
            page.dim(p, q) > pages[page.r - 1].dim(p, q) for p, q in dc.bidegrees()
        ):
            raise InvariantViolationError(
                f"Page E_{page.r} is larger than its predecessor"
            )

    ranks: List[List[int]] = []
    nonzero: List[int] = []
    for r in range(1, min(last, m) + 1):
        total = 0
        for p, q in dc.bidegrees():
            value = rank(sequence.differential(r, p, q))
            if value:
                ranks.append([r, p, q, value])
            total += value
        if r < last:
            drop = sum(pages[r].total_dims()) - sum(pages[r + 1].total_dims())
            if drop != 2 * total:
                raise InvariantViolationError(
                    f"d_{r} has rank {total} but E_{r} -> E_{r + 1} "
                    f"loses {drop} dimensions"
                )
        if total:
            nonzero.append(r)
        logger.debug(f"d_{r} has total rank {total}")

    betti = sequence.total_cohomology()
    degeneration: Optional[int] = None
    if last == stable:
        degeneration = (max(nonzero) + 1) if nonzero else 1
        if pages[degeneration].dims() != pages[stable].dims():
            raise InvariantViolationError(
                f"E_{degeneration} differs from E_{stable} "
                "although all later d_r vanish"
            )
        if pages[stable].total_dims() != betti:
            raise InvariantViolationError(
                f"E_infinity totals {pages[stable].total_dims()} "
                f"differ from Betti numbers {betti}"
            )
        logger.info(f"Frölicher spectral sequence degenerates at E_{degeneration}")

    if last >= 1:
        hodge_dims = pages[1].dims()
    else:
        hodge_dims = sequence.dolbeault_dims()
    conjugate = sequence.del_cohomology_dims()

    return FrolicherReport(
        m=m,
        pages=[_table(page) for page in pages],
        betti=betti,
        hodge=[[p, q, h] for (p, q), h in sorted(hodge_dims.items())],
        degeneration_page=degeneration,
        euler=euler,
        witness=witness.to_witness() if witness else None,
        differential_ranks=ranks,
        conjugate_hodge=[[p, q, h] for (p, q), h in sorted(conjugate.items())],
    )

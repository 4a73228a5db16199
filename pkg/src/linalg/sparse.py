"""Sparse matrices over Q(i) and exact Gauss-Jordan elimination.

Matrices are dicts of dicts: ``entries[i][j]`` is the nonzero entry in row i,
column j. Zero entries are never stored and an all-zero row has no key.
"""

import logging
from collections import defaultdict
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from src.exceptions import AmbientMismatchError
from src.models.scalar import ONE, ZERO, Scalar, ScalarLike

logger = logging.getLogger(__name__)

Vector = Dict[int, Scalar]


def clean_vector(vector: Mapping[int, ScalarLike]) -> Vector:
    out: Vector = {}
    for index, value in vector.items():
        scalar = Scalar.coerce(value)
        if scalar:
            out[index] = scalar
    return out


def add_scaled(target: Vector, source: Mapping[int, Scalar], factor: Scalar) -> None:
    """In place ``target += factor * source`` dropping cancelled entries."""
    for index, value in source.items():
        current = target.get(index)
        update = value * factor
        if current is not None:
            update = current + update
        if update:
            target[index] = update
        else:
            target.pop(index, None)


class SparseMatrix:
    """Immutable rows x cols matrix with sparse Scalar entries."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(
        self,
        rows: int,
        cols: int,
        entries: Optional[Mapping[int, Mapping[int, ScalarLike]]] = None,
    ) -> None:
        self.rows = rows
        self.cols = cols
        clean: Dict[int, Vector] = {}
        for i, row in (entries or {}).items():
            if not 0 <= i < rows:
                raise AmbientMismatchError(f"Row index {i} outside 0..{rows - 1}")
            vector = clean_vector(row)
            for j in vector:
                if not 0 <= j < cols:
                    raise AmbientMismatchError(
                        f"Column index {j} outside 0..{cols - 1}"
                    )
            if vector:
                clean[i] = vector
        self._entries = clean

    @classmethod
    def _trusted(
        cls, rows: int, cols: int, entries: Dict[int, Vector]
    ) -> "SparseMatrix":
        obj = object.__new__(cls)
        obj.rows = rows
        obj.cols = cols
        obj._entries = entries
        return obj

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls._trusted(rows, cols, {})

    @classmethod
    def identity(cls, size: int) -> "SparseMatrix":
        return cls._trusted(size, size, {i: {i: ONE} for i in range(size)})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[ScalarLike]]) -> "SparseMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, {i: dict(enumerate(row)) for i, row in enumerate(data)})

    @classmethod
    def from_rows(
        cls, vectors: Sequence[Mapping[int, Scalar]], cols: int
    ) -> "SparseMatrix":
        return cls(len(vectors), cols, dict(enumerate(vectors)))

    @classmethod
    def from_columns(
        cls, vectors: Sequence[Mapping[int, Scalar]], rows: int
    ) -> "SparseMatrix":
        entries: Dict[int, Vector] = defaultdict(dict)
        for j, vector in enumerate(vectors):
            for i, value in vector.items():
                if value:
                    entries[i][j] = value
        return cls(rows, len(vectors), entries)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> Dict[int, Vector]:
        """Row dicts; callers must not mutate them."""
        return self._entries

    def get(self, i: int, j: int) -> Scalar:
        return self._entries.get(i, {}).get(j, ZERO)

    def row(self, i: int) -> Vector:
        return dict(self._entries.get(i, {}))

    def column(self, j: int) -> Vector:
        return {i: row[j] for i, row in self._entries.items() if j in row}

    def nnz(self) -> int:
        return sum(len(row) for row in self._entries.values())

    def is_zero(self) -> bool:
        return not self._entries

    def transpose(self) -> "SparseMatrix":
        out: Dict[int, Vector] = defaultdict(dict)
        for i, row in self._entries.items():
            for j, value in row.items():
                out[j][i] = value
        return SparseMatrix._trusted(self.cols, self.rows, dict(out))

    def matvec(self, vector: Mapping[int, Scalar]) -> Vector:
        out: Vector = {}
        for i, row in self._entries.items():
            acc = ZERO
            for j, value in row.items():
                x = vector.get(j)
                if x is not None:
                    acc = acc + value * x
            if acc:
                out[i] = acc
        return out

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise AmbientMismatchError(f"Cannot multiply {self.shape} by {other.shape}")
        out: Dict[int, Vector] = {}
        for i, row in self._entries.items():
            acc: Vector = {}
            for k, value in row.items():
                other_row = other._entries.get(k)
                if other_row:
                    add_scaled(acc, other_row, value)
            if acc:
                out[i] = acc
        return SparseMatrix._trusted(self.rows, other.cols, out)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self.matmul(other)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise AmbientMismatchError(f"Cannot add {self.shape} and {other.shape}")
        out = {i: dict(row) for i, row in self._entries.items()}
        for i, row in other._entries.items():
            target = out.setdefault(i, {})
            add_scaled(target, row, ONE)
            if not target:
                del out[i]
        return SparseMatrix._trusted(self.rows, self.cols, out)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SparseMatrix":
        """Restriction to the given rows and columns, renumbered in order."""
        col_map = {c: k for k, c in enumerate(cols)}
        out: Dict[int, Vector] = {}
        for k, i in enumerate(rows):
            row = self._entries.get(i)
            if not row:
                continue
            picked = {col_map[j]: v for j, v in row.items() if j in col_map}
            if picked:
                out[k] = picked
        return SparseMatrix._trusted(len(rows), len(cols), out)

    def to_dense(self) -> List[List[Scalar]]:
        return [[self.get(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def hstack(*blocks: SparseMatrix) -> SparseMatrix:
    rows = blocks[0].rows
    out: Dict[int, Vector] = defaultdict(dict)
    offset = 0
    for block in blocks:
        if block.rows != rows:
            raise AmbientMismatchError("hstack of blocks with different row counts")
        for i, row in block.entries.items():
            for j, value in row.items():
                out[i][offset + j] = value
        offset += block.cols
    return SparseMatrix._trusted(rows, offset, dict(out))


def vstack(*blocks: SparseMatrix) -> SparseMatrix:
    cols = blocks[0].cols
    out: Dict[int, Vector] = {}
    offset = 0
    for block in blocks:
        if block.cols != cols:
            raise AmbientMismatchError("vstack of blocks with different column counts")
        for i, row in block.entries.items():
            out[offset + i] = dict(row)
        offset += block.rows
    return SparseMatrix._trusted(offset, cols, out)


def rref_rows(rows: Iterable[Mapping[int, Scalar]]) -> Tuple[List[Vector], List[int]]:
    """Reduced row echelon form of a collection of sparse rows.

    Rows already seen are kept fully reduced against each other; each new
    row is cancelled against them, normalised on its first nonzero column,
    and then used to clear that column from the earlier rows. The result is
    the unique RREF, so the pivot order of processing does not matter.

    Returns:
        (rows sorted by pivot column, pivot columns ascending)
    """
    pivot_row_map: Dict[int, Vector] = {}
    reduced_pivots: Set[int] = set()
    nonreduced_pivots: Set[int] = set()
    nonzero_columns: Dict[int, Set[int]] = defaultdict(set)

    for source in rows:
        Ai = {j: v for j, v in source.items() if v and j not in reduced_pivots}
        for j in nonreduced_pivots & set(Ai):
            Aij = Ai.pop(j)
            add_scaled(Ai, {k: v for k, v in pivot_row_map[j].items() if k != j}, -Aij)
        if not Ai:
            continue

        j = min(Ai)
        inv = Ai[j].inverse()
        Ai = {k: v * inv for k, v in Ai.items()}
        pivot_row_map[j] = Ai

        for k in nonzero_columns.pop(j, ()):
            Ak = pivot_row_map[k]
            Akj = Ak.pop(j)
            before = set(Ak)
            add_scaled(Ak, {l: v for l, v in Ai.items() if l != j}, -Akj)
            after = set(Ak)
            for l in after - before:
                nonzero_columns[l].add(k)
            for l in before - after:
                nonzero_columns[l].discard(k)
            if len(Ak) == 1:
                reduced_pivots.add(k)
                nonreduced_pivots.discard(k)

        if len(Ai) == 1:
            reduced_pivots.add(j)
        else:
            nonreduced_pivots.add(j)
            for l in Ai:
                if l != j:
                    nonzero_columns[l].add(j)

    pivots = sorted(pivot_row_map)
    return [pivot_row_map[p] for p in pivots], pivots


def rref(matrix: SparseMatrix) -> Tuple[SparseMatrix, int, List[int]]:
    """Exact Gauss-Jordan elimination.

    Returns:
        (RREF with zero rows dropped, rank, pivot columns)
    """
    rows, pivots = rref_rows(matrix.entries[i] for i in sorted(matrix.entries))
    reduced = SparseMatrix._trusted(len(rows), matrix.cols, dict(enumerate(rows)))
    return reduced, len(pivots), pivots


def rank(matrix: SparseMatrix) -> int:
    if matrix.is_zero():
        return 0
    # rank(M) == rank(M^T)
    if matrix.rows > matrix.cols:
        matrix = matrix.transpose()
    return rref(matrix)[1]


def kernel_vectors(matrix: SparseMatrix) -> List[Vector]:
    """Basis of {x : Mx = 0}, one vector per free column."""
    reduced, _, pivots = rref(matrix)
    pivot_set = set(pivots)
    column_rows: Dict[int, List[int]] = defaultdict(list)
    for i, row in reduced.entries.items():
        for j in row:
            if j not in pivot_set:
                column_rows[j].append(i)
    basis = []
    for j in range(matrix.cols):
        if j in pivot_set:
            continue
        vector: Vector = {j: ONE}
        for i in column_rows.get(j, ()):
            vector[pivots[i]] = -reduced.entries[i][j]
        basis.append(vector)
    return basis


def solve(matrix: SparseMatrix, rhs: Mapping[int, Scalar]) -> Optional[Vector]:
    """A solution of Mx = b with every free variable zero, or None.

    The particular solution is read off the RREF of the augmented matrix
    [M | b], so the result is deterministic.
    """
    if any(not 0 <= i < matrix.rows for i in rhs):
        raise AmbientMismatchError("Right-hand side outside the row range")
    augmented: Dict[int, Vector] = {i: dict(row) for i, row in matrix.entries.items()}
    extra = matrix.cols
    for i, value in rhs.items():
        if value:
            augmented.setdefault(i, {})[extra] = value
    rows, pivots = rref_rows(augmented[i] for i in sorted(augmented))
    if pivots and pivots[-1] == extra:
        return None
    solution: Vector = {}
    for row, pivot in zip(rows, pivots):
        value = row.get(extra)
        if value:
            solution[pivot] = value
    return solution

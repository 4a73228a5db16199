"""Subspaces of Q(i)^n kept as RREF row bases, and their arithmetic."""

from bisect import bisect_left
from typing import Iterable, List, Mapping, Optional, Sequence

from src.config import get_settings
from src.exceptions import AmbientMismatchError, SubspaceContainmentError
from src.linalg.sparse import (
    SparseMatrix,
    Vector,
    add_scaled,
    kernel_vectors,
    rref_rows,
)
from src.models.scalar import ONE, Scalar


class Subspace:
    """Subspace of an ``ambient_dim``-dimensional coordinate space.

    The basis rows are in reduced row echelon form with distinct pivot
    columns, so two subspaces are equal iff their basis matrices are.
    """

    __slots__ = ("ambient_dim", "_rows", "_pivots")

    def __init__(self, ambient_dim: int, rows: List[Vector], pivots: List[int]) -> None:
        self.ambient_dim = ambient_dim
        self._rows = rows
        self._pivots = pivots

    @classmethod
    def span(
        cls, ambient_dim: int, vectors: Iterable[Mapping[int, Scalar]]
    ) -> "Subspace":
        vectors = list(vectors)
        for vector in vectors:
            for index in vector:
                if not 0 <= index < ambient_dim:
                    raise AmbientMismatchError(
                        f"Coordinate {index} outside ambient dimension {ambient_dim}"
                    )
        rows, pivots = rref_rows(vectors)
        return cls(ambient_dim, rows, pivots)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [], [])

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int]) -> "Subspace":
        """Span of the unit vectors e_i for the given indices."""
        pivots = sorted(set(indices))
        return cls(ambient_dim, [{i: ONE} for i in pivots], pivots)

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.coordinate(ambient_dim, range(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[int]:
        return list(self._pivots)

    @property
    def basis(self) -> SparseMatrix:
        return SparseMatrix._trusted(
            len(self._rows), self.ambient_dim, dict(enumerate(self._rows))
        )

    def vectors(self) -> List[Vector]:
        return [dict(row) for row in self._rows]

    def reduce(self, vector: Mapping[int, Scalar]) -> Vector:
        """Remainder of ``vector`` after clearing every pivot column."""
        remainder = dict(vector)
        for row, pivot in zip(self._rows, self._pivots):
            value = remainder.get(pivot)
            if value:
                add_scaled(remainder, row, -value)
        return remainder

    def contains(self, vector: Mapping[int, Scalar]) -> bool:
        return not self.reduce(vector)

    def extended(self, vector: Mapping[int, Scalar]) -> "Subspace":
        """Span of self and one more vector, keeping the basis in RREF."""
        remainder = self.reduce(vector)
        if not remainder:
            return self
        pivot = min(remainder)
        inv = remainder[pivot].inverse()
        new_row = {j: v * inv for j, v in remainder.items()}
        rows: List[Vector] = []
        for row in self._rows:
            value = row.get(pivot)
            if value:
                row = dict(row)
                add_scaled(row, new_row, -value)
            rows.append(row)
        position = bisect_left(self._pivots, pivot)
        rows.insert(position, new_row)
        pivots = list(self._pivots)
        pivots.insert(position, pivot)
        return Subspace(self.ambient_dim, rows, pivots)

    def is_subspace_of(self, other: "Subspace") -> bool:
        _check(self, other)
        return all(other.contains(row) for row in self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self._pivots == other._pivots
            and self._rows == other._rows
        )

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _check(u: Subspace, v: Subspace) -> None:
    if u.ambient_dim != v.ambient_dim:
        raise AmbientMismatchError(
            f"Subspaces of {u.ambient_dim} and {v.ambient_dim} dimensional spaces"
        )


def kernel(matrix: SparseMatrix) -> Subspace:
    """Kernel of M as a subspace of the source, dim = cols - rank."""
    return Subspace.span(matrix.cols, kernel_vectors(matrix))


def image(matrix: SparseMatrix) -> Subspace:
    """Column space of M as a subspace of the target."""
    return Subspace.span(matrix.rows, matrix.transpose().entries.values())


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check(u, v)
    if not v.dim:
        return u
    if not u.dim:
        return v
    return Subspace.span(u.ambient_dim, u.vectors() + v.vectors())


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    """U ∩ V from the kernel of the stacked system sum(a_i u_i) - sum(b_j v_j) = 0."""
    _check(u, v)
    if not u.dim or not v.dim:
        return Subspace.zero(u.ambient_dim)
    columns = u.vectors() + [{i: -x for i, x in row.items()} for row in v.vectors()]
    system = SparseMatrix.from_columns(columns, u.ambient_dim)
    u_rows = u.vectors()
    out: List[Vector] = []
    for coefficients in kernel_vectors(system):
        vector: Vector = {}
        for index, value in coefficients.items():
            if index < len(u_rows):
                add_scaled(vector, u_rows[index], value)
        if vector:
            out.append(vector)
    return Subspace.span(u.ambient_dim, out)


def quotient_dim(u: Subspace, v: Subspace, check: Optional[bool] = None) -> int:
    """dim U/V for V ⊆ U; containment is verified unless disabled in settings."""
    _check(u, v)
    if check is None:
        check = get_settings().check_quotients
    if check and not v.is_subspace_of(u):
        raise SubspaceContainmentError("quotient_dim requires V to be a subspace of U")
    return u.dim - v.dim


def contains(u: Subspace, vector: Mapping[int, Scalar]) -> bool:
    return u.contains(vector)


def extend_basis(
    base: Subspace, candidates: Sequence[Mapping[int, Scalar]]
) -> List[Vector]:
    """Candidates that extend ``base``, chosen greedily in the given order.

    The returned vectors together with ``base`` span base + span(candidates),
    and no returned vector lies in the span of base and the earlier picks.
    """
    current = base
    picked: List[Vector] = []
    for candidate in candidates:
        grown = current.extended(candidate)
        if grown is not current:
            picked.append(dict(candidate))
            current = grown
    return picked

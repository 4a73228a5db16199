import random
from fractions import Fraction

import pytest
import sympy

from src.exceptions import AmbientMismatchError
from src.linalg.sparse import (
    SparseMatrix,
    hstack,
    kernel_vectors,
    rank,
    rref,
    solve,
    vstack,
)
from src.models.scalar import I, ONE, Scalar


def random_matrix(rng, rows, cols, density=0.4):
    data = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            if rng.random() < density:
                row.append(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
            else:
                row.append(0)
        data.append(row)
    return data


def sympy_rank(data):
    rows = [
        [sympy.Rational(x.numerator, x.denominator) if x else 0 for x in row]
        for row in data
    ]
    return sympy.Matrix(rows).rank()


@pytest.fixture(params=range(8))
def dense(request):
    rng = random.Random(request.param)
    return random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7))


def test_rank_matches_sympy(dense):
    assert rank(SparseMatrix.from_dense(dense)) == sympy_rank(dense)


def test_kernel_dimension_and_vectors(dense):
    matrix = SparseMatrix.from_dense(dense)
    basis = kernel_vectors(matrix)
    assert len(basis) == matrix.cols - rank(matrix)
    for vector in basis:
        assert matrix.matvec(vector) == {}


def test_solve_consistent_system(dense):
    matrix = SparseMatrix.from_dense(dense)
    x0 = {j: Scalar(j + 1, -j) for j in range(matrix.cols)}
    rhs = matrix.matvec(x0)
    solution = solve(matrix, rhs)
    assert solution is not None
    assert matrix.matvec(solution) == rhs


def test_solve_inconsistent_system():
    matrix = SparseMatrix.from_dense([[1, 1], [2, 2]])
    assert solve(matrix, {0: ONE, 1: ONE}) is None
    assert solve(matrix, {0: ONE, 1: Scalar(2)}) == {0: ONE}


def test_gaussian_entries():
    # rows (1, i) and (i, -1) are dependent: second = i * first
    matrix = SparseMatrix.from_dense([[ONE, I], [I, Scalar(-1)]])
    assert rank(matrix) == 1
    (vector,) = kernel_vectors(matrix)
    assert matrix.matvec(vector) == {}


def test_rref_pivots():
    reduced, r, pivots = rref(SparseMatrix.from_dense([[0, 2, 4], [0, 1, 3]]))
    assert r == 2
    assert pivots == [1, 2]
    assert reduced.to_dense() == [[0, 1, 0], [0, 0, 1]]


def test_rank_of_transpose(dense):
    matrix = SparseMatrix.from_dense(dense)
    assert rank(matrix) == rank(matrix.transpose())


def test_zero_entries_are_not_stored():
    matrix = SparseMatrix(2, 2, {0: {0: 0, 1: 1}, 1: {0: 0}})
    assert matrix.nnz() == 1
    assert matrix.row(1) == {}


def test_matmul_and_stacking():
    a = SparseMatrix.from_dense([[1, 2], [0, 1]])
    b = SparseMatrix.from_dense([[1, -2], [0, 1]])
    assert a @ b == SparseMatrix.identity(2)
    assert hstack(a, b).shape == (2, 4)
    assert vstack(a, b).shape == (4, 2)
    assert (a + b).to_dense() == [[2, 0], [0, 2]]
    with pytest.raises(AmbientMismatchError):
        a @ SparseMatrix.zeros(3, 1)


def test_submatrix():
    matrix = SparseMatrix.from_dense([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert matrix.submatrix([2, 0], [1]).to_dense() == [[8], [2]]


def test_bounds_are_checked():
    with pytest.raises(AmbientMismatchError):
        SparseMatrix(1, 1, {0: {3: 1}})
    with pytest.raises(AmbientMismatchError):
        solve(SparseMatrix.identity(2), {5: ONE})

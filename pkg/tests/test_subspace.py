import random

import pytest

from src.exceptions import AmbientMismatchError, SubspaceContainmentError
from src.linalg.sparse import SparseMatrix, add_scaled
from src.linalg.subspace import (
    Subspace,
    extend_basis,
    image,
    kernel,
    quotient_dim,
    subspace_intersect,
    subspace_sum,
)
from src.models.scalar import I, ONE, Scalar


def vec(*values):
    return {i: Scalar(v) for i, v in enumerate(values) if v}


@pytest.fixture
def plane():
    """span(e0 + e1, e2) in a 4-dimensional space."""
    return Subspace.span(4, [vec(1, 1, 0, 0), vec(0, 0, 1, 0)])


def test_span_is_canonical(plane):
    same = Subspace.span(4, [vec(1, 1, 1, 0), vec(2, 2, 0, 0), vec(0, 0, 3, 0)])
    assert same == plane
    assert same.dim == 2
    assert plane.pivots == [0, 2]


def test_contains_and_reduce(plane):
    assert plane.contains(vec(3, 3, -1, 0))
    assert not plane.contains(vec(1, 0, 0, 0))
    assert plane.reduce(vec(1, 0, 0, 1)) == vec(0, -1, 0, 1)


def test_sum_and_intersection(plane):
    other = Subspace.span(4, [vec(1, 0, 0, 0), vec(0, 1, 0, 0)])
    total = subspace_sum(plane, other)
    meet = subspace_intersect(plane, other)
    assert total.dim == 3
    assert meet.dim == 1
    assert meet.contains(vec(1, 1, 0, 0))
    # dim(U + V) + dim(U ∩ V) = dim U + dim V
    assert total.dim + meet.dim == plane.dim + other.dim


def test_intersection_with_zero(plane):
    assert subspace_intersect(plane, Subspace.zero(4)).dim == 0


def test_quotient_dim(plane):
    line = Subspace.span(4, [vec(1, 1, 0, 0)])
    assert quotient_dim(plane, line) == 1
    with pytest.raises(SubspaceContainmentError):
        quotient_dim(line, Subspace.span(4, [vec(1, 0, 0, 0)]))


def test_kernel_and_image():
    matrix = SparseMatrix.from_dense([[1, 1, 0], [0, 0, 1]])
    assert kernel(matrix) == Subspace.span(3, [vec(1, -1, 0)])
    assert image(matrix) == Subspace.full(2)


def test_extend_basis_picks_independent_candidates(plane):
    candidates = [vec(2, 2, 0, 0), vec(1, 0, 0, 0), vec(0, 1, 0, 0), vec(0, 0, 0, 1)]
    picked = extend_basis(plane, candidates)
    assert picked == [vec(1, 0, 0, 0), vec(0, 0, 0, 1)]
    grown = subspace_sum(plane, Subspace.span(4, picked))
    assert grown == Subspace.full(4)


def test_gaussian_span():
    space = Subspace.span(2, [{0: ONE, 1: I}])
    assert space.contains({0: I, 1: Scalar(-1)})
    assert not space.contains({0: ONE, 1: Scalar(-1)})


def test_coordinate_subspace():
    space = Subspace.coordinate(5, [3, 1, 3])
    assert space.dim == 2
    assert space.is_subspace_of(Subspace.full(5))
    assert not Subspace.full(5).is_subspace_of(space)


def test_ambient_mismatch(plane):
    with pytest.raises(AmbientMismatchError):
        subspace_sum(plane, Subspace.zero(3))
    with pytest.raises(AmbientMismatchError):
        Subspace.span(2, [{4: ONE}])


def random_vectors(rng, count, ambient=5):
    vectors = []
    for _ in range(count):
        entries = [
            Scalar(rng.randint(-2, 2), rng.choice((0, 0, 1))) for _ in range(ambient)
        ]
        vectors.append({i: x for i, x in enumerate(entries) if x})
    return vectors


def random_combination(rng, vectors):
    out = {}
    for vector in vectors:
        add_scaled(out, vector, Scalar(rng.randint(-2, 2)))
    return out


@pytest.mark.parametrize("seed", range(25))
def test_dimension_formula_on_random_subspaces(seed):
    rng = random.Random(seed)
    u = Subspace.span(5, random_vectors(rng, rng.randint(0, 4)))
    v = Subspace.span(5, random_vectors(rng, rng.randint(0, 4)))
    total, common = subspace_sum(u, v), subspace_intersect(u, v)
    assert total.dim + common.dim == u.dim + v.dim
    assert common.is_subspace_of(u) and common.is_subspace_of(v)
    assert u.is_subspace_of(total) and v.is_subspace_of(total)


@pytest.mark.parametrize("seed", range(25))
def test_modular_law_on_random_subspaces(seed):
    rng = random.Random(seed)
    w_vectors = random_vectors(rng, rng.randint(1, 4))
    w = Subspace.span(5, w_vectors)
    u = Subspace.span(
        5, [random_combination(rng, w_vectors) for _ in range(rng.randint(0, 3))]
    )
    v = Subspace.span(5, random_vectors(rng, rng.randint(0, 3)))
    assert u.is_subspace_of(w)
    left = subspace_sum(u, subspace_intersect(v, w))
    right = subspace_intersect(subspace_sum(u, v), w)
    assert left == right

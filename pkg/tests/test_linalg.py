import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from evencob.errors import DimensionMismatchError
from evencob.linalg import (
    RationalMatrix,
    Subspace,
    canonical_basis,
    cokernel,
    image,
    kernel,
    map_subspace,
    preimage,
)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=2)


@st.composite
def matrices(draw, max_rows=4, max_cols=4, min_rows=0, min_cols=0):
    rows = draw(st.integers(min_rows, max_rows))
    cols = draw(st.integers(min_cols, max_cols))
    data = [[draw(rationals) for _ in range(cols)] for _ in range(rows)]
    return RationalMatrix(data, cols=cols)


@st.composite
def subspaces(draw, ambient=None, max_dim=5):
    n = ambient if ambient is not None else draw(st.integers(0, max_dim))
    count = draw(st.integers(0, n + 1))
    vectors = [[draw(rationals) for _ in range(n)] for _ in range(count)]
    return canonical_basis(vectors, n)


@st.composite
def subspace_pairs(draw, max_dim=5):
    n = draw(st.integers(0, max_dim))
    return draw(subspaces(ambient=n)), draw(subspaces(ambient=n))


def span(vectors, n):
    return canonical_basis(vectors, n)


class TestCanonicalBasis:
    def test_scaling_normalized(self):
        assert span([(2, 0)], 2).basis == RationalMatrix([[1, 0]])

    def test_dependent_rows_collapse(self):
        s = span([(1, 1), (2, 2)], 2)
        assert s.dim == 1
        assert s.basis == RationalMatrix([[1, 1]])

    def test_empty_span(self):
        s = span([], 3)
        assert s.dim == 0
        assert s == Subspace.zero(3)

    def test_rejects_mismatched_vectors(self):
        with pytest.raises(DimensionMismatchError):
            canonical_basis([(1, 0), (1, 0, 0)], 2)

    @given(subspaces())
    def test_idempotent(self, s):
        assert canonical_basis(s.basis_rows(), s.ambient_dim) == s


class TestSum:
    def test_spanning_lines(self):
        assert span([(1, 0)], 2) + span([(0, 1)], 2) == Subspace.full(2)

    def test_idempotent(self):
        a = span([(1, 2, 0), (0, 5, 1)], 3)
        assert a + a == a

    def test_disjoint_coordinates(self):
        s = span([(1, 0, 0, 0)], 4) + span([(0, 0, 1, 0)], 4)
        assert s.dim == 2

    def test_ambient_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            span([(1, 0)], 2) + span([(1, 0, 0)], 3)


class TestIntersect:
    def test_transverse_lines(self):
        assert span([(1, 0)], 2).intersect(span([(0, 1)], 2)) == Subspace.zero(2)

    def test_full_meets_line(self):
        line = span([(1, 0)], 2)
        assert Subspace.full(2).intersect(line) == line

    def test_skew_lines(self):
        assert span([(1, 1)], 2).intersect(span([(1, 0)], 2)) == Subspace.zero(2)

    @given(subspace_pairs())
    def test_dimension_formula(self, pair):
        a, b = pair
        assert (a + b).dim + a.intersect(b).dim == a.dim + b.dim


def test_dimension_formula_large_campaign():
    # module invariant: dim(A+B) + dim(A^B) = dim A + dim B over 1000 pairs
    rng = random.Random(4242)
    for _ in range(1000):
        n = rng.randint(0, 6)
        a = span([[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randint(0, n))], n)
        b = span([[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randint(0, n))], n)
        assert (a + b).dim + a.intersect(b).dim == a.dim + b.dim


class TestKernel:
    def test_zero_map(self):
        assert kernel(RationalMatrix.zeros(2, 2)) == Subspace.full(2)

    def test_identity(self):
        assert kernel(RationalMatrix.identity(3)) == Subspace.zero(3)

    def test_row_vector(self):
        assert kernel(RationalMatrix([[1, 1]])) == span([(1, -1)], 2)

    def test_no_rows(self):
        assert kernel(RationalMatrix((), cols=4)) == Subspace.full(4)


class TestImage:
    def test_identity(self):
        assert image(RationalMatrix.identity(3)) == Subspace.full(3)

    def test_zero(self):
        assert image(RationalMatrix.zeros(3, 2)) == Subspace.zero(3)

    def test_column_scaling(self):
        assert image(RationalMatrix.from_columns([(2, 4)])) == span([(1, 2)], 2)


class TestPreimage:
    def test_identity_map(self):
        b = span([(1, 2, 0)], 3)
        assert preimage(RationalMatrix.identity(3), b) == b

    def test_zero_map(self):
        b = span([(1, 0)], 2)
        assert preimage(RationalMatrix.zeros(2, 3), b) == Subspace.full(3)

    def test_projection(self):
        # e -> e, f -> 0 and target span{e}: everything lands inside
        f = RationalMatrix([[1, 0], [0, 0]])
        assert preimage(f, span([(1, 0)], 2)) == Subspace.full(2)

    def test_contains_kernel(self):
        f = RationalMatrix([[1, 2, 3], [0, 1, 1]])
        b = span([(1, 1)], 2)
        assert preimage(f, b).contains_subspace(kernel(f))

    @given(matrices(), st.data())
    def test_preimage_of_image_intersection(self, f, data):
        b = data.draw(subspaces(ambient=f.rows))
        assert preimage(f, image(f).intersect(b)) == preimage(f, b)


class TestCokernel:
    def test_identity(self):
        dim, proj = cokernel(RationalMatrix.identity(5))
        assert dim == 0 and proj.rows == 0 and proj.cols == 5

    def test_zero_map(self):
        dim, proj = cokernel(RationalMatrix.zeros(3, 2))
        assert dim == 3 and proj == RationalMatrix.identity(3)

    def test_inclusion_of_first_axis(self):
        dim, proj = cokernel(RationalMatrix([[1], [0]]))
        assert dim == 1
        assert proj == RationalMatrix([[0, 1]])

    @given(matrices())
    def test_projection_laws(self, f):
        dim, proj = cokernel(f)
        assert dim == f.rows - f.rank()
        assert proj @ f == RationalMatrix.zeros(dim, f.cols)
        assert proj.rank() == dim


class TestMatrixBasics:
    def test_solve_prefers_zero_free_variables(self):
        m = RationalMatrix([[1, 1]])
        assert m.solve((5,)) == (Fraction(5), Fraction(0))

    def test_solve_inconsistent(self):
        m = RationalMatrix([[1], [0]])
        assert m.solve((0, 1)) is None

    def test_inverse_round_trip(self):
        m = RationalMatrix([[1, 2], [3, 5]])
        assert m @ m.inverse() == RationalMatrix.identity(2)

    def test_inverse_of_singular(self):
        with pytest.raises(ValueError):
            RationalMatrix([[1, 1], [1, 1]]).inverse()

    def test_float_rejected(self):
        with pytest.raises(TypeError):
            RationalMatrix([[0.5]])

    def test_map_subspace(self):
        rot = RationalMatrix([[0, -1], [1, 0]])
        assert map_subspace(rot, span([(1, 0)], 2)) == span([(0, 1)], 2)

    @given(matrices(min_rows=1, min_cols=1))
    def test_transpose_involution(self, m):
        assert m.transpose().transpose() == m

    @given(matrices(), st.data())
    def test_solve_sound_and_complete(self, f, data):
        rhs = tuple(data.draw(rationals) for _ in range(f.rows))
        solution = f.solve(rhs)
        if solution is None:
            assert not image(f).contains(rhs)
        else:
            assert f.apply(solution) == rhs

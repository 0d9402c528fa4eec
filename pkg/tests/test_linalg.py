from fractions import Fraction as F

import pytest
from conftest import cofactor_det, faddeev_leverrier, int_matrix
from hypothesis import given, settings
from hypothesis import strategies as st

from tpgl.errors import SingularMatrixError
from tpgl.gl_small import GL3Params, gl3_S, gl3_S_inverse
from tpgl.linalg import (
    MinorIndex,
    SquareMatrix,
    char_poly,
    determinant,
    inverse,
    kernel_basis,
    minor,
    poly_eval_matrix,
    rank_of_rows,
    rational_roots,
    solve_linear,
)
from tpgl.pinning import y_gen
from tpgl.sampling import SplitMix64

small_entries = st.integers(min_value=-4, max_value=4)


def int_mat_strategy(n):
    return st.lists(st.lists(small_entries, min_size=n, max_size=n),
                    min_size=n, max_size=n).map(SquareMatrix.from_rows)


class TestMinor:
    def test_identity_block(self):
        assert minor(SquareMatrix.identity(3), MinorIndex((1, 2), (1, 2))) == 1

    def test_full_2x2(self):
        g = SquareMatrix.from_rows([[1, 2], [3, 4]])
        assert minor(g, MinorIndex((1, 2), (1, 2))) == -2

    def test_generator_product_matches_cofactor_oracle(self):
        g = y_gen(4, 1, 1) * y_gen(4, 2, 1) * y_gen(4, 3, 1) * y_gen(4, 1, 1)
        idx = MinorIndex((2, 3), (1, 2))
        sub = [[g.entries[i - 1][j - 1] for j in idx.cols] for i in idx.rows]
        assert minor(g, idx) == cofactor_det(sub)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            minor(SquareMatrix.identity(2), MinorIndex((1, 3), (1, 2)))

    def test_bad_index_shape(self):
        with pytest.raises(ValueError):
            MinorIndex((2, 1), (1, 2))
        with pytest.raises(ValueError):
            MinorIndex((0, 1), (1, 2))

    @given(int_mat_strategy(3))
    @settings(max_examples=40)
    def test_full_minor_is_determinant(self, g):
        assert minor(g, MinorIndex((1, 2, 3), (1, 2, 3))) == determinant(g)


class TestDeterminant:
    def test_identity(self):
        assert determinant(SquareMatrix.identity(4)) == 1

    def test_diagonal(self):
        assert determinant(SquareMatrix.diagonal([2, 1, F(1, 2)])) == 1

    def test_random_5x5_against_cofactor_oracle(self):
        rng = SplitMix64(2024)
        for _ in range(10):
            g = int_matrix(rng, 5, span=3)
            assert determinant(g) == cofactor_det([list(r) for r in g.entries])

    def test_cauchy_binet_samples(self):
        rng = SplitMix64(7)
        for _ in range(12):
            g, h = int_matrix(rng, 4), int_matrix(rng, 4)
            assert determinant(g * h) == determinant(g) * determinant(h)


class TestInverse:
    def test_identity(self):
        assert inverse(SquareMatrix.identity(3)) == SquareMatrix.identity(3)

    def test_lower_generator(self):
        a = F(7, 3)
        assert inverse(y_gen(2, 1, a)) == y_gen(2, 1, -a)

    def test_closed_form_frame_inverse(self):
        p = GL3Params(2, 2, 2, 2, 2, 2)
        assert inverse(gl3_S(p)) == gl3_S_inverse(p)

    def test_singular_raises(self):
        with pytest.raises(SingularMatrixError):
            inverse(SquareMatrix.from_rows([[1, 2], [2, 4]]))

    @given(int_mat_strategy(3))
    @settings(max_examples=50)
    def test_involution(self, g):
        if determinant(g) == 0:
            return
        assert inverse(inverse(g)) == g


class TestKernel:
    def test_identity_has_trivial_kernel(self):
        assert kernel_basis(SquareMatrix.identity(4)) == []

    def test_zero_matrix(self):
        basis = kernel_basis(SquareMatrix.from_rows([[0, 0], [0, 0]]))
        assert len(basis) == 2
        assert rank_of_rows([list(v) for v in basis]) == 2

    def test_diagonal_eigenvector(self):
        g = SquareMatrix.diagonal([2, 1])
        basis = kernel_basis(g.minus_scalar(2))
        assert len(basis) == 1
        v = basis[0]
        assert v[1] == 0 and v[0] != 0

    def test_kernel_vectors_annihilated(self):
        rng = SplitMix64(99)
        for _ in range(10):
            g = int_matrix(rng, 4)
            rows = [list(r) for r in g.entries]
            rows[3] = [a - b for a, b in zip(rows[0], rows[2])]
            g = SquareMatrix.from_rows(rows)
            basis = kernel_basis(g)
            assert basis
            for v in basis:
                assert g.mul_vector(v) == (F(0),) * 4


class TestCharPoly:
    def test_identity_2x2(self):
        assert char_poly(SquareMatrix.identity(2)) == (F(1), F(-2), F(1))

    def test_diagonal(self):
        assert char_poly(SquareMatrix.diagonal([5, 3])) == (F(1), F(-8), F(15))

    def test_against_trace_power_oracle(self):
        rng = SplitMix64(5)
        for n in (3, 4):
            for _ in range(6):
                g = int_matrix(rng, n)
                assert char_poly(g) == faddeev_leverrier(g)

    def test_cayley_hamilton(self):
        rng = SplitMix64(13)
        for n in (3, 4):
            zero = SquareMatrix.identity(n).scaled(0)
            for _ in range(8):
                g = int_matrix(rng, n)
                assert poly_eval_matrix(char_poly(g), g) == zero


class TestRationalRoots:
    def test_split_quadratic(self):
        assert rational_roots([F(1), F(-3), F(2)]) == [F(1), F(2)]

    def test_irrational_quadratic(self):
        assert rational_roots([F(1), F(0), F(-2)]) == []

    def test_similarity_preserves_spectrum(self):
        p = GL3Params(2, 2, 2, 2, 2, 2)
        g = gl3_S(p) * SquareMatrix.diagonal([4, 2, 1]) * gl3_S_inverse(p)
        assert rational_roots(char_poly(g)) == [F(1), F(2), F(4)]

    def test_requires_monic(self):
        with pytest.raises(ValueError):
            rational_roots([F(2), F(0)])


class TestSolveAndRank:
    def test_solve_exact(self):
        rows = [[F(2), F(1)], [F(1), F(3)]]
        x = solve_linear(rows, [F(5), F(10)])
        assert [sum(r * v for r, v in zip(row, x)) for row in rows] == [F(5), F(10)]

    def test_solve_singular(self):
        with pytest.raises(SingularMatrixError):
            solve_linear([[F(1), F(1)], [F(2), F(2)]], [F(1), F(1)])

    def test_rank(self):
        assert rank_of_rows([[F(1), F(2)], [F(2), F(4)], [F(0), F(1)]]) == 2

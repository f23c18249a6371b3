"""Exact decompositions checked against sympy and brute-force oracles."""

import random
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings

from conftest import complex_scalars, matrices, to_sympy
from ginv import linalg
from ginv.errors import DimensionMismatchError, SingularMatrixError
from ginv.exact import GaussianRational, Matrix


def _random_int_matrix(rng, rows, cols, bound=5):
    return Matrix(rows, cols, [rng.randint(-bound, bound) for _ in range(rows * cols)])


class TestRref:
    def test_identity_is_its_own_rref(self):
        res = linalg.rref(Matrix.identity(4))
        assert res.rref == Matrix.identity(4)
        assert res.rank == 4
        assert res.pivot_cols == (0, 1, 2, 3)

    def test_rank_one_matrix(self):
        res = linalg.rref(Matrix.from_rows([[1, 1], [2, 2]]))
        assert res.rank == 1
        assert res.pivot_cols == (0,)
        assert res.rref == Matrix.from_rows([[1, 1], [0, 0]])

    def test_fixture_rank_is_three(self, preserving_fixture):
        assert linalg.rank(preserving_fixture.t) == 3

    @given(matrices(max_dim=4, scalars=complex_scalars))
    @settings(max_examples=60)
    def test_transform_reproduces_rref(self, a):
        res = linalg.rref(a)
        assert res.transform @ a == res.rref
        assert linalg.determinant(res.transform) != 0
        assert res.rank == len(res.pivot_cols)

    @given(matrices(max_dim=4, scalars=complex_scalars))
    @settings(max_examples=60)
    def test_rank_invariant_under_adjoint(self, a):
        assert linalg.rank(a) == linalg.rank(a.H)

    def test_rank_matches_sympy(self):
        rng = random.Random(7)
        for _ in range(25):
            a = _random_int_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
            assert linalg.rank(a) == to_sympy(a).rank()


class TestDeterminantInverse:
    def test_det_identity(self):
        assert linalg.determinant(Matrix.identity(4)) == 1

    def test_det_empty_matrix_is_one(self):
        assert linalg.determinant(Matrix.zeros(0, 0)) == 1

    def test_inverse_diagonal(self):
        inv = linalg.inverse(Matrix.from_rows([[2, 0], [0, 4]]))
        assert inv == Matrix.from_rows([[Fraction(1, 2), 0], [0, Fraction(1, 4)]])

    def test_singular_raises(self):
        with pytest.raises(SingularMatrixError):
            linalg.inverse(Matrix.from_rows([[1, 1], [2, 2]]))

    def test_rectangular_rejected(self):
        with pytest.raises(DimensionMismatchError):
            linalg.determinant(Matrix.zeros(2, 3))

    def test_det_matches_sympy(self):
        rng = random.Random(11)
        for _ in range(25):
            n = rng.randint(1, 5)
            a = _random_int_matrix(rng, n, n)
            ours = linalg.determinant(a)
            theirs = to_sympy(a).det()
            assert ours.re == Fraction(int(theirs.p), int(theirs.q)) and not ours.im

    def test_inverse_round_trips(self):
        rng = random.Random(13)
        found = 0
        while found < 10:
            n = rng.randint(1, 5)
            a = _random_int_matrix(rng, n, n)
            if not linalg.determinant(a):
                continue
            assert a @ linalg.inverse(a) == Matrix.identity(n)
            found += 1

    def test_perturbation_expression_invertible_on_fixture(self, preserving_fixture):
        from ginv import theta

        t_core = theta.core_inverse(preserving_fixture.t)
        m = Matrix.identity(4) + t_core @ preserving_fixture.delta_t
        assert linalg.determinant(m) != 0


class TestSubspaces:
    def test_fixture_ranges_agree(self, preserving_fixture):
        fx = preserving_fixture
        assert linalg.subspace_leq(fx.t_bar, fx.t)
        assert linalg.subspace_leq(fx.t, fx.t_bar)

    def test_probe_vector_separates_ranges(self, violating_fixture):
        fx = violating_fixture
        assert linalg.subspace_leq(fx.probe, fx.t)
        assert not linalg.subspace_leq(fx.probe, fx.t_bar)
        assert not linalg.same_range(fx.t_bar, fx.t)

    def test_zero_range_contained_everywhere(self):
        zero = Matrix.zeros(3, 2)
        assert linalg.subspace_leq(zero, Matrix.identity(3))
        assert linalg.subspace_leq(zero, Matrix.zeros(3, 1))

    def test_row_count_mismatch_raises(self):
        with pytest.raises(DimensionMismatchError):
            linalg.subspace_leq(Matrix.identity(2), Matrix.identity(3))

    def test_agrees_with_column_solvability_oracle(self):
        # R(a) <= R(b) iff every single column of a lies in R(b).
        rng = random.Random(17)
        for _ in range(40):
            rows = rng.randint(1, 4)
            a = _random_int_matrix(rng, rows, rng.randint(1, 3), bound=2)
            b = _random_int_matrix(rng, rows, rng.randint(1, 3), bound=2)
            per_column = all(
                linalg.rank(b.hstack(a.column(j))) == linalg.rank(b) for j in range(a.cols)
            )
            assert linalg.subspace_leq(a, b) == per_column


class TestNullSpace:
    def test_identity_has_trivial_null_space(self):
        assert linalg.null_space_basis(Matrix.identity(3)).cols == 0

    def test_hand_solved_basis(self):
        basis = linalg.null_space_basis(Matrix.from_rows([[1, 1], [0, 0]]))
        assert basis.cols == 1
        # spans {(x, -x)}
        assert basis[0, 0] == -basis[1, 0] != 0

    def test_fixture_null_spaces_equal(self, violating_fixture):
        assert linalg.same_null_space(violating_fixture.t_bar, violating_fixture.t)

    @given(matrices(max_dim=4, scalars=complex_scalars))
    @settings(max_examples=60)
    def test_basis_properties(self, a):
        basis = linalg.null_space_basis(a)
        assert (a @ basis).is_zero()
        assert basis.cols == a.cols - linalg.rank(a)
        assert linalg.rank(basis) == basis.cols

    def test_matches_sympy_nullspace_dimension(self):
        rng = random.Random(19)
        for _ in range(20):
            a = _random_int_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
            assert linalg.null_space_basis(a).cols == len(to_sympy(a).nullspace())


class TestFullRankFactorization:
    def test_identity(self):
        frf = linalg.full_rank_factorization(Matrix.identity(3))
        assert frf.f == Matrix.identity(3)
        assert frf.g == Matrix.identity(3)

    def test_rank_one_example(self):
        frf = linalg.full_rank_factorization(Matrix.from_rows([[1, 1], [2, 2]]))
        assert frf.f == Matrix.from_rows([[1], [2]])
        assert frf.g == Matrix.from_rows([[1, 1]])

    def test_zero_matrix_uses_empty_dimensions(self):
        frf = linalg.full_rank_factorization(Matrix.zeros(2, 2))
        assert frf.rank == 0
        assert (frf.f.rows, frf.f.cols) == (2, 0)
        assert (frf.g.rows, frf.g.cols) == (0, 2)
        assert frf.f @ frf.g == Matrix.zeros(2, 2)

    def test_random_factorizations(self):
        rng = random.Random(23)
        for _ in range(40):
            a = _random_int_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
            frf = linalg.full_rank_factorization(a)
            assert frf.f @ frf.g == a
            assert linalg.rank(frf.f) == linalg.rank(frf.g) == frf.rank == linalg.rank(a)


class TestPseudoInverse:
    def test_rectangular_matches_sympy(self):
        rng = random.Random(29)
        for _ in range(15):
            a = _random_int_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), bound=3)
            assert to_sympy(linalg.pseudo_inverse(a)) == to_sympy(a).pinv()

    def test_complex_entries(self):
        i = GaussianRational(0, 1)
        a = Matrix.from_rows([[i, 0], [0, 0]])
        mp = linalg.pseudo_inverse(a)
        assert a @ mp @ a == a
        assert (a @ mp).H == a @ mp

    @given(matrices(max_dim=4))
    @settings(max_examples=30, deadline=None)
    def test_involution(self, a):
        assert linalg.pseudo_inverse(linalg.pseudo_inverse(a)) == a


class TestNorms:
    def test_spectral_norm_identity(self):
        assert abs(linalg.spectral_norm(Matrix.identity(3)) - 1.0) < 1e-12

    def test_spectral_norm_diagonal(self):
        m = Matrix.from_rows([[3, 0], [0, 4]])
        assert abs(linalg.spectral_norm(m) - 4.0) < 1e-12

    def test_spectral_norm_zero_and_empty(self):
        assert linalg.spectral_norm(Matrix.zeros(3, 3)) == 0.0
        assert linalg.spectral_norm(Matrix.zeros(2, 0)) == 0.0

    def test_frobenius_sq_example(self):
        assert linalg.frobenius_norm_sq(Matrix.from_rows([[1, 2], [2, 0]])) == 9

    def test_frobenius_dominates_spectral(self):
        rng = random.Random(31)
        for _ in range(40):
            a = _random_int_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
            fro = float(linalg.frobenius_norm_sq(a))
            assert fro >= linalg.spectral_norm(a) ** 2 - 1e-9

    def test_matches_numpy_two_norm(self):
        rng = random.Random(37)
        for _ in range(40):
            a = _random_int_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
            ours = linalg.spectral_norm(a)
            theirs = float(np.linalg.norm(linalg.to_float(a), 2))
            assert ours == pytest.approx(theirs, rel=1e-9, abs=1e-9)

    def test_to_float_preserves_entries(self):
        m = Matrix.from_rows([[Fraction(1, 2), GaussianRational(0, Fraction(3, 4))]])
        arr = linalg.to_float(m)
        assert arr.shape == (1, 2)
        assert arr[0, 0] == 0.5 and arr[0, 1] == 0.75j

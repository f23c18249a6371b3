"""Shared strategies, oracle bridges and paper-fixture shortcuts."""

from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import strategies as st

from ginv.exact import GaussianRational, Matrix
from ginv.fixtures import range_preserving_fixture, range_violating_fixture


def to_sympy(m: Matrix) -> sp.Matrix:
    """Exact copy of a ginv Matrix as a sympy Matrix (independent oracle)."""

    def conv(e: GaussianRational):
        re = sp.Rational(e.re.numerator, e.re.denominator)
        im = sp.Rational(e.im.numerator, e.im.denominator)
        return re + sp.I * im

    return sp.Matrix(m.rows, m.cols, [conv(e) for row in m.to_lists() for e in row])


def from_sympy(m: sp.Matrix) -> Matrix:
    def conv(x) -> GaussianRational:
        re, im = x.as_real_imag()
        return GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))

    return Matrix(m.rows, m.cols, [conv(x) for x in m])


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=5)

real_scalars = st.builds(GaussianRational, small_fractions)

complex_scalars = st.builds(GaussianRational, small_fractions, small_fractions)


@st.composite
def matrices(draw, max_dim: int = 4, scalars=real_scalars, rows: int | None = None, cols: int | None = None):
    r = rows if rows is not None else draw(st.integers(1, max_dim))
    c = cols if cols is not None else draw(st.integers(1, max_dim))
    return Matrix(r, c, [draw(scalars) for _ in range(r * c)])


@st.composite
def square_matrices(draw, max_dim: int = 4, scalars=real_scalars):
    n = draw(st.integers(1, max_dim))
    return Matrix(n, n, [draw(scalars) for _ in range(n * n)])


@st.composite
def square_matrix_tuples(draw, count: int, max_dim: int = 3, scalars=real_scalars):
    n = draw(st.integers(1, max_dim))
    return tuple(
        Matrix(n, n, [draw(scalars) for _ in range(n * n)]) for _ in range(count)
    )


@pytest.fixture(scope="session")
def preserving_fixture():
    return range_preserving_fixture()


@pytest.fixture(scope="session")
def violating_fixture():
    return range_violating_fixture()

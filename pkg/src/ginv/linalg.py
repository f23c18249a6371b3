"""Exact decompositions and subspace tests, plus a floating-point norm bridge.

Everything except `to_float` / `spectral_norm` works purely over Gaussian
rationals and returns exact answers. The elimination order is fixed
(leftmost pivot column, topmost nonzero row) so results are deterministic;
exact arithmetic needs no pivot-magnitude heuristics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatchError, InternalInconsistencyError, SingularMatrixError
from .exact import ONE, ZERO, GaussianRational, Matrix

SPECTRAL_TOL = 1e-12
SPECTRAL_MAX_ITER = 10_000


@dataclass(frozen=True)
class RrefResult:
    """Reduced row-echelon form together with the row transform that made it.

    `transform` is an invertible rows x rows matrix with
    transform @ input == rref, exactly.
    """

    rref: Matrix
    pivot_cols: tuple[int, ...]
    rank: int
    transform: Matrix


@dataclass(frozen=True)
class FullRankFactorization:
    """a = f @ g with f of full column rank and g of full row rank."""

    f: Matrix
    g: Matrix
    rank: int


@lru_cache(maxsize=1024)
def rref(a: Matrix) -> RrefResult:
    """Gauss-Jordan elimination with an accumulated row transform.

    Matrices are immutable, so results are memoized; rank and subspace
    tests on repeated inputs reuse the elimination.
    """
    nrows, ncols = a.rows, a.cols
    work = [a.row_list(i) for i in range(nrows)]
    trans = [[ONE if i == j else ZERO for j in range(nrows)] for i in range(nrows)]
    pivot_cols: list[int] = []
    pr = 0
    for pc in range(ncols):
        if pr == nrows:
            break
        pivot_row = None
        for r in range(pr, nrows):
            if work[r][pc]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        if pivot_row != pr:
            work[pr], work[pivot_row] = work[pivot_row], work[pr]
            trans[pr], trans[pivot_row] = trans[pivot_row], trans[pr]
        pivot = work[pr][pc]
        if pivot != ONE:
            work[pr] = [x / pivot for x in work[pr]]
            trans[pr] = [x / pivot for x in trans[pr]]
        for r in range(nrows):
            if r == pr:
                continue
            factor = work[r][pc]
            if factor:
                wp, tp = work[pr], trans[pr]
                work[r] = [x - factor * y for x, y in zip(work[r], wp)]
                trans[r] = [x - factor * y for x, y in zip(trans[r], tp)]
        pivot_cols.append(pc)
        pr += 1
    flat_r = [e for row in work for e in row]
    flat_t = [e for row in trans for e in row]
    return RrefResult(
        rref=Matrix(nrows, ncols, flat_r),
        pivot_cols=tuple(pivot_cols),
        rank=len(pivot_cols),
        transform=Matrix(nrows, nrows, flat_t),
    )


def rank(a: Matrix) -> int:
    return rref(a).rank


def determinant(a: Matrix) -> GaussianRational:
    """Exact determinant by forward elimination; det of the empty matrix is 1."""
    if not a.is_square:
        raise DimensionMismatchError(f"determinant needs a square matrix, got {a.shape_str()}")
    n = a.rows
    if n == 0:
        return ONE
    work = [a.row_list(i) for i in range(n)]
    det = ONE
    for c in range(n):
        pivot_row = None
        for r in range(c, n):
            if work[r][c]:
                pivot_row = r
                break
        if pivot_row is None:
            return ZERO
        if pivot_row != c:
            work[c], work[pivot_row] = work[pivot_row], work[c]
            det = -det
        pivot = work[c][c]
        det = det * pivot
        for r in range(c + 1, n):
            factor = work[r][c]
            if factor:
                ratio = factor / pivot
                wc = work[c]
                work[r] = [x - ratio * y for x, y in zip(work[r], wc)]
    return det


def inverse(a: Matrix) -> Matrix:
    """Exact inverse via the rref transform (transform @ a == I)."""
    if not a.is_square:
        raise DimensionMismatchError(f"inverse needs a square matrix, got {a.shape_str()}")
    result = rref(a)
    if result.rank < a.rows:
        raise SingularMatrixError(f"matrix of rank {result.rank} < {a.rows} is not invertible")
    return result.transform


def subspace_leq(a: Matrix, b: Matrix) -> bool:
    """Exact test of R(a) <= R(b): adjoining a's columns must not raise b's rank."""
    if a.rows != b.rows:
        raise DimensionMismatchError(
            f"range comparison needs equal row counts, got {a.shape_str()} vs {b.shape_str()}"
        )
    return rank(b.hstack(a)) == rank(b)


def same_range(a: Matrix, b: Matrix) -> bool:
    return subspace_leq(a, b) and subspace_leq(b, a)


def null_space_basis(a: Matrix) -> Matrix:
    """Columns form a basis of N(a); a cols x 0 matrix when N(a) = {0}."""
    result = rref(a)
    n = a.cols
    pivots = result.pivot_cols
    free = [j for j in range(n) if j not in pivots]
    entries = [[ZERO] * len(free) for _ in range(n)]
    for k, j in enumerate(free):
        entries[j][k] = ONE
        for i, pc in enumerate(pivots):
            entries[pc][k] = -result.rref[i, j]
    return Matrix(n, len(free), [e for row in entries for e in row])


def same_null_space(a: Matrix, b: Matrix) -> bool:
    """Exact test of N(a) = N(b) by killing each null basis with the other matrix."""
    if a.cols != b.cols:
        raise DimensionMismatchError(
            f"null space comparison needs equal column counts, got {a.shape_str()} vs {b.shape_str()}"
        )
    return (b @ null_space_basis(a)).is_zero() and (a @ null_space_basis(b)).is_zero()


def full_rank_factorization(a: Matrix) -> FullRankFactorization:
    """a = f @ g with f the pivot columns of a and g the nonzero rows of rref(a).

    Rank 0 yields an n x 0 and 0 x n pair whose product is the zero matrix.
    """
    result = rref(a)
    r = result.rank
    f = a.select_columns(result.pivot_cols)
    g = Matrix(r, a.cols, [result.rref[i, j] for i in range(r) for j in range(a.cols)])
    return FullRankFactorization(f=f, g=g, rank=r)


@lru_cache(maxsize=512)
def pseudo_inverse(a: Matrix) -> Matrix:
    """Exact Moore-Penrose inverse of any (possibly rectangular) matrix.

    Built from a full-rank factorization a = f g as
    g* (g g*)^-1 (f* f)^-1 f*; the four defining identities are re-checked
    exactly before returning.
    """
    frf = full_rank_factorization(a)
    f, g = frf.f, frf.g
    fh, gh = f.H, g.H
    mp = gh @ inverse(g @ gh) @ inverse(fh @ f) @ fh
    asa = a @ mp
    sas = mp @ a
    ok = (
        asa @ a == a
        and sas @ mp == mp
        and asa.H == asa
        and sas.H == sas
    )
    if not ok:
        raise InternalInconsistencyError(
            f"pseudo-inverse construction failed its defining identities for {a!r}"
        )
    return mp


def to_float(a: Matrix) -> np.ndarray:
    """Double-precision complex copy of an exact matrix."""
    out = np.empty((a.rows, a.cols), dtype=np.complex128)
    for i in range(a.rows):
        for j, e in enumerate(a.row_list(i)):
            out[i, j] = complex(e)
    return out


def _rayleigh_limit(gram: np.ndarray, v: np.ndarray) -> float:
    """Power-iterate gram from start v; returns the limiting Rayleigh quotient.

    The quotient never exceeds the true largest eigenvalue, so the result
    approximates it from below.
    """
    lam = 0.0
    for _ in range(SPECTRAL_MAX_ITER):
        w = gram @ v
        new_lam = float(np.real(np.vdot(v, w)))
        norm_w = float(np.linalg.norm(w))
        if norm_w == 0.0:
            return max(lam, 0.0)
        v = w / norm_w
        # Relative criterion only: an absolute floor would declare victory
        # right after a nearly-annihilated step, long before the dominant
        # eigencomponent re-emerges from rounding noise.
        if abs(new_lam - lam) <= SPECTRAL_TOL * abs(new_lam):
            return max(new_lam, 0.0)
        lam = new_lam
    return max(lam, 0.0)


def spectral_norm(a: Matrix) -> float:
    """Operator 2-norm, via power iteration on a* a in double precision.

    Relative tolerance 1e-12 on the Rayleigh quotient, at most 10,000
    iterations per start. Exact rational inputs routinely produce Gram
    matrices whose dominant eigenspace is exactly orthogonal to the
    all-ones vector (e.g. a* a = [[5,-4],[-4,5]]), where a single all-ones
    start converges to a sub-dominant eigenvalue; so the iteration also
    runs from every standard basis vector (no nonzero eigenspace is
    orthogonal to all of them) and the largest limit wins. All starts are
    deterministic, and each limit approximates the true value from below.
    """
    if a.rows == 0 or a.cols == 0:
        return 0.0
    m = to_float(a)
    gram = m.conj().T @ m
    n = a.cols
    lam = _rayleigh_limit(gram, np.ones(n) / math.sqrt(n))
    for i in range(n):
        basis = np.zeros(n)
        basis[i] = 1.0
        lam = max(lam, _rayleigh_limit(gram, basis))
    return math.sqrt(lam)


def frobenius_norm_sq(a: Matrix) -> Fraction:
    """Exact squared Frobenius norm: sum of |entry|^2.

    Satisfies spectral_norm(a)^2 <= frobenius_norm_sq(a), so an exact
    frobenius_norm_sq(a) < 1 certifies operator norm < 1 with no float
    involvement.
    """
    total = Fraction(0)
    for i in range(a.rows):
        for e in a.row_list(i):
            total += e.abs_sq()
    return total

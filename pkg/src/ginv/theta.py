"""The seven defining equations and the named inverses built from them.

For square matrices T, S the equations are

    (1) TST = T        (2) STS = S        (3) (TS)* = TS
    (4) (ST)* = ST     (5) TS = ST        (6) ST^2 = T       (7) TS^2 = S

A theta-inverse of T is any S satisfying every equation in a chosen subset
theta. {1,2,3,4} is the Moore-Penrose inverse, {1,2,5} the group inverse,
and {1,3,7} (equivalently {1,2,3,6,7}) the core inverse. All checks are
exact; every constructor re-verifies its defining equations before
returning and raises InternalInconsistencyError if they fail.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from . import linalg
from .errors import (
    DimensionMismatchError,
    IndexExceedsOneError,
    InternalInconsistencyError,
    SingularMatrixError,
)
from .exact import Matrix

EQUATION_IDS = frozenset(range(1, 8))

THETA_NAMES: dict[str, frozenset[int]] = {
    "inner": frozenset({1}),
    "outer": frozenset({2}),
    "generalized": frozenset({1, 2}),
    "moore_penrose": frozenset({1, 2, 3, 4}),
    "group": frozenset({1, 2, 5}),
    "core_matrix": frozenset({1, 3, 7}),
    "core_operator": frozenset({1, 2, 3, 6, 7}),
}

ThetaLike = Union[str, Iterable[int]]


def resolve_theta(theta: ThetaLike) -> frozenset[int]:
    """Normalize a named alias or a collection of equation ids to a frozenset."""
    if isinstance(theta, str):
        try:
            return THETA_NAMES[theta]
        except KeyError:
            raise ValueError(
                f"unknown theta alias {theta!r}; known: {sorted(THETA_NAMES)}"
            ) from None
    ids = frozenset(int(i) for i in theta)
    if not ids:
        raise ValueError("theta set must be nonempty")
    if not ids <= EQUATION_IDS:
        raise ValueError(f"equation ids must lie in 1..7, got {sorted(ids)}")
    return ids


def _require_square_pair(t: Matrix, s: Matrix) -> None:
    if not t.is_square or not s.is_square or t.rows != s.rows:
        raise DimensionMismatchError(
            f"theta checks need square matrices of equal size, got {t.shape_str()} and {s.shape_str()}"
        )


def check_equation(eq_id: int, t: Matrix, s: Matrix) -> bool:
    """Exact evaluation of one defining equation; no tolerances anywhere."""
    _require_square_pair(t, s)
    if eq_id == 1:
        return t @ s @ t == t
    if eq_id == 2:
        return s @ t @ s == s
    if eq_id == 3:
        ts = t @ s
        return ts.H == ts
    if eq_id == 4:
        st = s @ t
        return st.H == st
    if eq_id == 5:
        return t @ s == s @ t
    if eq_id == 6:
        return s @ t @ t == t
    if eq_id == 7:
        return t @ s @ s == s
    raise ValueError(f"equation id must lie in 1..7, got {eq_id}")


def is_theta_inverse(theta: ThetaLike, t: Matrix, s: Matrix) -> bool:
    """True iff s satisfies every equation in theta for t."""
    ids = resolve_theta(theta)
    return all(check_equation(i, t, s) for i in sorted(ids))


@dataclass(frozen=True)
class IndexReport:
    """index = smallest k with rank(T^k) = rank(T^(k+1)); sequence starts at T^0."""

    index: int
    rank_sequence: tuple[int, ...]


def index(t: Matrix) -> IndexReport:
    """Rank the successive powers T^0, T^1, ... until the rank stabilizes.

    The rank strictly decreases until it stabilizes, so at most t.rows + 1
    powers are ever needed.
    """
    if not t.is_square:
        raise DimensionMismatchError(f"index needs a square matrix, got {t.shape_str()}")
    n = t.rows
    ranks = [n]
    power = t
    for k in range(1, n + 2):
        ranks.append(linalg.rank(power))
        if ranks[k] == ranks[k - 1]:
            return IndexReport(index=k - 1, rank_sequence=tuple(ranks))
        power = power @ t
    raise InternalInconsistencyError(f"rank sequence failed to stabilize for {t!r}")


def moore_penrose(t: Matrix) -> Matrix:
    """The unique {1,2,3,4}-inverse; exists for every square matrix."""
    if not t.is_square:
        raise DimensionMismatchError(
            f"theta-level moore_penrose needs a square matrix, got {t.shape_str()};"
            " use linalg.pseudo_inverse for rectangular input"
        )
    return linalg.pseudo_inverse(t)


def group_inverse(t: Matrix) -> Matrix:
    """The unique {1,2,5}-inverse f (gf)^-2 g; exists iff index(t) <= 1."""
    if not t.is_square:
        raise DimensionMismatchError(f"group_inverse needs a square matrix, got {t.shape_str()}")
    frf = linalg.full_rank_factorization(t)
    gf = frf.g @ frf.f
    try:
        gf_inv = linalg.inverse(gf)
    except SingularMatrixError:
        raise IndexExceedsOneError(
            f"no group inverse: index of {t.shape_str()} matrix exceeds 1 (g@f singular)"
        ) from None
    result = frf.f @ gf_inv @ gf_inv @ frf.g
    if not (check_equation(1, t, result) and check_equation(2, t, result) and check_equation(5, t, result)):
        raise InternalInconsistencyError(f"group inverse construction failed equations (1),(2),(5) for {t!r}")
    return result


def core_inverse(t: Matrix) -> Matrix:
    """The core inverse f (gf)^-1 (f* f)^-1 f*; exists iff index(t) <= 1.

    Verified exactly against all of: equations (1),(2),(3),(6),(7),
    T T_core = P_T, R(T_core) = R(T) and N(T_core) = N(T*).
    """
    if not t.is_square:
        raise DimensionMismatchError(f"core_inverse needs a square matrix, got {t.shape_str()}")
    frf = linalg.full_rank_factorization(t)
    f = frf.f
    gf = frf.g @ f
    try:
        gf_inv = linalg.inverse(gf)
    except SingularMatrixError:
        raise IndexExceedsOneError(
            f"no core inverse: index of {t.shape_str()} matrix exceeds 1 (g@f singular)"
        ) from None
    fh = f.H
    result = f @ gf_inv @ linalg.inverse(fh @ f) @ fh
    ok = (
        all(check_equation(i, t, result) for i in (1, 2, 3, 6, 7))
        and t @ result == orthogonal_projector(t)
        and linalg.same_range(result, t)
        and linalg.same_null_space(result, t.H)
    )
    if not ok:
        raise InternalInconsistencyError(f"core inverse construction failed verification for {t!r}")
    return result


def orthogonal_projector(t: Matrix) -> Matrix:
    """P_T = t @ pinv(t): the Hermitian idempotent projecting onto R(t)."""
    return t @ linalg.pseudo_inverse(t)


def is_core_inverse_def11(t: Matrix, s: Matrix) -> bool:
    """Projector-based characterization: t s = P_t and R(s) <= R(t).

    Requires index(t) <= 1 (raises IndexExceedsOneError otherwise), matching
    the setting in which the core inverse is defined.
    """
    _require_square_pair(t, s)
    if index(t).index > 1:
        raise IndexExceedsOneError(f"definition requires index <= 1, got index {index(t).index}")
    return t @ s == orthogonal_projector(t) and linalg.subspace_leq(s, t)


def is_core_inverse_def12(t: Matrix, s: Matrix) -> bool:
    """Operator-style characterization: tst = t, R(s) = R(t), N(s) = N(t*)."""
    _require_square_pair(t, s)
    return (
        t @ s @ t == t
        and linalg.same_range(s, t)
        and linalg.same_null_space(s, t.H)
    )

"""Perturbed core inverses via the resolvent-style expression.

Given T with core inverse T_core and a perturbation dT such that
I + T_core dT is invertible, the candidate

    B = T_core (I + dT T_core)^-1 = (I + T_core dT)^-1 T_core

is the core inverse of T + dT exactly when the perturbation preserves the
range of T. `analyze` evaluates the candidate, four equivalent forms of the
range condition, and the float norm bounds, and raises
TheoremFalsificationError if any exactly-checkable equivalence breaks:
every call doubles as a machine check of the underlying result.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import linalg, theta
from .errors import (
    DimensionMismatchError,
    InternalInconsistencyError,
    SingularMatrixError,
    TheoremFalsificationError,
)
from .exact import Matrix
from .linalg import frobenius_norm_sq, spectral_norm

REL_SLACK = 1e-9


def _leq_with_slack(lhs: float, rhs: float) -> bool:
    return lhs <= rhs + REL_SLACK * max(1.0, abs(lhs), abs(rhs))


def _require_square_same(op: str, *matrices: Matrix) -> int:
    n = matrices[0].rows
    for m in matrices:
        if not m.is_square or m.rows != n:
            raise DimensionMismatchError(
                f"{op} needs square matrices of one common size, got "
                + ", ".join(x.shape_str() for x in matrices)
            )
    return n


@dataclass(frozen=True)
class PerturbationCase:
    """An admissible input: t, its perturbation, and a verified core inverse.

    `t_core` may be supplied by the caller as any matrix passing the
    {1,3,7} equations (it is then automatically the core inverse);
    `core_full_check` records whether it also passed {1,2,3,6,7}.
    """

    t: Matrix
    delta_t: Matrix
    t_bar: Matrix
    t_core: Matrix
    core_full_check: bool

    @classmethod
    def build(cls, t: Matrix, delta_t: Matrix, t_core: Matrix | None = None) -> "PerturbationCase":
        _require_square_same("perturbation case", t, delta_t)
        if t_core is None:
            t_core = theta.core_inverse(t)
        if not theta.is_theta_inverse("core_matrix", t, t_core):
            raise ValueError("supplied t_core does not satisfy the {1,3,7} equations for t")
        return cls(
            t=t,
            delta_t=delta_t,
            t_bar=t + delta_t,
            t_core=t_core,
            core_full_check=theta.is_theta_inverse("core_operator", t, t_core),
        )


class RangeConditions(NamedTuple):
    """The four equivalent forms of the range-preservation condition.

    Each is computed independently (no shortcut through the equivalence
    theorem), so their pairwise agreement is a genuine check.
    """

    range_subset: bool  # R(t + dt) <= R(t)
    range_equal: bool  # R(t + dt) = R(t)
    left: bool  # t t_core dt == dt
    right: bool  # t_core t dt == dt


def simplest_expression(t_core: Matrix, delta_t: Matrix) -> Matrix:
    """B = (I + t_core dt)^-1 t_core, with the two-sided form checked exactly.

    Raises SingularMatrixError when I + t_core dt is not invertible.
    Invertibility of one factor implies invertibility of the other
    (det(I+AB) = det(I+BA)), so a one-sided failure is an internal bug.
    """
    n = _require_square_same("simplest_expression", t_core, delta_t)
    eye = Matrix.identity(n)
    try:
        right_form = linalg.inverse(eye + t_core @ delta_t) @ t_core
    except SingularMatrixError:
        raise SingularMatrixError("I + t_core @ delta_t is exactly singular") from None
    try:
        left_form = t_core @ linalg.inverse(eye + delta_t @ t_core)
    except SingularMatrixError:
        raise InternalInconsistencyError(
            "I + delta_t @ t_core singular although I + t_core @ delta_t is not"
        ) from None
    if left_form != right_form:
        raise InternalInconsistencyError("the two resolvent forms of B differ")
    return right_form


def range_conditions(t: Matrix, t_core: Matrix, delta_t: Matrix) -> RangeConditions:
    """Evaluate all four range-condition forms, each from first principles."""
    _require_square_same("range_conditions", t, t_core, delta_t)
    t_bar = t + delta_t
    projector = t @ t_core
    return RangeConditions(
        range_subset=linalg.subspace_leq(t_bar, t),
        range_equal=linalg.same_range(t_bar, t),
        left=projector @ delta_t == delta_t,
        right=t_core @ t @ delta_t == delta_t,
    )


@dataclass(frozen=True)
class NormBoundReport:
    """Float evaluation of the norm bounds, with an exact Frobenius audit.

    All norms are operator 2-norms in double precision; inequality checks
    carry relative slack REL_SLACK. `frob_sq_tcore_dt` < 1 certifies
    ||t_core dt|| < 1 with no float involvement, making the norm-choice
    assumption auditable.
    """

    norm_t_core: float
    norm_tcore_dt: float
    norm_resolvent: float
    norm_b: float
    norm_b_minus_tcore: float
    product_bound_ok: bool  # ||B|| <= ||t_core|| * ||resolvent||
    difference_bound_ok: bool  # ||B - t_core|| <= ||t_core|| * ||resolvent|| * ||t_core dt||
    sandwich_applicable: bool  # ||t_core dt|| < 1
    sandwich_lower_ok: bool | None
    sandwich_upper_ok: bool | None
    frob_sq_tcore_dt: Fraction
    frob_certifies_contraction: bool

    @property
    def bounds_satisfied(self) -> bool:
        ok = self.product_bound_ok and self.difference_bound_ok
        if self.sandwich_applicable:
            ok = ok and bool(self.sandwich_lower_ok) and bool(self.sandwich_upper_ok)
        return ok


def norm_bounds(t_core: Matrix, delta_t: Matrix, b: Matrix) -> NormBoundReport:
    """Check the norm bounds for a B produced by simplest_expression."""
    n = _require_square_same("norm_bounds", t_core, delta_t, b)
    eye = Matrix.identity(n)
    tcore_dt = t_core @ delta_t
    resolvent = linalg.inverse(eye + tcore_dt)

    norm_t_core = spectral_norm(t_core)
    norm_tcore_dt = spectral_norm(tcore_dt)
    norm_resolvent = spectral_norm(resolvent)
    norm_b = spectral_norm(b)
    norm_b_minus_tcore = spectral_norm(b - t_core)

    product_bound_ok = _leq_with_slack(norm_b, norm_t_core * norm_resolvent)
    difference_bound_ok = _leq_with_slack(
        norm_b_minus_tcore, norm_t_core * norm_resolvent * norm_tcore_dt
    )
    sandwich_applicable = norm_tcore_dt < 1.0
    sandwich_lower_ok = sandwich_upper_ok = None
    if sandwich_applicable:
        sandwich_lower_ok = _leq_with_slack(norm_t_core / (1.0 + norm_tcore_dt), norm_b)
        sandwich_upper_ok = _leq_with_slack(norm_b, norm_t_core / (1.0 - norm_tcore_dt))
    frob_sq = frobenius_norm_sq(tcore_dt)
    return NormBoundReport(
        norm_t_core=norm_t_core,
        norm_tcore_dt=norm_tcore_dt,
        norm_resolvent=norm_resolvent,
        norm_b=norm_b,
        norm_b_minus_tcore=norm_b_minus_tcore,
        product_bound_ok=product_bound_ok,
        difference_bound_ok=difference_bound_ok,
        sandwich_applicable=sandwich_applicable,
        sandwich_lower_ok=sandwich_lower_ok,
        sandwich_upper_ok=sandwich_upper_ok,
        frob_sq_tcore_dt=frob_sq,
        frob_certifies_contraction=frob_sq < 1,
    )


@dataclass(frozen=True)
class PerturbationVerdict:
    """Complete report for one (t, delta_t) instance.

    Whenever `invertible` is true the four condition booleans agree with
    each other and with `is_core_of_tbar`; analyze() raises
    TheoremFalsificationError instead of returning a verdict that would
    violate this.
    """

    invertible: bool
    b: Matrix | None
    condition_range_subset: bool
    condition_range_equal: bool
    condition_left: bool
    condition_right: bool
    is_core_of_tbar: bool
    tbar_b: Matrix | None
    norm_t_core: float
    norm_tcore_dt: float
    norm_resolvent: float | None
    norm_b: float | None
    norm_b_minus_tcore: float | None
    sandwich_applicable: bool
    bounds_satisfied: bool
    bound_report: NormBoundReport | None

    @property
    def conditions_hold(self) -> bool:
        return self.condition_range_subset


def analyze(case: PerturbationCase) -> PerturbationVerdict:
    """Evaluate the full verdict for one perturbation case.

    `is_core_of_tbar` is always computed from the defining equations,
    never inferred from the range conditions, so each call independently
    re-tests the equivalence.
    """
    t, delta_t, t_bar, t_core = case.t, case.delta_t, case.t_bar, case.t_core
    conds = range_conditions(t, t_core, delta_t)
    try:
        b = simplest_expression(t_core, delta_t)
    except SingularMatrixError:
        return PerturbationVerdict(
            invertible=False,
            b=None,
            condition_range_subset=conds.range_subset,
            condition_range_equal=conds.range_equal,
            condition_left=conds.left,
            condition_right=conds.right,
            is_core_of_tbar=False,
            tbar_b=None,
            norm_t_core=spectral_norm(t_core),
            norm_tcore_dt=spectral_norm(t_core @ delta_t),
            norm_resolvent=None,
            norm_b=None,
            norm_b_minus_tcore=None,
            sandwich_applicable=False,
            bounds_satisfied=True,
            bound_report=None,
        )

    is_core = theta.is_theta_inverse("core_operator", t_bar, b)
    tbar_b = t_bar @ b
    report = norm_bounds(t_core, delta_t, b)

    flags = {conds.range_subset, conds.range_equal, conds.left, conds.right}
    if len(flags) != 1:
        raise TheoremFalsificationError(
            f"equivalent range conditions disagree: {conds} for t={t}, delta_t={delta_t}"
        )
    common = conds.range_subset
    if is_core != common:
        raise TheoremFalsificationError(
            f"range condition is {common} but core-inverse check of B is {is_core} "
            f"for t={t}, delta_t={delta_t}"
        )
    if common:
        if tbar_b != t @ t_core:
            raise TheoremFalsificationError(
                f"conditions hold but (t+dt) @ B != t @ t_core for t={t}, delta_t={delta_t}"
            )
        if t_bar != t @ (Matrix.identity(t.rows) + t_core @ delta_t):
            raise TheoremFalsificationError(
                f"conditions hold but t+dt != t (I + t_core dt) for t={t}, delta_t={delta_t}"
            )
    return PerturbationVerdict(
        invertible=True,
        b=b,
        condition_range_subset=conds.range_subset,
        condition_range_equal=conds.range_equal,
        condition_left=conds.left,
        condition_right=conds.right,
        is_core_of_tbar=is_core,
        tbar_b=tbar_b,
        norm_t_core=report.norm_t_core,
        norm_tcore_dt=report.norm_tcore_dt,
        norm_resolvent=report.norm_resolvent,
        norm_b=report.norm_b,
        norm_b_minus_tcore=report.norm_b_minus_tcore,
        sandwich_applicable=report.sandwich_applicable,
        bounds_satisfied=report.bounds_satisfied,
        bound_report=report,
    )

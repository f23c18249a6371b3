"""Built-in golden fixtures: two 4x4 perturbation instances.

The first perturbation preserves the range of T, so the resolvent-style
candidate B is the core inverse of T + dT. The second preserves the null
space and the rank but changes the range; the candidate is then provably
not the core inverse, witnessing that null-space- and rank-preservation
are not enough. Every matrix below is stored exactly, and
`fixture_checks()` re-derives each one from scratch and compares
bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg, perturbation, theta
from .exact import Matrix


def _scaled(denominator: int, rows: list[list[int]]) -> Matrix:
    return Matrix.from_rows([[Fraction(x, denominator) for x in row] for row in rows])


@dataclass(frozen=True)
class PerturbationFixture:
    """One frozen (t, delta_t) instance with its expected exact results."""

    name: str
    t: Matrix
    delta_t: Matrix
    t_bar: Matrix
    expected_b: Matrix
    range_preserving: bool
    t_core: Matrix | None = None  # expected core inverse of t, when fixed
    tbar_core: Matrix | None = None  # expected core inverse of t_bar, when fixed
    range_span: Matrix | None = None  # columns spanning R(t) = R(t_bar)
    probe: Matrix | None = None  # vector in R(t) but not in R(t_bar)


_T = Matrix.from_rows(
    [
        [1, 0, 2, 4],
        [2, 1, -1, 0],
        [2, 2, 0, 1],
        [1, -2, 0, 2],
    ]
)

_T_CORE = _scaled(
    120,
    [
        [-30, 60, 40, 10],
        [21, -18, 8, -31],
        [-15, 30, 40, -35],
        [42, -36, -24, 18],
    ],
)


def range_preserving_fixture() -> PerturbationFixture:
    """The instance whose perturbation keeps R(t + dt) = R(t)."""
    return PerturbationFixture(
        name="range-preserving",
        t=_T,
        delta_t=Matrix.from_rows(
            [
                [0, -1, 0, -4],
                [-2, -2, -2, 2],
                [-4, -2, -4, 0],
                [4, -1, 4, 0],
            ]
        ),
        t_bar=Matrix.from_rows(
            [
                [1, -1, 2, 0],
                [0, -1, -3, 2],
                [-2, 0, -4, 1],
                [5, -3, 4, 2],
            ]
        ),
        t_core=_T_CORE,
        expected_b=_scaled(
            90,
            [
                [30, 0, 10, 10],
                [-201, 18, -88, 11],
                [-75, 0, -40, 5],
                [-222, 36, -86, 22],
            ],
        ),
        range_preserving=True,
        range_span=Matrix.from_rows(
            [
                [1, 0, 2],
                [2, 1, -1],
                [2, 2, 0],
                [1, -2, 0],
            ]
        ),
    )


def range_violating_fixture() -> PerturbationFixture:
    """Same t; the perturbation preserves null space and rank but not range."""
    return PerturbationFixture(
        name="range-violating",
        t=_T,
        delta_t=Matrix.from_rows(
            [
                [1, 0, -2, -2],
                [-2, 1, 1, -1],
                [-2, -2, 2, 2],
                [-1, 2, 0, -2],
            ]
        ),
        t_bar=Matrix.from_rows(
            [
                [2, 0, 0, 2],
                [0, 2, 0, -1],
                [0, 0, 2, 3],
                [0, 0, 0, 0],
            ]
        ),
        t_core=_T_CORE,
        expected_b=_scaled(
            8,
            [
                [6, 4, -4, 22],
                [-1, 2, 2, -1],
                [3, 6, -2, 19],
                [-2, -4, 4, -18],
            ],
        ),
        range_preserving=False,
        tbar_core=_scaled(
            2,
            [
                [1, 0, 0, 0],
                [0, 1, 0, 0],
                [0, 0, 1, 0],
                [0, 0, 0, 0],
            ]
        ),
        probe=Matrix.from_rows([[1], [2], [2], [1]]),
    )


@dataclass(frozen=True)
class FixtureCheck:
    name: str
    passed: bool
    detail: str


def _check(name: str, passed: bool, detail: str = "") -> FixtureCheck:
    return FixtureCheck(name=name, passed=passed, detail=detail)


def fixture_checks() -> list[FixtureCheck]:
    """Recompute both fixtures end to end; every comparison is exact."""
    checks: list[FixtureCheck] = []

    fx = range_preserving_fixture()
    checks.append(_check(f"{fx.name}: t + delta_t matches stored t_bar", fx.t + fx.delta_t == fx.t_bar))
    checks.append(_check(f"{fx.name}: rank(t) = 3", linalg.rank(fx.t) == 3))
    t_core = theta.core_inverse(fx.t)
    checks.append(_check(f"{fx.name}: core inverse of t (denominator 120)", t_core == fx.t_core))
    b = perturbation.simplest_expression(t_core, fx.delta_t)
    checks.append(_check(f"{fx.name}: resolvent expression B (denominator 90)", b == fx.expected_b))
    case = perturbation.PerturbationCase.build(fx.t, fx.delta_t, t_core)
    verdict = perturbation.analyze(case)
    checks.append(
        _check(
            f"{fx.name}: all four range conditions hold",
            verdict.invertible
            and verdict.condition_range_subset
            and verdict.condition_range_equal
            and verdict.condition_left
            and verdict.condition_right,
        )
    )
    checks.append(_check(f"{fx.name}: B is the core inverse of t_bar", verdict.is_core_of_tbar))
    checks.append(
        _check(
            f"{fx.name}: t_bar @ B equals t @ t_core exactly",
            verdict.tbar_b == fx.t @ t_core,
        )
    )
    checks.append(
        _check(
            f"{fx.name}: direct core inverse of t_bar equals B",
            theta.core_inverse(fx.t_bar) == fx.expected_b,
        )
    )
    assert fx.range_span is not None
    checks.append(
        _check(
            f"{fx.name}: stored three-column span equals R(t) and R(t_bar)",
            linalg.same_range(fx.range_span, fx.t) and linalg.same_range(fx.range_span, fx.t_bar),
        )
    )
    checks.append(
        _check(
            f"{fx.name}: norm bounds hold",
            verdict.bounds_satisfied,
            detail=f"sandwich_applicable={verdict.sandwich_applicable}",
        )
    )

    fx = range_violating_fixture()
    checks.append(_check(f"{fx.name}: t + delta_t matches stored t_bar", fx.t + fx.delta_t == fx.t_bar))
    assert fx.probe is not None
    checks.append(
        _check(
            f"{fx.name}: probe vector lies in R(t) but not in R(t_bar)",
            linalg.subspace_leq(fx.probe, fx.t) and not linalg.subspace_leq(fx.probe, fx.t_bar),
        )
    )
    checks.append(
        _check(
            f"{fx.name}: core inverse of t_bar (denominator 2)",
            theta.core_inverse(fx.t_bar) == fx.tbar_core,
        )
    )
    t_core = theta.core_inverse(fx.t)
    b = perturbation.simplest_expression(t_core, fx.delta_t)
    checks.append(_check(f"{fx.name}: resolvent expression B (denominator 8)", b == fx.expected_b))
    assert fx.tbar_core is not None
    checks.append(
        _check(
            f"{fx.name}: B differs from the core inverse of t_bar",
            b != fx.tbar_core,
        )
    )
    case = perturbation.PerturbationCase.build(fx.t, fx.delta_t, t_core)
    verdict = perturbation.analyze(case)
    checks.append(
        _check(
            f"{fx.name}: expression invertible yet all four conditions fail",
            verdict.invertible
            and not verdict.condition_range_subset
            and not verdict.condition_range_equal
            and not verdict.condition_left
            and not verdict.condition_right,
        )
    )
    checks.append(_check(f"{fx.name}: B is not the core inverse of t_bar", not verdict.is_core_of_tbar))
    checks.append(
        _check(
            f"{fx.name}: null space preserved, N(t_bar) = N(t)",
            linalg.same_null_space(fx.t_bar, fx.t),
        )
    )
    checks.append(
        _check(
            f"{fx.name}: rank preserved, rank(t_bar) = rank(t) = 3",
            linalg.rank(fx.t_bar) == linalg.rank(fx.t) == 3,
        )
    )
    return checks

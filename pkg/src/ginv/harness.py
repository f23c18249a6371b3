"""Randomized instance generation and counterexample search.

Campaigns draw index-<=1 matrices and perturbations from the relevant
condition classes, re-check every exactly-decidable equivalence on each
instance, and report violations as data. A campaign is a deterministic
function of (kind, trials, config): each trial derives its own sub-seed,
so any violation can be replayed from the seed printed in the report.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg, perturbation, theta
from .errors import (
    GenerationExhaustedError,
    GinvError,
    ImpossibleRequestError,
    TheoremFalsificationError,
)
from .exact import Matrix
from .fixtures import range_violating_fixture

CAMPAIGN_KINDS = (
    "theorem_2_1",
    "theorem_2_2",
    "remark_2_1",
    "characterizations",
    "corollary_bounds",
)

_MAX_SEED = 2**64


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters for random exact matrices.

    Entries are rationals with numerator in [-entry_bound, entry_bound] and
    denominator in [1, entry_bound]. rank=None lets each trial draw its own
    rank; a fixed value pins it. Generation is a deterministic function of
    the seed.
    """

    dim: int
    rank: int | None = None
    entry_bound: int = 5
    seed: int = 0
    max_retries: int = 64

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"dim must be positive, got {self.dim}")
        if self.rank is not None and not 0 <= self.rank <= self.dim:
            raise ValueError(f"rank must lie in [0, {self.dim}], got {self.rank}")
        if self.entry_bound < 1:
            raise ValueError(f"entry_bound must be positive, got {self.entry_bound}")
        if not 0 <= self.seed < _MAX_SEED:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.max_retries < 1:
            raise ValueError(f"max_retries must be positive, got {self.max_retries}")


def _sub_seed(cfg: GeneratorConfig, label: str, trial: int) -> int:
    # String seeding runs through SHA-512 inside random.Random, so this is
    # reproducible across processes and platforms.
    rng = random.Random(f"{label}:{cfg.seed}:{trial}")
    return rng.getrandbits(63)


def _rng(seed: int) -> random.Random:
    return random.Random(seed)


def _random_fraction(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _random_matrix(rng: random.Random, rows: int, cols: int, bound: int) -> Matrix:
    return Matrix(rows, cols, [_random_fraction(rng, bound) for _ in range(rows * cols)])


def random_index_one_matrix(cfg: GeneratorConfig, rng: random.Random | None = None) -> Matrix:
    """A random dim x dim matrix of the configured rank with index(t) <= 1.

    Built as f @ g with g @ f invertible; both the index bound and the rank
    are re-verified before returning.
    """
    if rng is None:
        rng = _rng(_sub_seed(cfg, "gen", 0))
    r = cfg.rank if cfg.rank is not None else rng.randint(0, cfg.dim)
    if r == 0:
        return Matrix.zeros(cfg.dim, cfg.dim)
    for _ in range(cfg.max_retries):
        f = _random_matrix(rng, cfg.dim, r, cfg.entry_bound)
        g = _random_matrix(rng, r, cfg.dim, cfg.entry_bound)
        if not linalg.determinant(g @ f):
            continue
        t = f @ g
        if theta.index(t).index > 1 or linalg.rank(t) != r:
            raise TheoremFalsificationError(
                f"f @ g with g @ f invertible produced index > 1 or wrong rank: {t}"
            )
        return t
    raise GenerationExhaustedError(
        f"no rank-{r} index-1 matrix found in {cfg.max_retries} tries "
        f"(dim={cfg.dim}, entry_bound={cfg.entry_bound}; singular g@f draws are "
        "rare, so this signals an inadequate entry_bound)"
    )


def _rescale_until_invertible(
    t_core: Matrix, candidate: Matrix, max_retries: int
) -> Matrix:
    """Halve a rational scale factor until I + t_core (s * candidate) is invertible.

    det(I + s t_core candidate) is a nonzero polynomial in s (it is 1 at
    s=0), so only finitely many scales can fail.
    """
    n = t_core.rows
    eye = Matrix.identity(n)
    scale = Fraction(1)
    for _ in range(max_retries):
        scaled = candidate.scale(scale)
        if linalg.determinant(eye + t_core @ scaled):
            return scaled
        scale /= 2
    raise GenerationExhaustedError(
        f"could not rescale a perturbation to invertibility in {max_retries} halvings"
    )


def random_range_preserving_perturbation(
    t: Matrix, t_core: Matrix, cfg: GeneratorConfig, rng: random.Random | None = None
) -> Matrix:
    """A perturbation with t t_core dt == dt and I + t_core dt invertible."""
    if rng is None:
        rng = _rng(_sub_seed(cfg, "gen-preserve", 0))
    projector = t @ t_core
    raw = projector @ _random_matrix(rng, t.rows, t.cols, cfg.entry_bound)
    dt = _rescale_until_invertible(t_core, raw, cfg.max_retries)
    if projector @ dt != dt:
        raise TheoremFalsificationError("projected perturbation escaped the range of t")
    return dt


def random_range_violating_perturbation(
    t: Matrix, t_core: Matrix, cfg: GeneratorConfig, rng: random.Random | None = None
) -> Matrix:
    """A perturbation with t t_core dt != dt and I + t_core dt invertible.

    Builds dt by injecting a component through I - t t_core; a
    range-preserving component is mixed in half the time for diversity.
    Raises ImpossibleRequestError when t has full rank (then R(t) is the
    whole space and no violation exists).
    """
    if rng is None:
        rng = _rng(_sub_seed(cfg, "gen-violate", 0))
    n = t.rows
    if linalg.rank(t) == n:
        raise ImpossibleRequestError(
            "a full-rank t admits no range-violating perturbation: R(t) is everything"
        )
    projector = t @ t_core
    complement = Matrix.identity(n) - projector
    for _ in range(cfg.max_retries):
        outside = complement @ _random_matrix(rng, n, n, cfg.entry_bound)
        if outside.is_zero():
            continue
        candidate = outside
        if rng.random() < 0.5:
            candidate = candidate + projector @ _random_matrix(rng, n, n, cfg.entry_bound)
        dt = _rescale_until_invertible(t_core, candidate, cfg.max_retries)
        if projector @ dt != dt:
            return dt
    raise GenerationExhaustedError(
        f"no range-violating perturbation found in {cfg.max_retries} tries"
    )


@dataclass(frozen=True)
class Violation:
    seed: int
    case: str
    invariant: str


@dataclass(frozen=True)
class FuzzReport:
    kind: str
    trials: int
    violations: tuple[Violation, ...]
    elapsed: float
    stats: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations


class _TrialLog:
    """Collects violations and counters for one campaign."""

    def __init__(self) -> None:
        self.violations: list[Violation] = []
        self.stats: dict[str, int] = {}

    def bump(self, key: str, amount: int = 1) -> None:
        self.stats[key] = self.stats.get(key, 0) + amount

    def violation(self, seed: int, case: str, invariant: str) -> None:
        self.violations.append(Violation(seed=seed, case=case, invariant=invariant))


def _draw_rank(cfg: GeneratorConfig, rng: random.Random, max_rank: int | None = None) -> int:
    hi = cfg.dim if max_rank is None else max_rank
    if cfg.rank is not None:
        return min(cfg.rank, hi)
    return rng.randint(0, hi)


def _trial_characterizations(cfg: GeneratorConfig, rng: random.Random, seed: int, log: _TrialLog) -> None:
    r = _draw_rank(cfg, rng)
    t = random_index_one_matrix(GeneratorConfig(cfg.dim, r, cfg.entry_bound, cfg.seed, cfg.max_retries), rng)
    desc = f"t={t}"
    core = theta.core_inverse(t)
    mp = theta.moore_penrose(t)
    grp = theta.group_inverse(t)
    corrupted = core + _random_matrix(rng, cfg.dim, cfg.dim, 1)
    noise = _random_matrix(rng, cfg.dim, cfg.dim, cfg.entry_bound)
    passing: list[Matrix] = []
    for tag, s in (("core", core), ("mp", mp), ("group", grp), ("corrupted", corrupted), ("random", noise)):
        answers = {
            "def_projector": theta.is_core_inverse_def11(t, s),
            "def_operator": theta.is_core_inverse_def12(t, s),
            "theta_137": theta.is_theta_inverse("core_matrix", t, s),
            "theta_12367": theta.is_theta_inverse("core_operator", t, s),
        }
        if len(set(answers.values())) != 1:
            log.violation(seed, f"{desc}, candidate {tag}={s}", f"characterizations disagree: {answers}")
        if answers["theta_137"]:
            passing.append(s)
        log.bump("candidates_checked")
    for s in passing:
        if s != core:
            log.violation(seed, f"{desc}, impostor {s}", "uniqueness: a second {1,3,7}-inverse appeared")
    log.bump("uniqueness_checked", len(passing))
    if grp @ t @ mp != core:
        log.violation(seed, desc, "bridge identity group @ t @ mp == core failed")
    log.bump("bridge_checked")
    if r == cfg.dim and core != linalg.inverse(t):
        log.violation(seed, desc, "invertible special case: core inverse differs from the inverse")


def _trial_perturbation(
    cfg: GeneratorConfig,
    rng: random.Random,
    seed: int,
    log: _TrialLog,
    check_theorem_21: bool,
    violate: bool,
) -> None:
    max_rank = cfg.dim - 1 if violate else None
    r = _draw_rank(cfg, rng, max_rank)
    sub = GeneratorConfig(cfg.dim, r, cfg.entry_bound, cfg.seed, cfg.max_retries)
    t = random_index_one_matrix(sub, rng)
    t_core = theta.core_inverse(t)
    if violate:
        dt = random_range_violating_perturbation(t, t_core, sub, rng)
        log.bump("violating")
    else:
        dt = random_range_preserving_perturbation(t, t_core, sub, rng)
        log.bump("preserving")
    desc = f"t={t}, dt={dt}"
    case = perturbation.PerturbationCase.build(t, dt, t_core)
    try:
        verdict = perturbation.analyze(case)
    except TheoremFalsificationError as exc:
        log.violation(seed, desc, f"analyze falsification: {exc}")
        return
    if not verdict.invertible:
        log.violation(seed, desc, "generator promised invertibility but analyze disagreed")
        return
    expected = not violate
    actual = (
        verdict.condition_range_subset,
        verdict.condition_range_equal,
        verdict.condition_left,
        verdict.condition_right,
        verdict.is_core_of_tbar,
    )
    if actual != (expected,) * 5:
        log.violation(seed, desc, f"expected all-{expected} verdict, got {actual}")
        return
    assert verdict.b is not None
    if not verdict.bounds_satisfied:
        log.violation(seed, desc, "a norm inequality failed")
    if verdict.sandwich_applicable:
        log.bump("sandwich_checked")
    if check_theorem_21:
        is_137 = theta.is_theta_inverse("core_matrix", case.t_bar, verdict.b)
        is_full = theta.is_theta_inverse("core_operator", case.t_bar, verdict.b)
        if is_137 != expected:
            log.violation(seed, desc, f"{{1,3,7}} check of B is {is_137}, conditions say {expected}")
        if is_137 != is_full:
            log.violation(seed, desc, "{1,3,7} and {1,2,3,6,7} checks of B disagree")
    if expected and verdict.tbar_b != t @ t_core:
        log.violation(seed, desc, "t_bar @ B != t @ t_core despite conditions holding")
    log.bump("two_form_checked")  # simplest_expression verified both forms


def _trial_remark(cfg: GeneratorConfig, rng: random.Random, seed: int, log: _TrialLog) -> None:
    r = _draw_rank(cfg, rng)
    sub = GeneratorConfig(cfg.dim, r, cfg.entry_bound, cfg.seed, cfg.max_retries)
    t = random_index_one_matrix(sub, rng)
    t_core = theta.core_inverse(t)
    style = rng.randrange(4)
    if style == 0:
        # Force a singular I + t_core dt (any nonzero t makes I - t_core t singular).
        dt = -t
    elif style == 1:
        dt = -t + (Matrix.identity(cfg.dim) - t @ t_core) @ _random_matrix(
            rng, cfg.dim, cfg.dim, cfg.entry_bound
        )
    else:
        dt = _random_matrix(rng, cfg.dim, cfg.dim, cfg.entry_bound)
    left = t @ t_core @ dt == dt
    right = t_core @ t @ dt == dt
    if left != right:
        log.violation(seed, f"t={t}, dt={dt}", f"left/right fixing conditions disagree: {left} vs {right}")
    if not linalg.determinant(Matrix.identity(cfg.dim) + t_core @ dt):
        log.bump("singular_cases")
    log.bump("pairs_checked")


def _trial_bounds(cfg: GeneratorConfig, rng: random.Random, seed: int, log: _TrialLog) -> None:
    r = _draw_rank(cfg, rng)
    sub = GeneratorConfig(cfg.dim, r, cfg.entry_bound, cfg.seed, cfg.max_retries)
    t = random_index_one_matrix(sub, rng)
    t_core = theta.core_inverse(t)
    dt = random_range_preserving_perturbation(t, t_core, sub, rng)
    if rng.random() < 0.5:
        # Shrink until the contraction condition holds so the sandwich is exercised.
        for _ in range(cfg.max_retries):
            if linalg.frobenius_norm_sq(t_core @ dt) < 1:
                break
            dt = dt.scale(Fraction(1, 2))
        dt = _rescale_until_invertible(t_core, dt, cfg.max_retries)
    b = perturbation.simplest_expression(t_core, dt)
    report = perturbation.norm_bounds(t_core, dt, b)
    desc = f"t={t}, dt={dt}"
    if not report.product_bound_ok:
        log.violation(seed, desc, "||B|| <= ||t_core|| ||resolvent|| failed")
    if not report.difference_bound_ok:
        log.violation(seed, desc, "||B - t_core|| bound failed")
    if report.sandwich_applicable:
        log.bump("sandwich_checked")
        if not (report.sandwich_lower_ok and report.sandwich_upper_ok):
            log.violation(seed, desc, "sandwich bound failed with ||t_core dt|| < 1")
        if report.frob_certifies_contraction and report.norm_tcore_dt >= 1.0:
            log.violation(seed, desc, "exact Frobenius certificate contradicts the float norm")
    log.bump("cases_checked")


def fuzz_campaign(kind: str, trials: int, cfg: GeneratorConfig) -> FuzzReport:
    """Run one named invariant suite over fresh random instances.

    Violations are returned as data, never raised; an empty violation list
    means the campaign passed.
    """
    if kind not in CAMPAIGN_KINDS:
        raise ValueError(f"unknown campaign {kind!r}; known: {CAMPAIGN_KINDS}")
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    start = time.perf_counter()
    log = _TrialLog()
    for trial in range(trials):
        seed = _sub_seed(cfg, kind, trial)
        rng = _rng(seed)
        try:
            if kind == "characterizations":
                _trial_characterizations(cfg, rng, seed, log)
            elif kind == "theorem_2_1":
                # Even trials draw range-preserving perturbations, odd ones
                # range-violating, so both theorem directions get equal weight.
                _trial_perturbation(cfg, rng, seed, log, check_theorem_21=True, violate=bool(trial % 2))
            elif kind == "theorem_2_2":
                _trial_perturbation(cfg, rng, seed, log, check_theorem_21=False, violate=bool(trial % 2))
            elif kind == "remark_2_1":
                _trial_remark(cfg, rng, seed, log)
            else:
                _trial_bounds(cfg, rng, seed, log)
        except GinvError as exc:
            log.violation(seed, f"trial {trial}", f"unexpected {type(exc).__name__}: {exc}")
    return FuzzReport(
        kind=kind,
        trials=trials,
        violations=tuple(log.violations),
        elapsed=time.perf_counter() - start,
        stats=dict(sorted(log.stats.items())),
    )


@dataclass(frozen=True)
class NullRankWitnessReport:
    """Outcome of the null-space- and rank-preserving counterexample demo."""

    fixture_checks: tuple[tuple[str, bool], ...]
    search_trials: int
    witnesses_found: int
    witness_seeds: tuple[int, ...]

    @property
    def fixture_passed(self) -> bool:
        return all(ok for _, ok in self.fixture_checks)


def null_rank_preserving_demonstrator(
    search_trials: int = 200, cfg: GeneratorConfig | None = None
) -> NullRankWitnessReport:
    """Show that null-space- plus rank-preservation does not rescue B.

    First replays the built-in witness (exactly), then searches random
    instances for further witnesses of the same pattern: N(t+dt) = N(t),
    rank(t+dt) = rank(t), I + t_core dt invertible, yet B is not the core
    inverse of t + dt. Raises TheoremFalsificationError if the built-in
    witness fails any stated property.
    """
    fx = range_violating_fixture()
    t_core = theta.core_inverse(fx.t)
    case = perturbation.PerturbationCase.build(fx.t, fx.delta_t, t_core)
    verdict = perturbation.analyze(case)
    checks = (
        ("null space preserved", linalg.same_null_space(fx.t_bar, fx.t)),
        ("rank preserved", linalg.rank(fx.t_bar) == linalg.rank(fx.t)),
        ("expression invertible", verdict.invertible),
        ("B is not the core inverse of t_bar", not verdict.is_core_of_tbar),
        (
            "B differs from the true core inverse of t_bar",
            verdict.b is not None and verdict.b != theta.core_inverse(fx.t_bar),
        ),
    )
    if not all(ok for _, ok in checks):
        raise TheoremFalsificationError(f"built-in witness failed its stated properties: {checks}")

    if cfg is None:
        cfg = GeneratorConfig(dim=4, rank=3, seed=0)
    witness_seeds: list[int] = []
    for trial in range(search_trials):
        seed = _sub_seed(cfg, "null-rank-witness", trial)
        rng = _rng(seed)
        r = cfg.rank if cfg.rank is not None else rng.randint(1, cfg.dim - 1)
        if not 1 <= r < cfg.dim:
            continue
        sub = GeneratorConfig(cfg.dim, r, cfg.entry_bound, cfg.seed, cfg.max_retries)
        try:
            t = random_index_one_matrix(sub, rng)
        except GenerationExhaustedError:
            continue
        frf = linalg.full_rank_factorization(t)
        f2 = _random_matrix(rng, cfg.dim, r, cfg.entry_bound)
        t_bar = f2 @ frf.g
        dt = t_bar - t
        if linalg.rank(t_bar) != r or not linalg.same_null_space(t_bar, t):
            continue
        core = theta.core_inverse(t)
        if not linalg.determinant(Matrix.identity(cfg.dim) + core @ dt):
            continue
        if t @ core @ dt == dt:
            continue  # range-preserving by luck: not a witness
        verdict = perturbation.analyze(perturbation.PerturbationCase.build(t, dt, core))
        if verdict.invertible and not verdict.is_core_of_tbar:
            witness_seeds.append(seed)
    return NullRankWitnessReport(
        fixture_checks=checks,
        search_trials=search_trials,
        witnesses_found=len(witness_seeds),
        witness_seeds=tuple(witness_seeds),
    )

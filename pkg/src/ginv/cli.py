"""Command-line front end: exact matrix files in, verdicts and reports out.

Matrix file format (UTF-8, '#' starts a comment):

    # optional header line: rows cols
    4 4
    1 0 2 4
    2 1 -1 0
    2 2 0 1
    1 -2 0 2

Entries are whitespace-separated exact tokens: `n`, `n/d`, `3/4i`, or
`1/2+3/4i` (no spaces inside a token; floats are rejected). When the
header is omitted it is inferred, which requires rectangular rows; if a
file is consistent both with and without a header, the header reading
wins, so explicit headers are recommended.

Exit codes: 0 success / verdict true; 1 operational error (file, parse,
dimensions); 2 requested inverse does not exist or the perturbation
expression is singular; 3 an exact check says no (failed verification,
fixture mismatch, fuzz violations).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import harness, linalg, perturbation, theta
from .errors import (
    GinvError,
    ImpossibleRequestError,
    IndexExceedsOneError,
    MatrixParseError,
    SingularMatrixError,
)
from .exact import GaussianRational, Matrix
from .fixtures import fixture_checks
from .harness import CAMPAIGN_KINDS, GeneratorConfig

DEFAULT_MAX_DIM = 64

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_EXIST = 2
EXIT_REFUTED = 3

_FRACTION = r"[+-]?\d+(?:/\d+)?"
_REAL_RE = re.compile(rf"^({_FRACTION})$")
_IMAG_RE = re.compile(rf"^({_FRACTION})i$")
_FULL_RE = re.compile(rf"^({_FRACTION})([+-]\d+(?:/\d+)?)i$")


def max_dim() -> int:
    raw = os.environ.get("GINV_MAX_DIM", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_DIM
    except ValueError:
        raise GinvError(f"GINV_MAX_DIM must be an integer, got {raw!r}") from None


def _parse_fraction(text: str, line: int, column: int) -> Fraction:
    if "/" in text:
        num, den = text.split("/", 1)
        if int(den) == 0:
            raise MatrixParseError(f"zero denominator in {text!r}", line, column)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def parse_scalar(token: str, line: int = 0, column: int = 0) -> GaussianRational:
    """Parse one exact entry token: `n`, `n/d`, `n/di` or `n/d+m/ki`."""
    m = _REAL_RE.match(token)
    if m:
        return GaussianRational(_parse_fraction(m.group(1), line, column))
    m = _IMAG_RE.match(token)
    if m:
        return GaussianRational(0, _parse_fraction(m.group(1), line, column))
    m = _FULL_RE.match(token)
    if m:
        return GaussianRational(
            _parse_fraction(m.group(1), line, column),
            _parse_fraction(m.group(2), line, column),
        )
    raise MatrixParseError(f"cannot parse entry {token!r} as an exact scalar", line, column)


def parse_matrix(text: str) -> Matrix:
    """Parse exact matrix text; see the module docstring for the format."""
    lines: list[tuple[int, list[str]]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((line_no, body.split()))
    if not lines:
        raise MatrixParseError("no matrix data found")

    header: tuple[int, int] | None = None
    first_no, first = lines[0]
    if len(first) == 2 and all(re.fullmatch(r"\d+", tok) for tok in first):
        rows, cols = int(first[0]), int(first[1])
        data = lines[1:]
        if len(data) == rows and all(len(toks) == cols for _, toks in data):
            header = (rows, cols)
    if header is not None:
        rows, cols = header
        data = lines[1:]
    else:
        data = lines
        rows = len(data)
        cols = len(data[0][1])
        for line_no, toks in data:
            if len(toks) != cols:
                raise MatrixParseError(
                    f"ragged row: expected {cols} entries, got {len(toks)}", line_no
                )
    entries: list[GaussianRational] = []
    for line_no, toks in data:
        for col_no, tok in enumerate(toks, start=1):
            entries.append(parse_scalar(tok, line_no, col_no))
    return Matrix(rows, cols, entries)


def serialize_matrix(m: Matrix) -> str:
    """Canonical exact text with an explicit header; round-trip stable."""
    lines = [f"{m.rows} {m.cols}"]
    for i in range(m.rows):
        lines.append(" ".join(str(e) for e in m.row_list(i)))
    return "\n".join(lines) + "\n"


@dataclass
class Report:
    """Structured result of one CLI invocation.

    The human-readable output is rendered from exactly these fields, so the
    JSON document written by --report carries everything that was printed.
    """

    command: str
    inputs: dict[str, dict[str, str]] = field(default_factory=dict)
    exact: dict[str, str] = field(default_factory=dict)
    floats: dict[str, float] = field(default_factory=dict)
    verdicts: dict[str, bool] = field(default_factory=dict)
    details: list[str] = field(default_factory=list)
    exit_status: int = EXIT_OK

    def add_input(self, name: str, path: str, text: str) -> None:
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        self.inputs[name] = {"path": path, "sha256": digest}

    def add_matrix(self, name: str, m: Matrix) -> None:
        self.exact[name] = serialize_matrix(m)

    def say(self, line: str) -> None:
        self.details.append(line)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "exact": self.exact,
            "floats": self.floats,
            "verdicts": self.verdicts,
            "details": self.details,
            "exit_status": self.exit_status,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def render(self) -> str:
        out = [f"command: {self.command}"]
        for name, meta in self.inputs.items():
            out.append(f"input {name}: {meta['path']} (sha256 {meta['sha256'][:12]}...)")
        out.extend(self.details)
        for name, text in self.exact.items():
            out.append(f"{name}:")
            out.extend("  " + line for line in text.strip().splitlines())
        for name, value in self.floats.items():
            out.append(f"{name} = {value:.12g}")
        for name, value in self.verdicts.items():
            out.append(f"{name}: {'yes' if value else 'no'}")
        out.append(f"exit status: {self.exit_status}")
        return "\n".join(out)


def _load_matrix(report: Report, name: str, path: str) -> Matrix:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GinvError(f"cannot read {path}: {exc}") from None
    report.add_input(name, path, text)
    m = parse_matrix(text)
    cap = max_dim()
    if m.rows > cap or m.cols > cap:
        raise GinvError(
            f"{path} is {m.shape_str()}, above the safety cap GINV_MAX_DIM={cap}"
        )
    return m


def cmd_compute(args: argparse.Namespace) -> Report:
    report = Report(command=f"compute {args.kind} {args.file}")
    t = _load_matrix(report, "input", args.file)
    kind = args.kind
    if kind in ("group", "core", "index") and not t.is_square:
        raise GinvError(f"compute {kind} needs a square matrix, got {t.shape_str()}")
    if kind == "mp":
        result = linalg.pseudo_inverse(t)
        report.add_matrix("moore_penrose", result)
        report.say("verified exactly: equations (1), (2), (3), (4)")
    elif kind == "group":
        try:
            result = theta.group_inverse(t)
        except IndexExceedsOneError as exc:
            report.say(str(exc))
            report.exit_status = EXIT_NOT_EXIST
            return report
        report.add_matrix("group_inverse", result)
        report.say("verified exactly: equations (1), (2), (5)")
    elif kind == "core":
        try:
            result = theta.core_inverse(t)
        except IndexExceedsOneError as exc:
            report.say(str(exc))
            report.exit_status = EXIT_NOT_EXIST
            return report
        report.add_matrix("core_inverse", result)
        report.say(
            "verified exactly: equations (1), (2), (3), (6), (7); "
            "t @ s = projector onto R(t); R(s) = R(t); N(s) = N(t*)"
        )
    elif kind == "projector":
        result = theta.orthogonal_projector(t)
        report.add_matrix("projector", result)
        report.say("verified exactly: idempotent, Hermitian, range equals R(t)")
    else:  # index
        idx = theta.index(t)
        report.say(f"index = {idx.index}")
        report.say(f"rank sequence of successive powers: {list(idx.rank_sequence)}")
        report.verdicts["index_at_most_one"] = idx.index <= 1
    return report


def cmd_perturb(args: argparse.Namespace) -> Report:
    report = Report(command=f"perturb {args.t_file} {args.dt_file}")
    t = _load_matrix(report, "t", args.t_file)
    dt = _load_matrix(report, "delta_t", args.dt_file)
    try:
        case = perturbation.PerturbationCase.build(t, dt)
    except IndexExceedsOneError as exc:
        report.say(str(exc))
        report.exit_status = EXIT_NOT_EXIST
        return report
    verdict = perturbation.analyze(case)
    report.add_matrix("t_core", case.t_core)
    report.verdicts["expression_invertible"] = verdict.invertible
    if not verdict.invertible:
        report.say("I + t_core @ delta_t is exactly singular; B does not exist")
        for name in ("condition_range_subset", "condition_range_equal", "condition_left", "condition_right"):
            report.verdicts[name] = getattr(verdict, name)
        report.floats["norm_t_core"] = verdict.norm_t_core
        report.floats["norm_tcore_dt"] = verdict.norm_tcore_dt
        report.exit_status = EXIT_NOT_EXIST
        return report
    assert verdict.b is not None and verdict.tbar_b is not None
    report.add_matrix("b", verdict.b)
    report.add_matrix("tbar_b", verdict.tbar_b)
    report.add_matrix("t_projector", t @ case.t_core)
    report.verdicts["condition_range_subset"] = verdict.condition_range_subset
    report.verdicts["condition_range_equal"] = verdict.condition_range_equal
    report.verdicts["condition_left"] = verdict.condition_left
    report.verdicts["condition_right"] = verdict.condition_right
    report.verdicts["b_is_core_inverse_of_tbar"] = verdict.is_core_of_tbar
    report.verdicts["tbar_b_equals_t_projector"] = verdict.tbar_b == t @ case.t_core
    report.floats["norm_t_core"] = verdict.norm_t_core
    report.floats["norm_tcore_dt"] = verdict.norm_tcore_dt
    report.floats["norm_resolvent"] = verdict.norm_resolvent or 0.0
    report.floats["norm_b"] = verdict.norm_b or 0.0
    report.floats["norm_b_minus_tcore"] = verdict.norm_b_minus_tcore or 0.0
    report.verdicts["sandwich_applicable"] = verdict.sandwich_applicable
    report.verdicts["norm_bounds_satisfied"] = verdict.bounds_satisfied
    if verdict.bound_report is not None:
        report.exact["frobenius_sq_tcore_dt"] = str(verdict.bound_report.frob_sq_tcore_dt)
    if verdict.is_core_of_tbar:
        report.say("B is the core inverse of t + delta_t (all conditions hold)")
    else:
        failed = [
            name
            for name in ("condition_range_subset", "condition_range_equal", "condition_left", "condition_right")
            if not report.verdicts[name]
        ]
        report.say(f"B is NOT the core inverse of t + delta_t; failed conditions: {', '.join(failed)}")
        report.exit_status = EXIT_REFUTED
    return report


def cmd_verify(args: argparse.Namespace) -> Report:
    if args.mode == "theta":
        command = f"verify theta {args.theta_set} {args.t_file} {args.s_file}"
    else:
        command = f"verify core {args.t_file} {args.s_file}"
    report = Report(command=command)
    t = _load_matrix(report, "t", args.t_file)
    s = _load_matrix(report, "s", args.s_file)
    if args.mode == "theta":
        theta_set = _parse_theta(args.theta_set)
        per_equation = {i: theta.check_equation(i, t, s) for i in sorted(theta_set)}
        for eq_id, ok in per_equation.items():
            report.verdicts[f"equation_{eq_id}"] = ok
        passed = all(per_equation.values())
        report.verdicts["is_theta_inverse"] = passed
    else:
        full = theta.is_theta_inverse("core_operator", t, s)
        operator_def = theta.is_core_inverse_def12(t, s)
        report.verdicts["equations_1_2_3_6_7"] = full
        report.verdicts["definition_range_nullspace"] = operator_def
        if full != operator_def:
            raise GinvError(
                "the two core-inverse characterizations disagree; this falsifies "
                f"an exactly-checkable equivalence (t={t}, s={s})"
            )
        passed = full
        report.verdicts["is_core_inverse"] = passed
    report.exit_status = EXIT_OK if passed else EXIT_REFUTED
    return report


def cmd_fixtures(_args: argparse.Namespace) -> Report:
    report = Report(command="fixtures")
    checks = fixture_checks()
    all_ok = True
    for check in checks:
        tag = "PASS" if check.passed else "FAIL"
        suffix = f"  [{check.detail}]" if check.detail else ""
        report.say(f"{tag}  {check.name}{suffix}")
        report.verdicts[check.name] = check.passed
        all_ok = all_ok and check.passed
    report.say(f"{sum(c.passed for c in checks)}/{len(checks)} fixture checks passed")
    report.exit_status = EXIT_OK if all_ok else EXIT_REFUTED
    return report


def cmd_fuzz(args: argparse.Namespace) -> Report:
    report = Report(command=f"fuzz {args.kind}")
    cap = max_dim()
    if args.dim > cap:
        raise GinvError(f"--dim {args.dim} is above the safety cap GINV_MAX_DIM={cap}")
    cfg = GeneratorConfig(
        dim=args.dim, rank=args.rank, entry_bound=args.entry_bound, seed=args.seed
    )
    fuzz = harness.fuzz_campaign(args.kind, args.trials, cfg)
    report.say(
        f"{fuzz.kind}: {fuzz.trials} trials, {len(fuzz.violations)} violations, "
        f"{fuzz.elapsed:.2f}s"
    )
    for key, value in fuzz.stats.items():
        report.say(f"  {key} = {value}")
    for v in fuzz.violations:
        report.say(f"VIOLATION seed={v.seed} invariant={v.invariant} case={v.case}")
    report.verdicts["campaign_passed"] = fuzz.passed
    report.floats["elapsed_seconds"] = fuzz.elapsed
    report.exit_status = EXIT_OK if fuzz.passed else EXIT_REFUTED
    return report


def _parse_theta(text: str) -> frozenset[int]:
    if text in theta.THETA_NAMES:
        return theta.THETA_NAMES[text]
    try:
        ids = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise GinvError(
            f"theta set must be comma-separated equation ids or one of "
            f"{sorted(theta.THETA_NAMES)}, got {text!r}"
        ) from None
    return theta.resolve_theta(ids)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ginv",
        description="Exact generalized-inverse calculator and perturbation verifier.",
    )
    parser.add_argument(
        "--report", metavar="PATH", help="also write the full report as JSON to PATH"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("compute", help="compute an exact inverse, projector or index")
    p.add_argument("kind", choices=["mp", "group", "core", "projector", "index"])
    p.add_argument("file")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("perturb", help="analyze the resolvent expression for t + delta_t")
    p.add_argument("t_file")
    p.add_argument("dt_file")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("verify", help="check a candidate inverse against defining equations")
    vsub = p.add_subparsers(dest="mode", required=True)
    pv = vsub.add_parser("theta", help="check the equations in a theta set")
    pv.add_argument("theta_set", help="comma-separated ids like 1,3,7 or a named alias")
    pv.add_argument("t_file")
    pv.add_argument("s_file")
    pv.set_defaults(func=cmd_verify, mode="theta")
    pc = vsub.add_parser("core", help="check that s is the core inverse of t")
    pc.add_argument("t_file")
    pc.add_argument("s_file")
    pc.set_defaults(func=cmd_verify, mode="core")

    p = sub.add_parser("fixtures", help="re-derive the built-in golden fixtures, exactly")
    p.set_defaults(func=cmd_fixtures)

    p = sub.add_parser("fuzz", help="run a randomized invariant campaign")
    p.add_argument("kind", choices=list(CAMPAIGN_KINDS))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--entry-bound", type=int, default=5, dest="entry_bound")
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, which would collide with the
        # "inverse does not exist" code; map everything but --help to 1.
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        report = args.func(args)
    except (GinvError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        if isinstance(exc, (SingularMatrixError, IndexExceedsOneError, ImpossibleRequestError)):
            return EXIT_NOT_EXIST
        return EXIT_ERROR
    except Exception as exc:  # exit-code contract is total, even over bugs
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_ERROR
    print(report.render())
    if args.report:
        try:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(report.to_json() + "\n")
        except OSError as exc:
            sys.stderr.write(f"error: cannot write report: {exc}\n")
            return EXIT_ERROR
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())

"""Command-line surface: radii, parameter sweeps, verification, sharpness.

Subcommands
-----------
radius     solve the radius equation for one operator
curve      sweep a parameter grid and tabulate (param, root, residual)
verify     draw a seeded corpus and check the inequality direction, or hunt
           a violation witness beyond the radius
sharpness  emit the three-term extremal decompositions over an a-grid
selftest   run the built-in identity/concavity/coefficient/quadrature suites

Reports are JSON (default) or RFC-4180-style CSV with a header row; numbers
are printed with 17 significant digits in CSV, and JSON uses shortest
round-trip floats.  Identical flags and seed reproduce byte-identical
output.  Exit codes: 0 ok, 2 parameter-domain error, 3 solver/summation
failure, 4 verification failure, 5 sharpness reconstruction mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .corpus import (
    derive_seed,
    evaluate,
    multiply_by_z,
    random_schur,
    suggested_order,
    taylor_coeffs,
)
from .errors import (
    BracketError,
    ContinuityError,
    ParameterDomainError,
    PreconditionError,
    QuadratureError,
    TruncationError,
)
from .operators import (
    Alexander,
    Bernardi,
    CBeta,
    CesaroBeta,
    Libera,
    OperatorKind,
    PrimitiveI,
    bohr_majorant,
    majorant_value,
    operator_coeffs,
    quadrature_value,
    required_origin_zeros,
    sup_bound,
)
from .radii import RadiusProblem, radius_curve, solve_radius
from .series import cumulative_identity_residual, horner
from .sharpness import (
    BOHR_BASELINE_RADIUS,
    ClassicalBohr,
    concavity_check,
    decomposition_bernardi,
    decomposition_cesaro,
    violation_search,
)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_SOLVER = 3
EXIT_VERIFY = 4
EXIT_SHARPNESS = 5

_SOLVER_ERRORS = (BracketError, TruncationError, QuadratureError, ContinuityError)

DEFAULT_SOLVER_TOL = 1e-12
DEFAULT_MAJORANT_EPS = 1e-12
DEFAULT_QUAD_TOL = 1e-10


@dataclass
class RunReport:
    """One command invocation: parameters in, structured results out."""

    command: str
    params: dict
    results: dict
    seed: int
    version: str = __version__
    csv_header: tuple = field(default=(), repr=False)
    csv_rows: list = field(default_factory=list, repr=False)

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "seed": self.seed,
            "version": self.version,
        }
        return json.dumps(payload, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(self.csv_header)
        for row in self.csv_rows:
            writer.writerow([_csv_cell(v) for v in row])
        return buf.getvalue()


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _emit(report: RunReport, args: argparse.Namespace) -> None:
    text = report.to_csv() if args.format == "csv" else report.to_json() + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _operator_kind(args: argparse.Namespace) -> OperatorKind:
    op = args.op
    if op == "cesaro":
        if args.beta is None:
            raise ParameterDomainError("--beta is required for the cesaro operator")
        return CesaroBeta(args.beta)
    if op == "cbeta":
        if args.beta is None:
            raise ParameterDomainError("--beta is required for the cbeta operator")
        return CBeta(args.beta)
    if op == "bernardi":
        if args.gamma is None:
            raise ParameterDomainError("--gamma is required for the bernardi operator")
        return Bernardi(args.gamma, args.m or 0)
    if op == "libera":
        return Libera()
    if op == "alexander":
        return Alexander()
    if op == "primitive":
        return PrimitiveI()
    raise ParameterDomainError(f"unknown operator {op!r}")


def _radius_family(kind: OperatorKind):
    """Normalize an operator kind to its radius-equation family."""
    if isinstance(kind, (CesaroBeta, CBeta)):
        return CesaroBeta(kind.beta)
    if isinstance(kind, Bernardi):
        return kind
    if isinstance(kind, (Libera, PrimitiveI)):
        return Bernardi(1.0, 0)
    if isinstance(kind, Alexander):
        return Bernardi(0.0, 1)
    raise ParameterDomainError(f"no radius family for {kind!r}")


def cmd_radius(args: argparse.Namespace) -> tuple:
    kind = _operator_kind(args)
    family = _radius_family(kind)
    result = solve_radius(RadiusProblem(family), args.tol)
    report = RunReport(
        command="radius",
        params={
            "op": args.op,
            "beta": args.beta,
            "gamma": args.gamma,
            "m": args.m,
            "tol": args.tol,
        },
        results={
            "root": result.root,
            "residual": result.residual,
            "bracket": list(result.bracket),
            "iterations": result.iterations,
        },
        seed=args.seed,
        csv_header=("root", "residual", "bracket_lo", "bracket_hi", "iterations"),
        csv_rows=[
            (
                result.root,
                result.residual,
                result.bracket[0],
                result.bracket[1],
                result.iterations,
            )
        ],
    )
    return report, EXIT_OK


def _parse_grid(args: argparse.Namespace) -> list:
    if args.grid_values is not None:
        text = args.grid_values.strip()
        if not text:
            return []
        return [float(tok) for tok in text.split(",")]
    if args.grid_points is None:
        raise ParameterDomainError("provide --grid-values or --grid-min/max/points")
    if args.grid_points < 0:
        raise ParameterDomainError("--grid-points must be nonnegative")
    if args.grid_points == 0:
        return []
    if args.grid_points == 1:
        return [args.grid_min]
    step = (args.grid_max - args.grid_min) / (args.grid_points - 1)
    return [args.grid_min + i * step for i in range(args.grid_points)]


def cmd_curve(args: argparse.Namespace) -> tuple:
    grid = _parse_grid(args)
    if args.op == "cesaro":
        entries = [(b, RadiusProblem(CesaroBeta(b))) for b in grid]
    else:
        m = args.m or 0
        entries = [(g, RadiusProblem(Bernardi(g, m))) for g in grid]
    rows = radius_curve(entries, args.tol)
    report = RunReport(
        command="curve",
        params={
            "op": args.op,
            "m": args.m,
            "grid": grid,
            "tol": args.tol,
        },
        results={
            "rows": [
                {"param": row.parameter, "root": row.root, "residual": row.residual}
                for row in rows
            ]
        },
        seed=args.seed,
        csv_header=("param", "root", "residual"),
        csv_rows=[(row.parameter, row.root, row.residual) for row in rows],
    )
    return report, EXIT_OK


def _verify_order(kind: OperatorKind, r: float, trunc_eps: float = 1e-11) -> int:
    """Coefficient order so the unsampled tail moves the majorant by < trunc_eps."""
    if isinstance(kind, (CesaroBeta, CBeta)):
        gain = (1.0 - r) ** -(kind.beta + 1.0)
        n = 0
        while r ** (n + 1) * gain > trunc_eps:
            n += 1
        return max(n, 4)
    if isinstance(kind, (Libera, PrimitiveI)):
        gamma = 1.0
    elif isinstance(kind, Alexander):
        gamma = 0.0
    else:
        gamma = kind.gamma
    n = 0
    while r ** (n + 1) / ((n + 1 + gamma) * (1.0 - r)) > trunc_eps:
        n += 1
    return max(n, 4)


def cmd_verify(args: argparse.Namespace) -> tuple:
    if args.samples < 1:
        raise ParameterDomainError(f"--samples must be >= 1, got {args.samples}")

    baseline = args.op == "bohr"
    if baseline:
        kind = None
        critical = BOHR_BASELINE_RADIUS
        problem = ClassicalBohr()
    else:
        kind = _operator_kind(args)
        family = _radius_family(kind)
        problem = family
        critical = solve_radius(RadiusProblem(family), args.tol).root

    if args.r_mode == "below":
        r = 0.99 * critical
    elif args.r_mode == "at":
        r = critical
    else:
        r = args.r if args.r is not None else min(critical + max(0.02, 20 * args.tol), 0.98)

    params = {
        "op": args.op,
        "beta": args.beta,
        "gamma": args.gamma,
        "m": args.m,
        "samples": args.samples,
        "r_mode": args.r_mode,
        "r": r,
        "critical_radius": critical,
        "max_factors": args.max_factors,
        "radius_cap": args.radius_cap,
    }

    if args.r_mode == "above":
        outcome = violation_search(problem, r, eps=DEFAULT_MAJORANT_EPS)
        results = {
            "witness": outcome.witness,
            "majorant": outcome.majorant,
            "bound": outcome.bound,
            "margin": outcome.margin,
            "attempts": outcome.attempts,
        }
        report = RunReport(
            command="verify",
            params=params,
            results=results,
            seed=args.seed,
            csv_header=("r", "bound", "witness", "majorant", "margin", "attempts"),
            csv_rows=[
                (
                    r,
                    outcome.bound,
                    "" if outcome.witness is None else outcome.witness,
                    outcome.majorant,
                    outcome.margin,
                    outcome.attempts,
                )
            ],
        )
        if not outcome.found:
            print(
                f"no violation witness for {args.op} at r={r} (margin {outcome.margin})",
                file=sys.stderr,
            )
            return report, EXIT_VERIFY
        return report, EXIT_OK

    bound = 1.0 if baseline else sup_bound(kind, r)
    zeros_needed = 0 if baseline else required_origin_zeros(kind)
    order = (
        max(4, math.ceil(math.log(1e-11 * (1.0 - r)) / math.log(r)))
        if baseline
        else _verify_order(kind, r)
    )
    violations = 0
    first_violation = None
    worst = -math.inf
    for i in range(args.samples):
        sample_seed = derive_seed(args.seed, i)
        f = random_schur(sample_seed, args.max_factors, args.radius_cap)
        if zeros_needed:
            f = multiply_by_z(f, zeros_needed)
        coeffs = taylor_coeffs(f, order + zeros_needed)
        if baseline:
            value = bohr_majorant(coeffs, r)
        else:
            value = majorant_value(kind, coeffs, r, DEFAULT_MAJORANT_EPS)
        excess = value - bound
        if excess > worst:
            worst = excess
        if excess > 1e-9:
            violations += 1
            if first_violation is None:
                first_violation = {"index": i, "seed": sample_seed, "excess": excess}

    results = {
        "bound": bound,
        "violations": violations,
        "max_excess": worst,
        "coefficient_order": order + zeros_needed,
        "first_violation": first_violation,
    }
    report = RunReport(
        command="verify",
        params=params,
        results=results,
        seed=args.seed,
        csv_header=("r", "bound", "samples", "violations", "max_excess"),
        csv_rows=[(r, bound, args.samples, violations, worst)],
    )
    if violations:
        print(
            f"{violations} majorant violations; first at sample "
            f"{first_violation['index']} (seed {first_violation['seed']})",
            file=sys.stderr,
        )
        return report, EXIT_VERIFY
    return report, EXIT_OK


def _parse_a_values(text: str) -> list:
    values = [float(tok) for tok in text.split(",") if tok.strip()]
    if not values:
        raise ParameterDomainError("the a-grid is empty")
    return values


def cmd_sharpness(args: argparse.Namespace) -> tuple:
    kind = _operator_kind(args)
    family = _radius_family(kind)
    if args.r is None:
        raise ParameterDomainError("--r is required for the sharpness command")
    a_values = _parse_a_values(args.a_values)
    rows = []
    worst_recon = 0.0
    for a in a_values:
        if isinstance(family, CesaroBeta):
            dec = decomposition_cesaro(family.beta, a, args.r, DEFAULT_MAJORANT_EPS)
        else:
            dec = decomposition_bernardi(
                family.gamma, family.m, a, args.r, DEFAULT_MAJORANT_EPS
            )
        worst_recon = max(worst_recon, dec.reconstruction_error)
        ratio = dec.remainder / (1.0 - a) ** 2 if a < 1.0 else float("nan")
        rows.append(
            {
                "a": a,
                "bound_term": dec.bound_term,
                "deficit_term": dec.deficit_term,
                "remainder": dec.remainder,
                "total": dec.total,
                "reconstruction_error": dec.reconstruction_error,
                "remainder_ratio": ratio,
            }
        )
    report = RunReport(
        command="sharpness",
        params={
            "op": args.op,
            "beta": args.beta,
            "gamma": args.gamma,
            "m": args.m,
            "r": args.r,
            "a_values": a_values,
        },
        results={"rows": rows, "max_reconstruction_error": worst_recon},
        seed=args.seed,
        csv_header=(
            "a",
            "bound_term",
            "deficit_term",
            "remainder",
            "total",
            "reconstruction_error",
            "remainder_ratio",
        ),
        csv_rows=[
            (
                row["a"],
                row["bound_term"],
                row["deficit_term"],
                row["remainder"],
                row["total"],
                row["reconstruction_error"],
                row["remainder_ratio"],
            )
            for row in rows
        ],
    )
    if worst_recon > 1e-9:
        print(f"reconstruction mismatch {worst_recon} exceeds 1e-9", file=sys.stderr)
        return report, EXIT_SHARPNESS
    return report, EXIT_OK


def _selftest_suites(seed: int) -> list:
    suites = []

    worst = max(
        cumulative_identity_residual(beta, 200) for beta in (0.3, 0.5, 1.0, 2.0, 3.7, 10.0)
    )
    suites.append(
        {"suite": "weight-running-sum-identity", "passed": bool(worst <= 1e-12), "detail": float(worst)}
    )

    grid = [k / 100.0 for k in range(100)]
    worst = max(
        [concavity_check(CesaroBeta(b), r, grid) for b in (0.5, 1.0, 2.0) for r in (0.3, 0.6)]
        + [
            concavity_check(Bernardi(g, m), r, grid)
            for (g, m) in ((1.0, 0), (0.0, 1), (2.0, 1))
            for r in (0.3, 0.6)
        ]
    )
    suites.append(
        {"suite": "envelope-concavity", "passed": bool(worst <= 1e-10), "detail": float(worst)}
    )

    worst = 0.0
    for i in range(24):
        f = random_schur(derive_seed(seed, i), 4, 0.9)
        coeffs = taylor_coeffs(f, 200)
        a0 = abs(coeffs[0])
        if a0 >= 1.0 - 1e-9:
            continue  # constants of full modulus carry no coefficient slack
        cap = 1.0 - a0 * a0 + 1e-12
        worst = max(worst, float(coeffs.abs_entries()[1:].max()) - cap)
    suites.append(
        {"suite": "coefficient-slack", "passed": bool(worst <= 0.0), "detail": float(worst)}
    )

    z = 0.5 * complex(math.cos(0.7), math.sin(0.7))
    worst = 0.0
    for i, kind in enumerate(
        (CesaroBeta(0.5), CesaroBeta(1.0), CBeta(1.0), Bernardi(1.0, 0), Alexander(), PrimitiveI())
    ):
        f = random_schur(derive_seed(seed, 100 + i), 3, 0.9)
        f = multiply_by_z(f, required_origin_zeros(kind))
        order = max(suggested_order(f, 1e-13), 160)
        image = operator_coeffs(kind, taylor_coeffs(f, order), order)
        series_val = horner(image, z)
        quad_val = quadrature_value(kind, f, z, DEFAULT_QUAD_TOL)
        worst = max(worst, abs(series_val - quad_val))
    suites.append(
        {"suite": "series-vs-quadrature", "passed": bool(worst <= 1e-8), "detail": float(worst)}
    )
    return suites


def cmd_selftest(args: argparse.Namespace) -> tuple:
    suites = _selftest_suites(args.seed)
    all_pass = all(s["passed"] for s in suites)
    report = RunReport(
        command="selftest",
        params={},
        results={"suites": suites, "all_passed": all_pass},
        seed=args.seed,
        csv_header=("suite", "passed", "detail"),
        csv_rows=[(s["suite"], s["passed"], s["detail"]) for s in suites],
    )
    return report, EXIT_OK if all_pass else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bohrlab",
        description="Radii, verification sweeps, and sharpness experiments "
        "for integral operators on bounded analytic functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="write the report to this path")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=DEFAULT_SOLVER_TOL)

    def operator_flags(p: argparse.ArgumentParser, ops: tuple) -> None:
        p.add_argument("--op", choices=ops, required=True)
        p.add_argument("--beta", type=float, default=None)
        p.add_argument("--gamma", type=float, default=None)
        p.add_argument("--m", type=int, default=None)

    all_ops = ("cesaro", "cbeta", "bernardi", "libera", "alexander", "primitive")

    p = sub.add_parser("radius", help="solve the radius equation")
    operator_flags(p, all_ops)
    common(p)

    p = sub.add_parser("curve", help="radius sweep over a parameter grid")
    p.add_argument("--op", choices=("cesaro", "bernardi"), required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--grid-min", type=float, default=None)
    p.add_argument("--grid-max", type=float, default=None)
    p.add_argument("--grid-points", type=int, default=None)
    p.add_argument("--grid-values", default=None, help="comma-separated grid")
    common(p)

    p = sub.add_parser("verify", help="inequality sweep over a seeded corpus")
    operator_flags(p, all_ops + ("bohr",))
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--r-mode", choices=("below", "at", "above"), default="below")
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--max-factors", type=int, default=4)
    p.add_argument("--radius-cap", type=float, default=0.9)
    common(p)

    p = sub.add_parser("sharpness", help="extremal decompositions over an a-grid")
    operator_flags(p, all_ops)
    p.add_argument("--r", type=float, default=None)
    p.add_argument(
        "--a-values",
        default="0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,0.99,0.999,1",
        help="comma-separated a-grid",
    )
    common(p)

    p = sub.add_parser("selftest", help="run the built-in consistency suites")
    common(p)

    return parser


_HANDLERS = {
    "radius": cmd_radius,
    "curve": cmd_curve,
    "verify": cmd_verify,
    "sharpness": cmd_sharpness,
    "selftest": cmd_selftest,
}


def main(argv: Optional[list] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = _HANDLERS[args.command](args)
    except (ParameterDomainError, PreconditionError) as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except _SOLVER_ERRORS as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    _emit(report, args)
    return code


if __name__ == "__main__":
    sys.exit(main())

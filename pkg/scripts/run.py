#!/usr/bin/env python
"""
Bohr radius pipeline driver.

Usage:
    # Radius of one problem
    python scripts/run.py radius --class w0h --alpha 0.5 --poly 1
    python scripts/run.py radius --class stable-convex --poly "" --format csv

    # Radius of W0H(alpha) over an alpha grid
    python scripts/run.py sweep --alpha-min 0.25 --alpha-max 1 --steps 4 --out sweep.csv

    # Check the inequality on the extremal function around the radius
    python scripts/run.py verify --class stable-univalent --poly 1 --grid 100

    # Recompute the published radii
    python scripts/run.py reproduce --format markdown

    # List all pipeline nodes
    python scripts/run.py nodes

Exit codes: 0 success, 1 argument error, 2 no root, 3 verification or
reproduction failure.
"""

import argparse
import importlib
import inspect
import json
import logging
import math
import sys
from pathlib import Path

from hamilton import base, driver

from scripts.utils.equations import (
    BohrPolynomial,
    BohrProblem,
    ClassKind,
    ClassSpec,
    ProblemVariant,
)
from scripts.utils.errors import DomainError, NoRootError, NonConvergenceError
from scripts.utils.formatting import frame_to_records, render
from scripts.utils.solver import DEFAULT_TOL, MIN_TOL
from scripts.utils.verify import MIN_GRID, Verdict

PROJECT_ROOT = Path(__file__).parent.parent

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_ROOT = 2
EXIT_FAILED = 3

logger = logging.getLogger("scripts.run")


# =============================================================================
# Module Discovery
# =============================================================================


def discover_modules():
    """Discover Hamilton modules in scripts/ directory.

    Any .py file in scripts/ that isn't __init__.py or run.py is a
    Hamilton module.
    """
    scripts_dir = PROJECT_ROOT / "scripts"
    modules = []

    for py_file in sorted(scripts_dir.glob("*.py")):
        if py_file.name in ("__init__.py", "run.py"):
            continue

        module_name = f"scripts.{py_file.stem}"
        try:
            modules.append(importlib.import_module(module_name))
        except ImportError as e:
            logger.warning("could not import %s: %s", module_name, e)

    return modules


def get_module_functions(module) -> list[str]:
    """Public functions defined in a module, i.e. its Hamilton nodes."""
    return [
        name
        for name, obj in inspect.getmembers(module, inspect.isfunction)
        if not name.startswith("_") and obj.__module__ == module.__name__
    ]


def build_driver():
    """Build Hamilton driver with discovered modules."""
    modules = discover_modules()
    return driver.Builder().with_modules(*modules).with_adapters(base.DictResult()).build()


def list_outputs() -> str:
    """Available nodes grouped by module."""
    lines = ["Available outputs:", "-" * 40]
    for module in discover_modules():
        funcs = get_module_functions(module)
        if funcs:
            lines.append(f"\n{module.__name__.split('.')[-1]}:")
            lines.extend(f"  - {func}" for func in funcs)
    return "\n".join(lines) + "\n"


# =============================================================================
# Argument handling
# =============================================================================


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with EXIT_USAGE."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _flag_error(flag: str, message: str) -> DomainError:
    return DomainError(f"{flag}: {message}")


def _parse_flag(flag: str, parse, text: str):
    try:
        return parse(text)
    except DomainError as exc:
        raise _flag_error(flag, str(exc)) from exc


def _check_tol(args) -> None:
    if not math.isfinite(args.tol) or args.tol < MIN_TOL:
        raise _flag_error("--tol", f"must be >= {MIN_TOL!r}, got {args.tol!r}")


def _problem_from_args(args) -> BohrProblem:
    kind = ClassKind(args.class_kind)
    if kind is ClassKind.W0H:
        if args.alpha is None:
            raise _flag_error("--alpha", "is required with --class w0h")
        spec = _parse_flag("--alpha", ClassSpec.w0h, args.alpha)
    elif args.alpha is not None:
        raise _flag_error("--alpha", f"only applies to --class w0h, not {kind.value}")
    else:
        spec = ClassSpec(kind)

    polynomial = _parse_flag("--poly", BohrPolynomial.parse, args.poly)
    variant = _parse_flag("--variant", ProblemVariant.parse, args.variant)
    try:
        return BohrProblem(spec, polynomial, variant)
    except DomainError as exc:
        raise _flag_error("--variant", str(exc)) from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="bohr-radii",
        description="Bohr radii for harmonic mapping classes",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument("--verbose", action="store_true", help="Debug logging on stderr")

    common = _Parser(add_help=False)
    common.add_argument("--poly", default="", help="P coefficients l1,...,lk (empty: P = 0)")
    common.add_argument("--variant", default="majorant", help="majorant | power:<m> | ratio")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="Bisection tolerance")
    common.add_argument("--out", help="Write output to this file instead of stdout")

    problem = _Parser(add_help=False)
    problem.add_argument(
        "--class",
        dest="class_kind",
        choices=[k.value for k in ClassKind],
        default=ClassKind.W0H.value,
    )
    problem.add_argument("--alpha", type=float, help="Class parameter, 0 < alpha <= 1 (w0h)")

    sub = parser.add_subparsers(dest="command", required=True)

    radius = sub.add_parser("radius", parents=[problem, common], help="Compute one radius")
    radius.add_argument("--format", choices=["json", "csv"], default="json")

    sweep = sub.add_parser("sweep", parents=[common], help="Radius of w0h over an alpha grid")
    sweep.add_argument(
        "--class", dest="class_kind", choices=[ClassKind.W0H.value], default=ClassKind.W0H.value
    )
    sweep.add_argument("--alpha-min", type=float, required=True)
    sweep.add_argument("--alpha-max", type=float, required=True)
    sweep.add_argument("--steps", type=int, required=True)
    sweep.add_argument("--format", choices=["csv", "json"], default="csv")

    verify = sub.add_parser("verify", parents=[problem, common], help="Check the inequality")
    verify.add_argument("--grid", type=int, default=100, help="Grid points")
    verify.add_argument("--format", choices=["json", "csv", "markdown"], default="json")

    reproduce = sub.add_parser("reproduce", help="Recompute the published radii")
    reproduce.add_argument("--tol", type=float, default=DEFAULT_TOL)
    reproduce.add_argument("--format", choices=["json", "csv", "markdown"], default="markdown")
    reproduce.add_argument("--out")

    sub.add_parser("nodes", help="List pipeline nodes")
    return parser


# =============================================================================
# Commands
# =============================================================================


def cmd_radius(dr, args) -> int:
    _check_tol(args)
    inputs = {"bohr_problem": _problem_from_args(args), "tol": args.tol}
    status = EXIT_OK
    try:
        results = dr.execute(["radius_record"], inputs=inputs)
    except NoRootError as exc:
        print(f"no root: {exc}", file=sys.stderr)
        return EXIT_NO_ROOT
    except NonConvergenceError as exc:
        print(f"not converged: {exc}", file=sys.stderr)
        results = dr.execute(
            ["radius_record"], inputs=inputs, overrides={"radius_result": exc.result}
        )
        status = EXIT_FAILED

    _emit(render(results["radius_record"], args.format, single=True), args.out)
    return status


def cmd_sweep(dr, args) -> int:
    _check_tol(args)
    polynomial = _parse_flag("--poly", BohrPolynomial.parse, args.poly)
    variant = _parse_flag("--variant", ProblemVariant.parse, args.variant)
    try:
        BohrProblem(ClassSpec.w0h(1.0), polynomial, variant)
    except DomainError as exc:
        raise _flag_error("--variant", str(exc)) from exc

    inputs = {
        "alpha_min": args.alpha_min,
        "alpha_max": args.alpha_max,
        "steps": args.steps,
        "sweep_polynomial": polynomial,
        "sweep_variant": variant,
        "tol": args.tol,
    }
    try:
        results = dr.execute(["radius_sweep"], inputs=inputs)
    except DomainError as exc:
        raise _flag_error("--alpha-min/--alpha-max/--steps", str(exc)) from exc

    df = results["radius_sweep"]
    _emit(render(df, args.format), args.out)
    if df["radius"].isna().any():
        return EXIT_NO_ROOT
    if not df["converged"].all():
        return EXIT_FAILED
    return EXIT_OK


def cmd_verify(dr, args) -> int:
    _check_tol(args)
    if args.grid < MIN_GRID:
        raise _flag_error("--grid", f"must be >= {MIN_GRID}, got {args.grid!r}")
    inputs = {"bohr_problem": _problem_from_args(args), "grid_n": args.grid, "tol": args.tol}
    try:
        results = dr.execute(
            ["verification_report", "verification_summary", "verification_grid"], inputs=inputs
        )
    except NonConvergenceError as exc:
        print(f"not converged: {exc}", file=sys.stderr)
        return EXIT_FAILED

    summary, grid = results["verification_summary"], results["verification_grid"]
    if args.format == "json":
        text = json.dumps(
            {"summary": frame_to_records(summary)[0], "grid": frame_to_records(grid)}, indent=2
        )
        text += "\n"
    else:
        text = render(summary, args.format) + "\n" + render(grid, args.format)
    _emit(text, args.out)

    verdict = results["verification_report"].verdict
    if verdict is Verdict.CONSISTENT:
        return EXIT_OK
    if verdict is Verdict.DOMAIN_LIMITED:
        return EXIT_NO_ROOT
    return EXIT_FAILED


def cmd_reproduce(dr, args) -> int:
    _check_tol(args)
    results = dr.execute(
        ["paper_comparison_table", "reproduction_matches_expectations"],
        inputs={"tol": args.tol},
    )
    _emit(render(results["paper_comparison_table"], args.format), args.out)
    if not results["reproduction_matches_expectations"]:
        print("reproduction differs from the expected statuses", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


COMMANDS = {
    "radius": cmd_radius,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "reproduce": cmd_reproduce,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (None, 0) else EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    if args.command == "nodes":
        sys.stdout.write(list_outputs())
        return EXIT_OK

    try:
        return COMMANDS[args.command](build_driver(), args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

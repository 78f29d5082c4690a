"""Command-line entry point: ``caputofem solve`` and ``caputofem converge``."""

from __future__ import annotations

import argparse
import sys

from caputofem.fem1d import Mesh1D, assemble_mass, nodal_errors
from caputofem.fractional_time import make_time_grid
from caputofem.harness import (
    StudySpec,
    emit_csv,
    emit_profile,
    run_study,
    space_levels,
    time_levels,
)
from caputofem.linear_solver import CgConfig, ConvergenceError
from caputofem.problems import QuadratureError, problem_from_label
from caputofem.stepper import march

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_SOLVER = 3


def _count(length: float, step: float, what: str) -> int:
    if not step > 0:
        raise ValueError(f"{what} must be positive: got {step!r}")
    n = round(length / step)
    if n < 1 or abs(n * step - length) > 1e-9 * max(length, 1.0):
        raise ValueError(f"{what}={step!r} does not divide the interval length {length!r}")
    return n


def _alpha_list(text: str) -> list[float]:
    try:
        return [float(a) for a in text.split(",") if a.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad alpha list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="caputofem",
        description="L1 / P1 finite element solver for time-fractional diffusion on (0, 1).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="run one march and write a solution profile")
    s.add_argument("--example", required=True,
                   help="example1 | example2 | manufactured:p=<real>,q=<int>")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--dt", type=float, required=True)
    s.add_argument("--dx", type=float, required=True)
    s.add_argument("--T", type=float, required=True)
    s.add_argument("--cg-tol", type=float, default=1e-12)
    s.add_argument("--out", default="profile.csv")

    c = sub.add_parser("converge", help="run a refinement study and write a study CSV")
    c.add_argument("--example", required=True)
    c.add_argument("--alpha-list", type=_alpha_list, required=True)
    c.add_argument("--axis", choices=("time", "space"), required=True)
    c.add_argument("--levels", type=int, required=True)
    c.add_argument("--base-K", type=int, required=True)
    c.add_argument("--base-N", type=int, required=True)
    c.add_argument("--T", type=float, required=True)
    c.add_argument("--cg-tol", type=float, default=1e-12)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--out", default="study.csv")
    return parser


def _solve(args) -> int:
    K = _count(args.T, args.dt, "dt")
    N = _count(1.0, args.dx, "dx")
    problem = problem_from_label(args.example, args.alpha)
    mesh = Mesh1D.uniform(N)
    grid = make_time_grid(args.T, K, args.alpha)
    report = march(problem, mesh, grid, CgConfig(rel_tol=args.cg_tol))
    print(f"{problem.label}: alpha={args.alpha:g} K={K} N={N} "
          f"cg_iters(max)={int(report.per_step_cg_iters.max())} wall={report.wall_time:.2f}s")
    if problem.exact is not None:
        max_err, l2_err = nodal_errors(report.final_state, problem.exact, mesh, args.T,
                                       assemble_mass(mesh))
        print(f"max_error={max_err:.6e} l2_error={l2_err:.6e}")
        emit_profile(report, mesh, problem.exact, args.T, args.out)
        print(f"profile written to {args.out}")
    return EXIT_OK


def _converge(args) -> int:
    if args.levels < 1:
        raise ValueError(f"--levels must be positive: got {args.levels}")
    if args.axis == "time":
        levels = time_levels(args.base_K, args.base_N, args.levels)
    else:
        levels = space_levels(args.base_N, args.levels, args.alpha_list, args.T, args.base_K)
    spec = StudySpec(problem=args.example, alphas=tuple(args.alpha_list), axis=args.axis,
                     levels=levels, T=args.T)
    rows = run_study(spec, CgConfig(rel_tol=args.cg_tol), workers=args.workers)
    for r in rows:
        rate = "" if r.rate is None else f"{r.rate:.3f}"
        print(f"alpha={r.alpha:g} K={r.K} N={r.N} l2={r.l2_error:.4e} "
              f"max={r.max_error:.4e} rate={rate}")
    emit_csv(rows, args.out)
    print(f"study written to {args.out}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            return _solve(args)
        return _converge(args)
    except (ConvergenceError, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())

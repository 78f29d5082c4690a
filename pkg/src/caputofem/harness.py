"""Refinement studies, observed orders, and CSV output."""

from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from caputofem.fem1d import Mesh1D, assemble_mass, nodal_errors
from caputofem.fractional_time import make_time_grid
from caputofem.linear_solver import CgConfig
from caputofem.problems import problem_from_label
from caputofem.stepper import SolveReport, march

CSV_HEADER = ["alpha", "K", "N", "dt", "h", "l2_error", "max_error", "rate", "wall_time_s"]

TABLE1_ALPHAS = (0.1, 0.5, 0.9)
TABLE1_K = 100
TABLE1_N = 1000


@dataclass(frozen=True)
class StudySpec:
    """A refinement study over a list of ``(K, N)`` levels.

    Along the time axis the mesh must be fine enough that
    ``h^2 <= 0.01 * dt_coarsest^(2 - alpha)``; along the space axis every
    level must satisfy ``dt^(2 - alpha) <= 0.01 * h^2``.
    """

    problem: str
    alphas: tuple[float, ...]
    axis: str
    levels: tuple[tuple[int, int], ...]
    T: float = 1.0
    rate_norm: str = "l2"
    quad_tol: float = 1e-12

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))
        object.__setattr__(self, "levels", tuple((int(K), int(N)) for K, N in self.levels))
        if self.axis not in ("time", "space"):
            raise ValueError(f"axis must be 'time' or 'space': got {self.axis!r}")
        if self.rate_norm not in ("l2", "max"):
            raise ValueError(f"rate_norm must be 'l2' or 'max': got {self.rate_norm!r}")
        if len(self.levels) < 3:
            raise ValueError(f"a study needs at least 3 levels: got {len(self.levels)}")
        if not self.alphas:
            raise ValueError("a study needs at least one alpha")
        if not self.T > 0:
            raise ValueError(f"final time must be positive: got {self.T!r}")
        for a in self.alphas:
            if not 0.0 < a < 1.0:
                raise ValueError(f"fractional order must satisfy 0 < alpha < 1: got {a!r}")
        for K, N in self.levels:
            if K < 1 or N < 2:
                raise ValueError(f"invalid level (K={K}, N={N})")
        for a in self.alphas:
            if self.axis == "time":
                dt_coarse = self.T / min(K for K, _ in self.levels)
                for K, N in self.levels:
                    if (1.0 / N) ** 2 > 0.01 * dt_coarse ** (2.0 - a):
                        raise ValueError(
                            f"spatial error not subdominant at N={N} for alpha={a}: "
                            f"need h^2 <= 0.01*dt^(2-alpha) = {0.01 * dt_coarse ** (2.0 - a):.3e}"
                        )
            else:
                for K, N in self.levels:
                    if (self.T / K) ** (2.0 - a) > 0.01 * (1.0 / N) ** 2:
                        raise ValueError(
                            f"temporal error not subdominant at K={K}, N={N} for alpha={a}"
                        )


@dataclass(frozen=True)
class StudyRow:
    alpha: float
    K: int
    N: int
    dt: float
    h: float
    l2_error: float
    max_error: float
    rate: float | None = None
    wall_time: float = 0.0


def min_steps_for_space_study(alpha: float, N: int, T: float = 1.0) -> int:
    """Smallest ``K`` with ``(T/K)^(2 - alpha) <= 0.01 / N^2``."""
    dt_max = (0.01 / N**2) ** (1.0 / (2.0 - alpha))
    K = math.ceil(T / dt_max)
    while (T / K) ** (2.0 - alpha) > 0.01 / N**2:
        K += 1
    return K


def time_levels(base_K: int, N: int, n_levels: int) -> tuple[tuple[int, int], ...]:
    return tuple((base_K * 2**i, N) for i in range(n_levels))


def space_levels(base_N: int, n_levels: int, alphas, T: float = 1.0, base_K: int = 1):
    """Space-axis levels with ``K`` raised as needed to keep time error subdominant."""
    levels = []
    for i in range(n_levels):
        N = base_N * 2**i
        K = max([base_K] + [min_steps_for_space_study(a, N, T) for a in alphas])
        levels.append((K, N))
    return tuple(levels)


def run_level(label: str, alpha: float, K: int, N: int, T: float,
              cfg: CgConfig = CgConfig(), solver: str = "cg",
              quad_tol: float = 1e-12) -> StudyRow:
    """March one ``(alpha, K, N)`` configuration and measure the error at ``t = T``."""
    problem = problem_from_label(label, alpha, quad_tol)
    if problem.exact is None:
        raise ValueError(f"problem {label!r} has no exact solution")
    mesh = Mesh1D.uniform(N)
    grid = make_time_grid(T, K, alpha)
    start = time.perf_counter()
    report = march(problem, mesh, grid, cfg, solver=solver)
    max_err, l2_err = nodal_errors(report.final_state, problem.exact, mesh, T, assemble_mass(mesh))
    return StudyRow(alpha=alpha, K=K, N=N, dt=grid.dt, h=mesh.h_max,
                    l2_error=l2_err, max_error=max_err,
                    wall_time=time.perf_counter() - start)


def _with_rates(rows: list[StudyRow], axis: str, norm: str) -> list[StudyRow]:
    out = []
    for i, row in enumerate(rows):
        rate = None
        if i > 0:
            prev = rows[i - 1]
            e0 = prev.l2_error if norm == "l2" else prev.max_error
            e1 = row.l2_error if norm == "l2" else row.max_error
            s0, s1 = (prev.dt, row.dt) if axis == "time" else (prev.h, row.h)
            if e0 > 0 and e1 > 0 and s0 != s1:
                rate = math.log(e0 / e1) / math.log(s0 / s1)
        out.append(StudyRow(**{**row.__dict__, "rate": rate}))
    return out


def run_study(spec: StudySpec, cfg: CgConfig = CgConfig(), workers: int = 1,
              solver: str = "cg") -> list[StudyRow]:
    """Run every ``(alpha, level)`` pair and attach observed rates.

    Rows come back grouped by alpha in the order of ``spec.alphas`` and,
    within each group, in level order. Rates compare consecutive levels;
    the first level of each group has ``rate=None``.
    """
    jobs = [(spec.problem, a, K, N, spec.T, cfg, solver, spec.quad_tol)
            for a in spec.alphas for K, N in spec.levels]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_level, *job) for job in jobs]
            flat = [f.result() for f in futures]
    else:
        flat = [run_level(*job) for job in jobs]

    n = len(spec.levels)
    rows = []
    for i in range(len(spec.alphas)):
        rows.extend(_with_rates(flat[i * n:(i + 1) * n], spec.axis, spec.rate_norm))
    return rows


def reproduce_table1(cfg: CgConfig = CgConfig(), solver: str = "cg") -> list[StudyRow]:
    """Example 1 at ``dx = 0.001``, ``dt = 0.01``, ``T = 1`` for alpha 0.1, 0.5, 0.9."""
    return [run_level("example1", a, TABLE1_K, TABLE1_N, 1.0, cfg, solver)
            for a in TABLE1_ALPHAS]


def _fmt(x: float) -> str:
    return f"{x:.9e}"


def emit_csv(rows, path) -> None:
    """Write study rows as CSV with a fixed header and scientific notation."""
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for r in rows:
                writer.writerow([
                    _fmt(r.alpha), r.K, r.N, _fmt(r.dt), _fmt(r.h),
                    _fmt(r.l2_error), _fmt(r.max_error),
                    "" if r.rate is None else _fmt(r.rate), _fmt(r.wall_time),
                ])
    except OSError as exc:
        raise OSError(f"cannot write study CSV to {path!s}: {exc}") from exc


def emit_profile(report: SolveReport, mesh: Mesh1D, exact, t: float, path) -> None:
    """Write ``x,u_exact,u_num,error`` at every node, boundary nodes included.

    ``error`` is ``u_num - u_exact``.
    """
    if exact is None:
        raise ValueError("emit_profile needs an exact solution")
    x = mesh.nodes
    u_num = np.zeros_like(x)
    u_num[1:-1] = report.final_state
    u_ex = np.broadcast_to(np.asarray(exact(x, t), dtype=np.float64), x.shape)
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["x", "u_exact", "u_num", "error"])
            for row in zip(x, u_ex, u_num, u_num - u_ex):
                writer.writerow([_fmt(v) for v in row])
    except OSError as exc:
        raise OSError(f"cannot write profile CSV to {path!s}: {exc}") from exc

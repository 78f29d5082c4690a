"""Fully discrete marching: L1 in time, P1 finite elements in space.

Each step solves

    (M + alpha0 S) U^{k+1} = M (alpha0 f^{k+1} + sum_j c_j U^{k-j})

where ``c = history_coefficients(w, k)``. The step to ``t_1`` reduces to
``(M + alpha0 S) U^1 = M (alpha0 f^1 + U^0)``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_solve_banded, cholesky_banded

from caputofem.fem1d import (
    Mesh1D,
    SymTriMatrix,
    assemble_load,
    assemble_mass,
    assemble_stiffness,
    interpolate,
)
from caputofem.fractional_time import TimeGrid, L1Weights, history_coefficients, l1_weights
from caputofem.linear_solver import CgConfig, ConvergenceError, cg_solve
from caputofem.problems import Problem


@dataclass
class SolutionHistory:
    """States ``U^0, ..., U^k`` stored row-wise in a preallocated array."""

    grid: TimeGrid
    n: int
    _data: np.ndarray = field(init=False, repr=False)
    _len: int = field(init=False, default=0)

    def __post_init__(self):
        self._data = np.empty((self.grid.K + 1, self.n))

    def append(self, u) -> None:
        if self._len > self.grid.K:
            raise IndexError(f"history already holds K + 1 = {self.grid.K + 1} states")
        self._data[self._len] = u
        self._len += 1

    @property
    def states(self) -> np.ndarray:
        """Read-only view of the stored states, shape ``(len, n)``."""
        v = self._data[: self._len]
        v.flags.writeable = False
        return v

    def __len__(self) -> int:
        return self._len

    def __getitem__(self, i):
        return self.states[i]


@dataclass
class SolveReport:
    final_state: np.ndarray
    history: SolutionHistory | None
    per_step_cg_iters: np.ndarray
    wall_time: float


def form_rhs(history, M: SymTriMatrix, w: L1Weights, load, alpha0: float, k: int) -> np.ndarray:
    """Right-hand side of the step to ``t_{k+1}``.

    *history* is a :class:`SolutionHistory` or any array whose rows are
    ``U^0, ..., U^k`` (further rows are ignored).
    """
    states = history.states if isinstance(history, SolutionHistory) else np.asarray(history)
    if states.shape[0] < k + 1:
        raise ValueError(f"history holds {states.shape[0]} states, step {k} needs {k + 1}")
    load = np.asarray(load, dtype=np.float64)
    if load.shape != (M.n,) or states.shape[1] != M.n:
        raise ValueError(f"dimension mismatch: matrix {M.n}, load {load.shape}, states {states.shape}")
    c = history_coefficients(w, k)
    acc = c @ states[k::-1] if k > 0 else states[0] * c[0]
    return M @ (alpha0 * load + acc)


def march(
    problem: Problem,
    mesh: Mesh1D,
    grid: TimeGrid,
    cfg: CgConfig = CgConfig(),
    keep_history: bool = False,
    solver: str = "cg",
) -> SolveReport:
    """March the scheme from ``t_0 = 0`` to ``t_K = T``.

    ``solver="cg"`` uses conjugate gradients warm-started from the previous
    state; ``solver="direct"`` factorizes ``M + alpha0 S`` once with a banded
    Cholesky and reuses it every step.
    """
    if solver not in ("cg", "direct"):
        raise ValueError(f"unknown solver {solver!r}")
    start = time.perf_counter()
    M = assemble_mass(mesh)
    A = M + assemble_stiffness(mesh).scaled(grid.alpha0)
    w = l1_weights(grid.alpha, grid.K)
    times = grid.times

    hist = SolutionHistory(grid, M.n)
    hist.append(interpolate(mesh, problem.initial))
    problem.prepare(times[1:])

    if solver == "direct":
        factor = cholesky_banded(A.to_banded())

    iters = np.zeros(grid.K, dtype=np.int64)
    for k in range(grid.K):
        load = assemble_load(mesh, problem.forcing, times[k + 1])
        rhs = form_rhs(hist, M, w, load, grid.alpha0, k)
        if solver == "cg":
            try:
                u, iters[k], _ = cg_solve(A, rhs, hist[k], cfg)
            except ConvergenceError as exc:
                err = ConvergenceError(f"step {k + 1}: {exc}", exc.iters, exc.rel_residual)
                err.step = k + 1
                raise err from exc
        else:
            u = cho_solve_banded((factor, False), rhs)
        hist.append(u)

    final = hist[grid.K].copy()
    return SolveReport(
        final_state=final,
        history=hist if keep_history else None,
        per_step_cg_iters=iters,
        wall_time=time.perf_counter() - start,
    )

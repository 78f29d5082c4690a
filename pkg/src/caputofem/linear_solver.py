"""Solvers for symmetric positive definite tridiagonal systems."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from caputofem.fem1d import SymTriMatrix


class ConvergenceError(RuntimeError):
    """Conjugate gradients hit the iteration cap."""

    def __init__(self, message: str, iters: int, rel_residual: float):
        super().__init__(message)
        self.iters = iters
        self.rel_residual = rel_residual


class ZeroPivotError(ArithmeticError):
    """Elimination without pivoting met a zero pivot (input not SPD)."""


@dataclass(frozen=True)
class CgConfig:
    rel_tol: float = 1e-12
    max_iter: int = 100_000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive: got {self.rel_tol!r}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1: got {self.max_iter!r}")


class CgResult(NamedTuple):
    x: np.ndarray
    iters: int
    final_rel_residual: float


def cg_solve(
    A: SymTriMatrix,
    rhs,
    x0=None,
    cfg: CgConfig = CgConfig(),
    callback: Callable[[np.ndarray], None] | None = None,
) -> CgResult:
    """Unpreconditioned conjugate gradients for ``A x = rhs``.

    Iterates until the recursively updated residual satisfies
    ``||r|| <= cfg.rel_tol * ||rhs||``. The returned residual is recomputed
    from scratch, so it can sit slightly above the tolerance for
    ill-conditioned systems where rounding sets a floor.

    *callback*, if given, is called with the iterate after every update.
    """
    b = np.asarray(rhs, dtype=np.float64)
    n = A.n
    if b.shape != (n,):
        raise ValueError(f"dimension mismatch: matrix {n}, rhs {b.shape}")
    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        return CgResult(np.zeros(n), 0, 0.0)

    x = np.zeros(n) if x0 is None else np.array(x0, dtype=np.float64)
    if x.shape != (n,):
        raise ValueError(f"dimension mismatch: matrix {n}, x0 {x.shape}")
    r = b - A @ x
    rr = r @ r
    stop = (cfg.rel_tol * bnorm) ** 2
    if rr <= stop:
        return CgResult(x, 0, float(np.sqrt(rr) / bnorm))

    p = r.copy()
    it = 0
    while it < cfg.max_iter:
        Ap = A @ p
        step = rr / (p @ Ap)
        x += step * p
        r -= step * Ap
        it += 1
        if callback is not None:
            callback(x)
        rr_new = r @ r
        if rr_new <= stop:
            break
        p *= rr_new / rr
        p += r
        rr = rr_new
    else:
        res = float(np.linalg.norm(b - A @ x) / bnorm)
        raise ConvergenceError(
            f"CG did not converge in {cfg.max_iter} iterations (relative residual {res:.3e})",
            it, res,
        )
    return CgResult(x, it, float(np.linalg.norm(b - A @ x) / bnorm))


def tridiag_solve(A: SymTriMatrix, rhs) -> np.ndarray:
    """Direct solve by tridiagonal LU without pivoting (Thomas algorithm)."""
    b = np.asarray(rhs, dtype=np.float64)
    n = A.n
    if b.shape != (n,):
        raise ValueError(f"dimension mismatch: matrix {n}, rhs {b.shape}")
    d, e = A.diag, A.off
    scale = np.max(np.abs(d)) if n else 0.0
    tiny = np.finfo(np.float64).eps * max(scale, np.finfo(np.float64).tiny) * n
    c = np.empty(max(n - 1, 0))
    y = np.empty(n)
    piv = d[0]
    if abs(piv) <= tiny:
        raise ZeroPivotError("zero pivot at row 0")
    y[0] = b[0] / piv
    for i in range(1, n):
        c[i - 1] = e[i - 1] / piv
        piv = d[i] - e[i - 1] * c[i - 1]
        if abs(piv) <= tiny:
            raise ZeroPivotError(f"zero pivot at row {i}")
        y[i] = (b[i] - e[i - 1] * y[i - 1]) / piv
    for i in range(n - 2, -1, -1):
        y[i] -= c[i] * y[i + 1]
    return y

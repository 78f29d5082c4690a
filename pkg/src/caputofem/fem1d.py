"""Piecewise-linear finite elements on a 1D mesh of ``[0, 1]``.

Matrices are stored as symmetric tridiagonal pairs ``(diag, off)``. Unless
asked otherwise, assembly eliminates the two Dirichlet boundary nodes, so the
dimension equals the number of interior nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Mesh1D:
    """Sorted nodes ``0 = x_0 < x_1 < ... < x_N = 1``."""

    nodes: np.ndarray = field(repr=False)

    def __post_init__(self):
        x = np.array(self.nodes, dtype=np.float64)
        if x.ndim != 1 or x.size < 3:
            raise ValueError("mesh needs at least one interior node")
        if x[0] != 0.0 or x[-1] != 1.0:
            raise ValueError(f"mesh endpoints must be exactly 0 and 1: got {x[0]}, {x[-1]}")
        if np.any(np.diff(x) <= 0):
            raise ValueError("mesh nodes must be strictly increasing")
        x.setflags(write=False)
        object.__setattr__(self, "nodes", x)

    @classmethod
    def uniform(cls, N: int) -> "Mesh1D":
        """Uniform mesh with ``N`` elements."""
        if int(N) != N or N < 2:
            raise ValueError(f"uniform mesh needs N >= 2 elements: got {N!r}")
        x = np.linspace(0.0, 1.0, int(N) + 1)
        return cls(x)

    @property
    def N(self) -> int:
        return self.nodes.size - 1

    @property
    def sizes(self) -> np.ndarray:
        return np.diff(self.nodes)

    @property
    def h_max(self) -> float:
        return float(self.sizes.max())

    @property
    def interior(self) -> np.ndarray:
        return self.nodes[1:-1]


@dataclass(frozen=True)
class SymTriMatrix:
    """Symmetric tridiagonal matrix with main diagonal *diag* and off-diagonal *off*."""

    diag: np.ndarray
    off: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=np.float64)
        o = np.asarray(self.off, dtype=np.float64)
        if d.ndim != 1 or o.ndim != 1 or o.size != max(d.size - 1, 0):
            raise ValueError(f"inconsistent tridiagonal shapes: diag {d.shape}, off {o.shape}")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "off", o)

    @property
    def n(self) -> int:
        return self.diag.size

    def __matmul__(self, x):
        x = np.asarray(x, dtype=np.float64)
        if x.shape[0] != self.n:
            raise ValueError(f"dimension mismatch: matrix {self.n}, vector {x.shape[0]}")
        y = self.diag * x
        y[:-1] += self.off * x[1:]
        y[1:] += self.off * x[:-1]
        return y

    def __add__(self, other: "SymTriMatrix") -> "SymTriMatrix":
        return SymTriMatrix(self.diag + other.diag, self.off + other.off)

    def scaled(self, c: float) -> "SymTriMatrix":
        return SymTriMatrix(c * self.diag, c * self.off)

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.off, 1) + np.diag(self.off, -1)

    def to_banded(self) -> np.ndarray:
        """Upper banded storage as used by :func:`scipy.linalg.cholesky_banded`."""
        ab = np.zeros((2, self.n))
        ab[0, 1:] = self.off
        ab[1] = self.diag
        return ab


def _assemble(mesh: Mesh1D, diag_el: np.ndarray, off_el: np.ndarray, interior: bool) -> SymTriMatrix:
    # diag_el[e] is added to both endpoints of element e, off_el[e] couples them
    d = np.zeros(mesh.N + 1)
    d[:-1] += diag_el
    d[1:] += diag_el
    A = SymTriMatrix(d, off_el.copy())
    if interior:
        A = SymTriMatrix(A.diag[1:-1], A.off[1:-1])
    return A


def assemble_mass(mesh: Mesh1D, interior: bool = True) -> SymTriMatrix:
    """Exact P1 mass matrix ``M_ij = (phi_i, phi_j)``."""
    h = mesh.sizes
    return _assemble(mesh, h / 3.0, h / 6.0, interior)


def assemble_stiffness(mesh: Mesh1D, interior: bool = True) -> SymTriMatrix:
    """Exact P1 stiffness matrix ``S_ij = (phi_i', phi_j')``."""
    h = mesh.sizes
    return _assemble(mesh, 1.0 / h, -1.0 / h, interior)


def assemble_load(mesh: Mesh1D, f_at, t: float) -> np.ndarray:
    """Sample ``f(x, t)`` at the interior nodes.

    The forcing enters the discrete system as ``M @ load``, i.e. f is replaced
    by its nodal interpolant rather than integrated against each hat function.
    """
    x = mesh.interior
    return np.broadcast_to(np.asarray(f_at(x, t), dtype=np.float64), x.shape).copy()


def interpolate(mesh: Mesh1D, g) -> np.ndarray:
    """Nodal interpolant of ``g(x)`` at interior nodes."""
    x = mesh.interior
    return np.broadcast_to(np.asarray(g(x), dtype=np.float64), x.shape).copy()


def l2_norm(v, M: SymTriMatrix) -> float:
    """Discrete L2 norm ``sqrt(v^T M v)`` of a nodal vector."""
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (M.n,):
        raise ValueError(f"dimension mismatch: matrix {M.n}, vector {v.shape}")
    return float(np.sqrt(max(v @ (M @ v), 0.0)))


def nodal_errors(u_num, exact, mesh: Mesh1D, t: float, M: SymTriMatrix | None = None) -> tuple[float, float]:
    """Max-abs and mass-weighted L2 norm of ``u_num - exact(., t)`` at interior nodes."""
    u_num = np.asarray(u_num, dtype=np.float64)
    err = u_num - np.asarray(exact(mesh.interior, t), dtype=np.float64)
    if M is None:
        M = assemble_mass(mesh)
    max_err = float(np.max(np.abs(err))) if err.size else 0.0
    return max_err, l2_norm(err, M)

"""L1 discretization of the Caputo derivative on a uniform time grid.

For ``0 < alpha < 1`` the Caputo derivative at ``t_{k+1}`` is approximated by

.. math::

    L u(t_{k+1}) = \\frac{1}{\\alpha_0} \\Big( u(t_{k+1}) - (1 - b_1) u(t_k)
        - \\sum_{j=1}^{k-1} (b_j - b_{j+1}) u(t_{k-j}) - b_k u(t_0) \\Big),

with :math:`b_j = (j+1)^{1-\\alpha} - j^{1-\\alpha}` and
:math:`\\alpha_0 = \\Gamma(2 - \\alpha) \\Delta t^\\alpha`. The local
truncation error is :math:`O(\\Delta t^{2-\\alpha})`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from caputofem.special import gamma


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"fractional order must satisfy 0 < alpha < 1: got {alpha!r}")


@dataclass(frozen=True)
class TimeGrid:
    """Uniform partition ``t_k = k * dt`` of ``[0, T]`` with ``K`` steps."""

    T: float
    K: int
    alpha: float
    dt: float
    alpha0: float

    @property
    def times(self) -> np.ndarray:
        """All grid times ``t_0, ..., t_K``."""
        return np.arange(self.K + 1) * self.dt


@dataclass(frozen=True)
class L1Weights:
    """The weights ``b_0, ..., b_{K-1}`` for a given order."""

    b: np.ndarray = field(repr=False)
    alpha: float

    def __len__(self) -> int:
        return self.b.size


def make_time_grid(T: float, K: int, alpha: float) -> TimeGrid:
    """Build the uniform time grid and its scale ``alpha0 = Gamma(2 - alpha) dt^alpha``."""
    _check_alpha(alpha)
    if not T > 0:
        raise ValueError(f"final time must be positive: got {T!r}")
    if int(K) != K or K < 1:
        raise ValueError(f"number of time steps must be a positive integer: got {K!r}")
    K = int(K)
    dt = T / K
    return TimeGrid(T=float(T), K=K, alpha=float(alpha), dt=dt,
                    alpha0=gamma(2.0 - alpha) * dt**alpha)


def l1_weights(alpha: float, K: int) -> L1Weights:
    """Return ``b_j = (j+1)^(1-alpha) - j^(1-alpha)`` for ``j = 0, ..., K-1``."""
    _check_alpha(alpha)
    if int(K) != K or K < 1:
        raise ValueError(f"number of weights must be a positive integer: got {K!r}")
    j = np.arange(int(K), dtype=np.float64)
    b = (j + 1.0) ** (1.0 - alpha) - j ** (1.0 - alpha)
    b.setflags(write=False)
    return L1Weights(b=b, alpha=float(alpha))


def history_coefficients(w: L1Weights, k: int) -> np.ndarray:
    """Multipliers of ``u^k, u^{k-1}, ..., u^0`` in the step to ``t_{k+1}``.

    The result is ``[1 - b_1, b_1 - b_2, ..., b_{k-1} - b_k, b_k]`` for
    ``k >= 1`` and ``[1]`` for ``k = 0``. The entries are nonnegative and sum
    to one.
    """
    K = len(w)
    if not 0 <= k < K:
        raise IndexError(f"step index out of range: 0 <= {k} < {K}")
    if k == 0:
        return np.ones(1)
    b = w.b
    c = np.empty(k + 1)
    c[:k] = b[:k] - b[1:k + 1]
    c[k] = b[k]
    return c


def apply_l1_operator(samples, grid: TimeGrid, w: L1Weights, k: int) -> float:
    """Apply the discrete Caputo operator at ``t_{k+1}`` to scalar samples.

    *samples* holds ``u(t_0), ..., u(t_{k+1})``; extra trailing samples are
    not allowed.
    """
    u = np.asarray(samples, dtype=np.float64)
    if u.ndim != 1 or u.size != k + 2:
        raise ValueError(f"expected {k + 2} samples u(t_0)..u(t_{k + 1}): got shape {u.shape}")
    if k + 1 > grid.K:
        raise IndexError(f"step {k + 1} beyond grid with K = {grid.K}")
    c = history_coefficients(w, k)
    # c pairs with u^k, ..., u^0
    past = u[k::-1]
    return float((u[k + 1] - c @ past) / grid.alpha0)

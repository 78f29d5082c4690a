"""Test problems with known solutions.

Every problem is posed on ``0 < x < 1`` with homogeneous Dirichlet data.
Forcing functions take an array of positions and a scalar time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from caputofem.special import gamma

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


def _noop(times) -> None:
    return None


@dataclass(frozen=True)
class Problem:
    """Forcing, initial data and (optionally) the exact solution of one problem.

    ``prepare`` is called by the time stepper with the array of step times
    before marching starts; problems with expensive time factors use it to
    fill a cache.
    """

    forcing: Callable[[np.ndarray, float], np.ndarray]
    initial: Callable[[np.ndarray], np.ndarray]
    exact: Callable[[np.ndarray, float], np.ndarray] | None = None
    label: str = ""
    prepare: Callable[[np.ndarray], None] = field(default=_noop, repr=False)


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"fractional order must satisfy 0 < alpha < 1: got {alpha!r}")


def _zero(x):
    return np.zeros_like(np.asarray(x, dtype=np.float64))


def _graded_panel_rule(t: float, ratio: float, levels: int, n_sub: int):
    """Gauss nodes/weights on ``[t*ratio**levels, t]`` graded toward zero."""
    edges = t * ratio ** np.arange(levels, -1, -1.0)
    # split every geometric panel into n_sub equal pieces
    frac = np.linspace(0.0, 1.0, n_sub + 1)
    a, b = edges[:-1], edges[1:]
    sub = a[:, None] + (b - a)[:, None] * frac[None, :]
    lo, hi = sub[:, :-1].ravel(), sub[:, 1:].ravel()
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    weights = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    return nodes, weights


def weakly_singular_integral(
    g: Callable[[np.ndarray], np.ndarray],
    t: float,
    alpha: float,
    tol: float = 1e-12,
    ratio: float = 0.15,
    max_sub: int = 512,
) -> float:
    """Compute ``int_0^t tau^(-alpha) g(tau) dtau`` for smooth *g*.

    Panels are graded geometrically toward the singular endpoint and each
    carries an 8-point Gauss-Legendre rule. The innermost panel
    ``[0, eps]`` is integrated with *g* frozen at zero, which is exact up to
    ``O(eps^(2 - alpha))``; ``eps`` is picked so this term sits well below
    *tol*. Panels are then halved until two successive estimates differ by
    less than *tol*.
    """
    if t == 0.0:
        return 0.0
    if t < 0.0:
        raise ValueError(f"upper limit must be nonnegative: got {t!r}")
    if not tol > 0:
        raise ValueError(f"tolerance must be positive: got {tol!r}")

    # eps^(2-alpha) <= 1e-3 * tol
    levels = max(1, math.ceil(math.log(1e-3 * tol / t ** (2.0 - alpha)) / ((2.0 - alpha) * math.log(ratio))))
    eps = t * ratio**levels
    inner = float(g(np.zeros(1))[0]) * eps ** (1.0 - alpha) / (1.0 - alpha)

    prev = None
    n_sub = 1
    while n_sub <= max_sub:
        x, w = _graded_panel_rule(t, ratio, levels, n_sub)
        val = inner + float(np.sum(w * x ** (-alpha) * g(x)))
        if prev is not None and abs(val - prev) < tol:
            return val
        prev = val
        n_sub *= 2
    raise QuadratureError(f"weakly singular quadrature did not reach tol={tol:g} at t={t!r}")


class CaputoSinPi:
    """Caputo derivative of ``sin(pi t)`` of order *alpha*, with per-time cache.

    Values are computed by :func:`weakly_singular_integral` after the change
    of variables ``tau = t - s``, which moves the kernel singularity to zero.
    """

    def __init__(self, alpha: float, tol: float = 1e-12):
        _check_alpha(alpha)
        self.alpha = alpha
        self.tol = tol
        self._scale = 1.0 / gamma(1.0 - alpha)
        self._cache: dict[float, float] = {}

    def _evaluate(self, t: float) -> float:
        def g(tau):
            return np.pi * np.cos(np.pi * (t - tau))

        return self._scale * weakly_singular_integral(g, t, self.alpha, self.tol)

    def __call__(self, t: float) -> float:
        t = float(t)
        val = self._cache.get(t)
        if val is None:
            val = self._cache[t] = self._evaluate(t)
        return val

    def precompute(self, times) -> None:
        for t in np.asarray(times, dtype=np.float64).ravel():
            self(t)


def example1(alpha: float) -> Problem:
    """``u = t^2 sin(2 pi x)`` with the matching forcing and ``u_0 = 0``."""
    _check_alpha(alpha)
    c = 2.0 / gamma(3.0 - alpha)
    four_pi2 = 4.0 * np.pi**2

    def forcing(x, t):
        s = np.sin(2.0 * np.pi * np.asarray(x, dtype=np.float64))
        return (c * t ** (2.0 - alpha) + four_pi2 * t**2) * s

    def exact(x, t):
        return t**2 * np.sin(2.0 * np.pi * np.asarray(x, dtype=np.float64))

    return Problem(forcing=forcing, initial=_zero, exact=exact, label="example1")


def example2(alpha: float, quad_tol: float = 1e-12, paper_sign: bool = False) -> Problem:
    """``u = sin(pi t) sin(pi x)`` with a quadrature-evaluated Caputo term.

    The diffusion part of the forcing is ``+pi^2 sin(pi t) sin(pi x)``, which
    is what the exact solution requires. ``paper_sign=True`` flips it to the
    negative sign found in the printed version of this example, for
    comparison runs only; the exact solution then no longer matches.
    """
    _check_alpha(alpha)
    if not quad_tol > 0:
        raise ValueError(f"quad_tol must be positive: got {quad_tol!r}")
    caputo = CaputoSinPi(alpha, quad_tol)
    sign = -1.0 if paper_sign else 1.0
    pi2 = np.pi**2

    def forcing(x, t):
        s = np.sin(np.pi * np.asarray(x, dtype=np.float64))
        return (caputo(t) + sign * pi2 * np.sin(np.pi * t)) * s

    def exact(x, t):
        return np.sin(np.pi * t) * np.sin(np.pi * np.asarray(x, dtype=np.float64))

    label = "example2-paper-sign" if paper_sign else "example2"
    return Problem(forcing=forcing, initial=_zero, exact=exact, label=label,
                   prepare=caputo.precompute)


def manufactured(p: float, q: int, alpha: float) -> Problem:
    """``u = t^p sin(q pi x)`` for ``1 <= p <= 3`` and integer ``q >= 1``."""
    _check_alpha(alpha)
    if not 1.0 <= p <= 3.0:
        # Gamma(p + 1) must stay inside the supported gamma range
        raise ValueError(f"power p must satisfy 1 <= p <= 3: got {p!r}")
    if int(q) != q or q < 1:
        raise ValueError(f"wave number q must be a positive integer: got {q!r}")
    q = int(q)
    c = gamma(p + 1.0) / gamma(p + 1.0 - alpha)
    k2 = (q * np.pi) ** 2

    def forcing(x, t):
        s = np.sin(q * np.pi * np.asarray(x, dtype=np.float64))
        return (c * t ** (p - alpha) + k2 * t**p) * s

    def exact(x, t):
        return t**p * np.sin(q * np.pi * np.asarray(x, dtype=np.float64))

    return Problem(forcing=forcing, initial=_zero, exact=exact,
                   label=f"manufactured:p={p:g},q={q}")


def problem_from_label(label: str, alpha: float, quad_tol: float = 1e-12) -> Problem:
    """Build a problem from ``example1``, ``example2`` or ``manufactured:p=<real>,q=<int>``."""
    label = label.strip()
    if label == "example1":
        return example1(alpha)
    if label == "example2":
        return example2(alpha, quad_tol)
    if label.startswith("manufactured:"):
        params = {}
        for item in label.split(":", 1)[1].split(","):
            key, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"malformed manufactured parameter {item!r} in {label!r}")
            params[key.strip()] = value.strip()
        if set(params) != {"p", "q"}:
            raise ValueError(f"manufactured problem needs exactly p and q: got {label!r}")
        try:
            p, q = float(params["p"]), int(params["q"])
        except ValueError as exc:
            raise ValueError(f"bad manufactured parameters in {label!r}: {exc}") from None
        return manufactured(p, q, alpha)
    raise ValueError(f"unknown problem label {label!r}")

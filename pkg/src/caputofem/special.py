"""Gamma function on the positive range used by the L1 scheme."""

from __future__ import annotations

import math

GAMMA_MAX_ARG = 4.0


def gamma(x: float) -> float:
    """Evaluate the Gamma function for ``0 < x <= 4``.

    Only arguments of the form ``2 - alpha``, ``1 - alpha`` or ``p + 1 - alpha``
    with small integer ``p`` occur in the solver, so the domain is deliberately
    narrow. Values are accurate to a few ulps.

    Raises
    ------
    ValueError
        If *x* is outside ``(0, 4]`` or not finite.
    """
    x = float(x)
    if not (0.0 < x <= GAMMA_MAX_ARG):
        raise ValueError(f"gamma argument must lie in (0, {GAMMA_MAX_ARG}]: got {x!r}")
    return math.gamma(x)

"""
The L1 approximation of the Caputo derivative
=============================================

Builds the weights b_j, checks that the step coefficients form a convex
combination, and measures the kernel's order on u(t) = t^2.
"""

import math

import numpy as np

from caputofem import apply_l1_operator, history_coefficients, l1_weights, make_time_grid

# weights for alpha = 0.5: b_1 = sqrt(2) - 1, b_2 = sqrt(3) - sqrt(2)
w = l1_weights(0.5, 6)
print("b_j:", np.round(w.b, 8))

# the multipliers of U^k, ..., U^0 in the step to t_{k+1}
for k in range(4):
    c = history_coefficients(w, k)
    print(f"k={k}: {np.round(c, 6)}  sum={c.sum():.15f}")

# truncation error on t^2 at t = 1 decays like dt^(2 - alpha)
for alpha in (0.25, 0.5, 0.75):
    exact = 2 / math.gamma(3 - alpha)
    errs = []
    for K in (32, 64, 128, 256, 512):
        g = make_time_grid(1.0, K, alpha)
        errs.append(abs(apply_l1_operator(g.times**2, g, l1_weights(alpha, K), K - 1) - exact))
    rates = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    print(f"alpha={alpha}: observed orders {np.round(rates, 3)} (expected {2 - alpha})")

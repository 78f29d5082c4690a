"""
Example 2: u = sin(pi t) sin(pi x)
==================================

The forcing contains the Caputo derivative of sin(pi t), which is a weakly
singular integral. It is evaluated by graded Gauss quadrature and compared
with the term-by-term Caputo derivative of the Taylor series.
"""

import math

import numpy as np

from caputofem import Mesh1D, emit_profile, example2, make_time_grid, march, nodal_errors
from caputofem.problems import CaputoSinPi

alpha = 0.2
D = CaputoSinPi(alpha, tol=1e-12)


def series(t, terms=30):
    return sum((-1) ** n * math.pi ** (2 * n + 1) * t ** (2 * n + 1 - alpha)
               / math.gamma(2 * n + 2 - alpha) for n in range(terms))


for t in (0.1, 0.5, 1.0):
    print(f"t={t}: quadrature {D(t): .15f}  series {series(t): .15f}")

mesh = Mesh1D.uniform(100)
problem = example2(alpha)
report = march(problem, mesh, make_time_grid(1.0, 100, alpha))
print("max / L2 error at T=1: %.2e / %.2e" % nodal_errors(report.final_state, problem.exact, mesh, 1.0))
emit_profile(report, mesh, problem.exact, 1.0, "example2_profile.csv")

# the printed forcing has the opposite sign on the diffusion term; with it the
# computed solution no longer approximates sin(pi t) sin(pi x)
literal = example2(alpha, paper_sign=True)
r2 = march(literal, mesh, make_time_grid(1.0, 100, alpha))
mid = make_time_grid(0.5, 50, alpha)
r_mid = march(problem, mesh, mid)
r2_mid = march(literal, mesh, mid)
print("at t=0.5, max |u_h - u|: +pi^2 forcing %.2e, -pi^2 forcing %.2e" % (
    np.max(np.abs(r_mid.final_state - problem.exact(mesh.interior, 0.5))),
    np.max(np.abs(r2_mid.final_state - problem.exact(mesh.interior, 0.5))),
))

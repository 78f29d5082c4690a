"""
Example 1: u = t^2 sin(2 pi x)
==============================

Runs the fine-grid configuration (dx = 0.001, dt = 0.01, T = 1) for three
orders, prints the nodal errors at a few sample nodes, and writes the
solution/error profiles as CSV.
"""

import numpy as np

from caputofem import Mesh1D, emit_profile, example1, make_time_grid, march, nodal_errors

mesh = Mesh1D.uniform(1000)
sample = [100, 300, 500, 700, 900]

for alpha in (0.1, 0.5, 0.9):
    problem = example1(alpha)
    report = march(problem, mesh, make_time_grid(1.0, 100, alpha))
    max_err, l2_err = nodal_errors(report.final_state, problem.exact, mesh, 1.0)
    print(f"alpha={alpha}: max error {max_err:.2e}, L2 error {l2_err:.2e}, "
          f"{report.wall_time:.2f}s, CG iterations per step <= {report.per_step_cg_iters.max()}")
    for i in sample:
        x = mesh.nodes[i]
        u = report.final_state[i - 1]
        ex = problem.exact(np.array([x]), 1.0)[0]
        print(f"    x={x:.3f}  exact={ex: .6f}  approx={u: .6f}  error={u - ex: .1e}")
    emit_profile(report, mesh, problem.exact, 1.0, f"example1_alpha{alpha}.csv")

"""L1 finite difference / P1 finite element solver for time-fractional diffusion.

Solves ``D_t^alpha u - u_xx = f`` on ``0 < x < 1`` with a Caputo derivative
of order ``0 < alpha < 1`` and homogeneous Dirichlet boundary conditions.
"""

from caputofem.fem1d import (
    Mesh1D,
    SymTriMatrix,
    assemble_load,
    assemble_mass,
    assemble_stiffness,
    interpolate,
    l2_norm,
    nodal_errors,
)
from caputofem.fractional_time import (
    L1Weights,
    TimeGrid,
    apply_l1_operator,
    history_coefficients,
    l1_weights,
    make_time_grid,
)
from caputofem.harness import (
    StudyRow,
    StudySpec,
    emit_csv,
    emit_profile,
    reproduce_table1,
    run_study,
)
from caputofem.linear_solver import (
    CgConfig,
    ConvergenceError,
    ZeroPivotError,
    cg_solve,
    tridiag_solve,
)
from caputofem.problems import (
    Problem,
    QuadratureError,
    example1,
    example2,
    manufactured,
    problem_from_label,
)
from caputofem.special import gamma
from caputofem.stepper import SolutionHistory, SolveReport, form_rhs, march

__version__ = "0.1.0"

"""
Observed orders in time and space
=================================

Temporal refinement should give order 2 - alpha and spatial refinement
order 2. Results are written as study CSVs; a log-log plot is saved if
matplotlib is available.
"""

from caputofem import StudySpec, emit_csv, run_study
from caputofem.harness import space_levels, time_levels

time_spec = StudySpec("example1", (0.5, 0.9), "time", time_levels(20, 2000, 4))
time_rows = run_study(time_spec)
emit_csv(time_rows, "time_study.csv")

space_spec = StudySpec("example1", (0.5,), "space", space_levels(8, 4, [0.5]))
space_rows = run_study(space_spec)
emit_csv(space_rows, "space_study.csv")

for r in time_rows + space_rows:
    rate = "" if r.rate is None else f"{r.rate:.3f}"
    print(f"alpha={r.alpha} K={r.K:5d} N={r.N:5d} L2={r.l2_error:.3e} rate={rate}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    for a in time_spec.alphas:
        rows = [r for r in time_rows if r.alpha == a]
        ax1.loglog([r.dt for r in rows], [r.l2_error for r in rows], "o-", label=f"alpha={a}")
    ax1.set_xlabel("dt")
    ax1.set_ylabel("L2 error at T")
    ax1.legend()
    ax2.loglog([r.h for r in space_rows], [r.l2_error for r in space_rows], "s-")
    ax2.set_xlabel("h")
    fig.tight_layout()
    fig.savefig("convergence.png", dpi=120)

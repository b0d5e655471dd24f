"""Scratch FD-vs-CSG validation (not part of the deliverable)."""
import time
import numpy as np
import celltherm as ct
from celltherm.galerkin import assemble, project_initial_state
from celltherm.simulate import run
from celltherm.reference import FdConfig, fd_solve, TecModel, tec_run

spec = ct.PAPER_CELL
cool = ct.scenario_cooling("SC")
u = ct.boundary_input_from_cooling(cool).as_vector(spec.shape)
q = 1e5

# FD 128x128, CN, dt=0.05, 600 s
t0 = time.perf_counter()
fd = fd_solve(spec, cool, None, q, FdConfig(128, 128, 0.05), T_init=15.0,
              horizon=600.0, metrics_stride=100)
print(f"FD run took {time.perf_counter()-t0:.1f} s")
print("FD outputs at 600 s:", fd.outputs[-1])

# compare CSG orders at matched times (every 1 s -> every 20 FD steps)
fd_sub = fd.outputs[::20]
errs = []
for MN in (1, 2, 3, 4, 5):
    m = assemble(spec, cool, MN, MN)
    X0 = project_initial_state(m, 15.0, u)
    res = run(m, X0, u, q, dt=1.0, horizon=600.0, metrics_stride=600)
    err = np.abs(res.outputs - fd_sub).max()
    errs.append(err)
    print(f"O={MN*MN}: max output err vs FD = {err:.4f} degC ; outputs(600s) = {res.outputs[-1]}")
print("non-increasing:", all(errs[i+1] <= errs[i] + 1e-9 for i in range(len(errs)-1)))

# energy balance FD insulated
cool0 = ct.CoolingConfig(*(ct.SideCooling(0.0, 15.0) for _ in range(4)), scenario_name="ins")
fd0 = fd_solve(spec, cool0, None, 5e4, FdConfig(64, 64, 0.1), T_init=15.0,
               horizon=50.0, metrics_stride=50)
slope = (fd0.T_mean[-1] - fd0.T_mean[0]) / (fd0.metrics_times[-1] - fd0.metrics_times[0])
print(f"FD insulated slope {slope:.6f} (want {5e4/(2118*795):.6f})")

# TEC steady state
tec = TecModel()
_, tc, ts = tec_run(tec, 10.0, 1.0, 20000.0)
print(f"TEC steady: T_c={tc[-1]:.6f} (want 22.3), T_s={ts[-1]:.6f} (want 15.8)")
print("TEC analytic:", tec.steady_state(10.0))

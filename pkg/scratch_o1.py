"""Diagnose the O=1 error trace (not part of the deliverable)."""
import numpy as np
import celltherm as ct
from celltherm.galerkin import assemble, project_initial_state
from celltherm.simulate import run
from celltherm.reference import FdConfig, fd_solve

spec = ct.PAPER_CELL
cool = ct.scenario_cooling("SC")
u = ct.boundary_input_from_cooling(cool).as_vector(spec.shape)
q = 1e5

fd = fd_solve(spec, cool, None, q, FdConfig(128, 128, 0.05), T_init=15.0,
              horizon=600.0, metrics_stride=12000)
fd_sub = fd.outputs[::20]

m = assemble(spec, cool, 1, 1)
X0 = project_initial_state(m, 15.0, u)
res = run(m, X0, u, q, dt=1.0, horizon=600.0, metrics_stride=600)
err = np.abs(res.outputs - fd_sub)
k = np.unravel_index(np.argmax(err), err.shape)
print("Y(0) =", res.outputs[0], " (equilibrium defect:", np.abs(res.outputs[0]-15.0).max(), ")")
print("max err", err.max(), "at t =", res.times[k[0]], "output idx", k[1])
for t in (0, 30, 60, 120, 200, 300, 450, 600):
    print(f"t={t:4d}  err per output: {err[t]}")

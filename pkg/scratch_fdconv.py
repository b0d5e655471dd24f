"""FD self-convergence at the criterion's worst-case point (scratch)."""
import numpy as np
import celltherm as ct
from celltherm.reference import FdConfig, fd_solve

spec = ct.PAPER_CELL
cool = ct.scenario_cooling("SC")
q = 1e5
for n, dt in ((64, 0.1), (128, 0.05), (192, 0.05), (256, 0.025)):
    fd = fd_solve(spec, cool, None, q, FdConfig(n, n, dt), T_init=15.0,
                  horizon=200.0, metrics_stride=10**9)
    k188 = int(round(188.0 / dt))
    print(f"n={n:4d} dt={dt}: core(188s) = {fd.outputs[k188,1]:.5f}  surface = {fd.outputs[k188,0]:.5f}")

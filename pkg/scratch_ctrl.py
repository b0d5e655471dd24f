"""Closed-loop prototype: check default gains track the 20 degC setpoint."""
import numpy as np
import celltherm as ct
from celltherm.galerkin import assemble
from celltherm.control import closed_loop_run

spec = ct.PAPER_CELL
q = 4e4
for name in ("aTSC", "btTC", "SC", "bTSC", "bTC"):
    cool = ct.scenario_cooling(name)
    model = assemble(spec, cool, 3, 3)
    tr = closed_loop_run(model, name, 20.0, q, dt=1.0, horizon=1200.0)
    tail = slice(int(0.8 * len(tr.times)), None)
    err_tail = np.abs(tr.T_mean[tail] - 20.0).max()
    print(f"{name:5s}: |T_mean-20| tail max = {err_tail:.3f}; "
          f"dTr_mean tail avg = {tr.dTr_mean[tail].mean():.2f}; "
          f"dTz_mean tail avg = {tr.dTz_mean[tail].mean():.2f}; "
          f"coolant range = [{tr.coolant.min():.1f}, {tr.coolant.max():.1f}]; "
          f"overshoot = {tr.T_mean.max():.2f}")

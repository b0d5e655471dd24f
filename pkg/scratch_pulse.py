"""Pulse-profile selection for the TEC comparison (scratch)."""
import numpy as np
import celltherm as ct
from celltherm.core import cell_volume, resample_profile
from celltherm.galerkin import assemble, project_initial_state
from celltherm.profiles import pulse_train
from celltherm.reference import FdConfig, TecModel, fd_solve, tec_metrics, tec_run
from celltherm.simulate import run

spec = ct.PAPER_CELL
cool = ct.scenario_cooling("SC")
u = ct.boundary_input_from_cooling(cool).as_vector(spec.shape)
vol = cell_volume(spec)
tec = TecModel()

def compare(amp, period, duty, horizon, dt=1.0):
    prof = pulse_train(amp, period, duty, horizon)
    q = resample_profile(prof, dt, horizon)
    q_fd = resample_profile(prof, 0.1, horizon)
    fd = fd_solve(spec, cool, None, q_fd, FdConfig(96, 96, 0.1), 15.0, horizon,
                  metrics_stride=10)
    m = assemble(spec, cool, 1, 1)
    x0 = project_initial_state(m, 15.0, u)
    res = run(m, x0, u, q, dt, horizon, metrics_stride=1)
    _, tc, ts = tec_run(tec, q * vol, dt, horizon)
    tmean_tec, grad_tec = tec_metrics(tc, ts, spec)
    # common time base: dt grid
    def sub(ft, fv, t):
        i = np.clip(np.searchsorted(ft, t), 0, len(ft) - 1)
        return fv[i]
    t = res.metrics_times
    ref_mean = sub(fd.metrics_times, fd.T_mean, t)
    ref_max = sub(fd.metrics_times, fd.T_max, t)
    ref_grad = sub(fd.metrics_times, fd.dTr_max, t)
    e_csg = (np.abs(res.T_mean - ref_mean).max(),
             np.abs(res.T_max - ref_max).max(),
             np.abs(res.dTr_max - ref_grad).max())
    e_tec = (np.abs(tmean_tec - ref_mean).max(),
             np.abs(tc - ref_max).max(),
             np.abs(grad_tec - ref_grad).max())
    ok = all(c < t_ for c, t_ in zip(e_csg, e_tec))
    print(f"amp={amp:.0f} per={period} duty={duty} hor={horizon}: "
          f"CSG(Tmean={e_csg[0]:.2f}, Tmax={e_csg[1]:.2f}, g={e_csg[2]:.0f})  "
          f"TEC(Tmean={e_tec[0]:.2f}, Tmax={e_tec[1]:.2f}, g={e_tec[2]:.0f})  "
          f"{'PASS' if ok else 'FAIL'}")

compare(1.2e5, 100.0, 0.3, 600.0)
compare(2.0e5, 60.0, 0.25, 600.0)
compare(2.5e5, 60.0, 0.2, 900.0)
compare(2.0e5, 120.0, 0.3, 1200.0)
compare(3.0e5, 80.0, 0.25, 1200.0)

print("--- longer/heavier regimes")
compare(1.5e5, 100.0, 0.5, 1800.0)
compare(1.5e5, 100.0, 0.6, 1800.0)
compare(2.0e5, 100.0, 0.5, 2400.0)
compare(1.8e5, 80.0, 0.5, 1500.0)

"""PI regulation of the mean temperature with an open-loop model estimator.

Oracles: hand-iterated PI update law, estimator/plant identity in the
nominal case, the FD solver as an independent plant, and closed-loop
tracking-band checks.
"""

import numpy as np
import pytest

from celltherm.control import (
    OpenLoopEstimator,
    PiController,
    closed_loop_run,
    estimate_mean,
    pi_step,
)
from celltherm.core import (
    CYLINDRICAL,
    CellSpec,
    boundary_input_from_cooling,
    scenario_cooling,
)
from celltherm.galerkin import assemble
from celltherm.reference import FdConfig, FdSolver

PAPER = CellSpec(shape=CYLINDRICAL, L=0.198, R_out=0.032, R_in=0.004,
                 rho=2118.0, cp=795.0, k_r=0.67, k_z=66.6)


class TestPiStep:
    def test_zero_error_zero_command(self):
        c = PiController(kp=2.0, ki=0.1, output_limits=(-100.0, 100.0))
        assert pi_step(c, 0.0, 1.0) == 0.0
        assert c.integral == 0.0

    def test_hand_iterated_update(self):
        c = PiController(kp=2.0, ki=0.1, output_limits=(-100.0, 100.0))
        assert pi_step(c, 1.0, 1.0) == pytest.approx(2.1)
        assert pi_step(c, 1.0, 1.0) == pytest.approx(2.2)

    def test_baseline_offsets_command(self):
        c = PiController(kp=2.0, ki=0.0, baseline=15.0,
                         output_limits=(-20.0, 40.0))
        assert pi_step(c, 1.0, 1.0) == pytest.approx(17.0)

    def test_anti_windup_freezes_integral(self):
        c = PiController(kp=1.0, ki=1.0, output_limits=(-1.0, 1.0))
        out = pi_step(c, -10.0, 1.0)
        assert out == -1.0
        assert c.integral == 0.0
        out = pi_step(c, -10.0, 1.0)
        assert out == -1.0
        assert c.integral == 0.0

    def test_windup_without_protection(self):
        c = PiController(kp=1.0, ki=1.0, output_limits=(-1.0, 1.0),
                         anti_windup=False)
        pi_step(c, -10.0, 1.0)
        assert c.integral == -10.0

    def test_validation(self):
        with pytest.raises(ValueError):
            PiController(1.0, 1.0, output_limits=(2.0, 1.0))
        c = PiController(1.0, 1.0)
        with pytest.raises(ValueError):
            pi_step(c, 0.0, 0.0)


class TestEstimator:
    def test_nominal_estimator_equals_plant(self):
        model = assemble(PAPER, scenario_cooling("aTSC"), 3, 3)
        u = boundary_input_from_cooling(model.cooling).as_vector(CYLINDRICAL)
        trace = closed_loop_run(model, "aTSC", 20.0, 4e4, dt=2.0, horizon=100.0)
        assert np.abs(trace.T_mean - trace.T_hat_mean).max() <= 1e-9

    def test_estimate_mean_steps_the_state(self):
        model = assemble(PAPER, scenario_cooling("SC"), 2, 2)
        u = boundary_input_from_cooling(model.cooling).as_vector(CYLINDRICAL)
        est = OpenLoopEstimator(model, dt=5.0, T_init=15.0, u0=u)
        x_before = est.X.copy()
        t_mean = estimate_mean(est, u, 5e4)
        assert not np.allclose(est.X, x_before)
        assert t_mean > 15.0

    def test_zero_heat_equilibrium_estimate_constant(self):
        model = assemble(PAPER, scenario_cooling("SC"), 3, 3)
        u = boundary_input_from_cooling(model.cooling).as_vector(CYLINDRICAL)
        est = OpenLoopEstimator(model, dt=10.0, T_init=15.0, u0=u)
        first = est.mean_temperature(u)
        for _ in range(20):
            last = estimate_mean(est, u, 0.0)
        assert last == pytest.approx(first, abs=5e-3)

    def test_low_order_estimator_tracks_fd_plant_steady(self):
        """Open-loop O=4 estimate vs the FD field under constant heat:
        steady mean-temperature mismatch stays below 0.3 degC."""
        cooling = scenario_cooling("SC")
        solver = FdSolver(PAPER, cooling, FdConfig(48, 48, 2.0))
        model = assemble(PAPER, cooling, 2, 2)
        u = boundary_input_from_cooling(cooling).as_vector(CYLINDRICAL)
        est = OpenLoopEstimator(model, dt=2.0, T_init=15.0, u0=u)
        field = solver.uniform_field(15.0)
        tinf = solver.tinf_from_inputs(u)
        for _ in range(3000):
            field = solver.step(field, tinf, 5e4)
            est.step(u, 5e4)
        fd_mean = solver.metrics(field)[0]
        assert abs(est.mean_temperature(u) - fd_mean) <= 0.3


class TestClosedLoop:
    def test_zero_error_keeps_baseline(self):
        model = assemble(PAPER, scenario_cooling("SC"), 2, 2)
        trace = closed_loop_run(model, "SC", 15.0, 0.0, dt=5.0, horizon=100.0)
        baseline = 400.0 * 15.0
        surf = trace.u[:, trace.sides.index("surface")]
        # commands stay within the initial projection defect of the estimate
        assert np.abs(surf - baseline).max() <= 0.02 * baseline
        assert np.abs(trace.T_mean - 15.0).max() <= 0.1

    def test_inactive_sides_hold_baseline_exactly(self):
        model = assemble(PAPER, scenario_cooling("SC"), 2, 2)
        trace = closed_loop_run(model, "SC", 20.0, 5e4, dt=2.0, horizon=200.0)
        for side in ("top", "bottom"):
            j = trace.sides.index(side)
            baseline = model.cooling.side(side).h * model.cooling.side(side).T_inf
            assert np.all(trace.u[:, j] == baseline)

    def test_commands_respect_limits(self):
        model = assemble(PAPER, scenario_cooling("bTC"), 2, 2)
        trace = closed_loop_run(model, "bTC", 20.0, 1.2e5, dt=2.0,
                                horizon=400.0, limits=(-20.0, 40.0))
        j = trace.sides.index("bottom")
        assert trace.coolant[:, j].min() >= -20.0 - 1e-12
        assert trace.coolant[:, j].max() <= 40.0 + 1e-12

    def test_tracking_band_and_gradient_ordering(self):
        traces = {}
        for name in ("aTSC", "btTC", "SC"):
            model = assemble(PAPER, scenario_cooling(name), 3, 3)
            traces[name] = closed_loop_run(model, name, 20.0, 4e4, dt=2.0,
                                           horizon=1200.0)
        tail = slice(int(0.8 * len(traces["aTSC"].times)), None)
        assert np.abs(traces["aTSC"].T_mean[tail] - 20.0).max() <= 0.5
        assert (traces["btTC"].dTr_mean[tail].mean()
                < traces["SC"].dTr_mean[tail].mean())

    def test_error_decays_after_first_overshoot(self):
        model = assemble(PAPER, scenario_cooling("aTSC"), 3, 3)
        trace = closed_loop_run(model, "aTSC", 20.0, 4e4, dt=2.0, horizon=900.0)
        err = np.abs(trace.T_mean - 20.0)
        peak = int(np.argmax(trace.T_mean))
        after = err[peak:]
        assert np.all(np.diff(after) <= 1e-3)

    def test_steady_state_error_vanishes_with_integral_action(self):
        model = assemble(PAPER, scenario_cooling("aTSC"), 3, 3)
        trace = closed_loop_run(model, "aTSC", 20.0, 4e4, dt=2.0, horizon=2000.0)
        assert abs(trace.T_hat_mean[-1] - 20.0) <= 1e-3

    def test_fd_plant_runs(self):
        cooling = scenario_cooling("aTSC")
        solver = FdSolver(PAPER, cooling, FdConfig(32, 32, 2.0))
        est_model = assemble(PAPER, cooling, 3, 3)
        trace = closed_loop_run(solver, "aTSC", 20.0, 4e4, dt=2.0,
                                horizon=600.0, estimator_model=est_model)
        tail = slice(int(0.8 * len(trace.times)), None)
        # the estimator is open loop, so tracking holds up to model mismatch
        assert np.abs(trace.T_mean[tail] - 20.0).max() <= 0.8

    def test_unknown_active_side_rejected(self):
        model = assemble(PAPER, scenario_cooling("SC"), 2, 2)
        with pytest.raises(ValueError):
            closed_loop_run(model, ("core",), 20.0, 0.0, dt=1.0, horizon=10.0)

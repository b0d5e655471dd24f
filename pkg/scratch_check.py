"""Scratch physics validation (not part of the deliverable)."""
import numpy as np
import celltherm as ct
from celltherm.chebyshev import robin_residuals
from celltherm.simulate import FieldEvaluator, discretize, run
from celltherm.galerkin import assemble, project_initial_state

spec = ct.PAPER_CELL

# 1) basis residuals for all scenarios
for name in ct.SCENARIOS:
    cooling = ct.scenario_cooling(name)
    m = assemble(spec, cooling, 3, 3)
    for bs in (m.basis_r, m.basis_z):
        res = robin_residuals(bs)
        assert res.max() < 1e-12, (name, res.max())
print("basis residuals OK")

# 2) dissipativity: generalized eigenvalues of (A, G)
for name in ("SC", "aTSC"):
    cooling = ct.scenario_cooling(name)
    for MN in (1, 2, 3, 4, 5):
        m = assemble(spec, cooling, MN, MN)
        eig = np.linalg.eigvals(np.linalg.solve(m.G, m.A))
        assert np.max(eig.real) < 1e-9, (name, MN, np.max(eig.real))
        asym = np.abs(m.A - m.A.T).max() / np.abs(m.A).max()
        print(f"{name} O={MN*MN}: max Re(eig) = {np.max(eig.real):.3e}, A asym = {asym:.2e}")

# 3) insulated energy balance
cool0 = ct.CoolingConfig(*(ct.SideCooling(0.0, 15.0) for _ in range(4)), scenario_name="insulated")
m = assemble(spec, cool0, 2, 2)
X0 = project_initial_state(m, 15.0, np.zeros(3))
res = run(m, X0, np.zeros(3), 5e4, dt=1.0, horizon=100.0, metrics_stride=10)
slope = (res.T_mean[-1] - res.T_mean[0]) / (res.metrics_times[-1] - res.metrics_times[0])
print(f"insulated slope {slope:.6f} vs {5e4/(2118*795):.6f}")

# 4) SC insulated top/bottom steady state: surface rise 3.9375, core-surf 35.13
cool_sc = ct.CoolingConfig(
    surface=ct.SideCooling(400.0, 15.0), core=ct.SideCooling(0.0, 15.0),
    top=ct.SideCooling(0.0, 15.0), bottom=ct.SideCooling(0.0, 15.0), scenario_name="SCr")
for MN in (2, 3, 4, 5, 6):
    m = assemble(spec, cool_sc, MN, MN)
    u = ct.boundary_input_from_cooling(m.cooling).as_vector(spec.shape)
    # steady state directly
    Xs = np.linalg.solve(m.A, -(m.B @ u + m.F * 1e5))
    Y = m.C @ Xs + m.Dft @ u
    print(f"O={MN*MN}: surf {Y[0]-15:.4f} (want 3.9375), core-surf {Y[1]-Y[0]:.4f} (want 35.13)")

# 5) equilibrium drift check
cool = ct.scenario_cooling("SC")
for MN in (3, 5):
    m = assemble(spec, cool, MN, MN)
    u = ct.boundary_input_from_cooling(cool).as_vector(spec.shape)
    X0 = project_initial_state(m, 15.0, u)
    res = run(m, X0, u, 0.0, dt=10.0, horizon=2000.0, metrics_stride=20)
    dev = np.abs(res.outputs - 15.0).max()
    print(f"equilibrium O={MN*MN}: max |Y-15| = {dev:.3e}")

# 6) ZOH semigroup
m = assemble(spec, cool, 2, 2)
s1 = discretize(m, 0.1)
s2 = discretize(m, 0.05)
X = np.random.default_rng(0).standard_normal(m.order)
uv = np.array([6000.0, 450.0, 450.0])
a = s1.step(X, uv, 1e4)
b = s2.step(s2.step(X, uv, 1e4), uv, 1e4)
print("semigroup diff", np.abs(a - b).max())

"""Pouch model + superposition + thin-shell scratch checks."""
import numpy as np
import celltherm as ct
from celltherm.galerkin import assemble, project_initial_state
from celltherm.simulate import run
from celltherm.reference import FdConfig, fd_solve

pouch = ct.CellSpec(shape="pouch", L=0.2, D=0.1, rho=2118.0, cp=795.0, k_r=0.9, k_z=30.0)
cool = ct.CoolingConfig(
    surface=ct.SideCooling(400.0, 15.0), core=ct.SideCooling(400.0, 15.0),
    top=ct.SideCooling(30.0, 15.0), bottom=ct.SideCooling(30.0, 15.0),
    scenario_name="pouch-test")
m = assemble(pouch, cool, 3, 3)
u = ct.boundary_input_from_cooling(cool).as_vector(pouch.shape)
print("pouch n_inputs:", m.n_inputs)
X0 = project_initial_state(m, 15.0, u)
res = run(m, X0, u, 8e4, dt=1.0, horizon=300.0, metrics_stride=300)
print("pouch outputs(300s):", res.outputs[-1])

# pouch vs FD
fd = fd_solve(pouch, cool, None, 8e4, FdConfig(96, 96, 0.1), T_init=15.0,
              horizon=300.0, metrics_stride=3000)
print("pouch FD outputs(300s):", fd.outputs[-1])
m5 = assemble(pouch, cool, 5, 5)
X05 = project_initial_state(m5, 15.0, u)
res5 = run(m5, X05, u, 8e4, dt=1.0, horizon=300.0, metrics_stride=300)
err = np.abs(res5.outputs - fd.outputs[::10]).max()
print("pouch O=25 vs FD max err:", err)

# superposition (zero-state, unit inputs)
for spec, name in ((ct.PAPER_CELL, "cyl"), (pouch, "pouch")):
    cl = ct.scenario_cooling("aTSC", spec.shape)
    mm = assemble(spec, cl, 2, 2)
    nin = mm.n_inputs
    responses = []
    for j in range(nin):
        uu = np.zeros(nin); uu[j] = 1000.0
        rr = run(mm, np.zeros(mm.order), uu, 0.0, dt=5.0, horizon=200.0, metrics_stride=10**9)
        responses.append(rr.outputs)
    combined = run(mm, np.zeros(mm.order), np.full(nin, 1000.0), 0.0, dt=5.0,
                   horizon=200.0, metrics_stride=10**9)
    diff = np.abs(sum(responses) - combined.outputs).max()
    rel = diff / max(1e-12, np.abs(combined.outputs).max())
    print(f"superposition {name}: rel diff {rel:.2e}")

# thin shell cylinder ~ slab
thin_cyl = ct.CellSpec(shape="cylindrical", L=0.2, R_out=1.01, R_in=1.0,
                       rho=2118.0, cp=795.0, k_r=0.67, k_z=66.6)
slab = ct.CellSpec(shape="pouch", L=0.2, D=0.01, rho=2118.0, cp=795.0, k_r=0.67, k_z=66.6)
cool_c = ct.CoolingConfig(ct.SideCooling(400.0, 15.0), ct.SideCooling(0.0, 15.0),
                          ct.SideCooling(30.0, 15.0), ct.SideCooling(30.0, 15.0), "thin")
mc = assemble(thin_cyl, cool_c, 4, 4)
mp = assemble(slab, cool_c, 4, 4)
uc = ct.boundary_input_from_cooling(cool_c).as_vector("cylindrical")
up = ct.boundary_input_from_cooling(cool_c).as_vector("pouch")
Xc = project_initial_state(mc, 15.0, uc)
Xp = project_initial_state(mp, 15.0, up)
rc = run(mc, Xc, uc, 1e5, dt=1.0, horizon=300.0, metrics_stride=10**9)
rp = run(mp, Xp, up, 1e5, dt=1.0, horizon=300.0, metrics_stride=10**9)
rise_c = rc.outputs - 15.0
rise_p = rp.outputs - 15.0
rel = np.abs(rise_c - rise_p).max() / np.abs(rise_p).max()
print(f"thin-shell rel diff: {rel:.4f} (want < 0.02)")

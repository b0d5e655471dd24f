"""Ground-truth oracles: a 2D finite-difference solver for the original PDE
in physical coordinates, and the two-state lumped (thermal equivalent
circuit) benchmark.

The FD solver works on the unscaled equation

    rho cp dT/dt = k_r (T_rr + T_r / r) + k_z T_zz + q        (cylinder)
    rho cp dT/dt = k_x T_xx + k_y T_yy + q                    (pouch)

with ghost-node closures of the convection conditions
-k dT/dn = h (T - T_inf) on every face, stepped implicitly
(Crank-Nicolson by default, backward Euler for robustness checks). Working
in physical coordinates makes it an independent check of the reduced model's
nondimensionalization. The cylindrical grid spans r in [R_in, R_out], so no
axis singularity arises.

The TEC model implements

    C_c dT_c/dt = q + (T_s - T_c)/R_c
    C_s dT_s/dt = (T_inf - T_s)/R_u + (T_c - T_s)/R_c

with the conduction coupling in the surface equation written so heat leaving
the core enters the surface (energy-conserving form), discretized by the
exact zero-order hold.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.sparse import eye as sp_eye
from scipy.sparse import lil_matrix
from scipy.sparse.linalg import splu

from .core import CellSpec, CoolingConfig, input_sides
from .exceptions import NumericalError, UnsupportedShapeError

BACKWARD_EULER = "backward_euler"
CRANK_NICOLSON = "crank_nicolson"


@dataclass(frozen=True)
class FdConfig:
    n_r: int = 128
    n_z: int = 128
    dt: float = 0.05
    scheme: str = CRANK_NICOLSON

    def __post_init__(self):
        if self.n_r < 3 or self.n_z < 3:
            raise ValueError("FD grid needs at least 3 nodes per direction")
        if self.dt <= 0.0:
            raise ValueError("FD dt must be positive")
        if self.scheme not in (BACKWARD_EULER, CRANK_NICOLSON):
            raise ValueError(f"unknown scheme {self.scheme!r}")


class FdSolver:
    """Prefactorized implicit stepper for one (cell, cooling, grid) triple.

    The convection coefficients are baked into the operator; coolant
    temperatures and the heat rate enter as affine per-step inputs, so
    closed-loop runs with varying coolant commands reuse the factorization.
    """

    def __init__(self, spec: CellSpec, cooling: CoolingConfig, cfg: FdConfig):
        self.spec = spec
        self.cooling = cooling
        self.cfg = cfg
        if spec.is_cylindrical:
            self.r_nodes = np.linspace(spec.R_in, spec.R_out, cfg.n_r)
            k_r = spec.k_r
        else:
            self.r_nodes = np.linspace(0.0, spec.D, cfg.n_r)
            k_r = spec.k_r
        self.z_nodes = np.linspace(0.0, spec.L, cfg.n_z)
        dr = self.r_nodes[1] - self.r_nodes[0]
        dz = self.z_nodes[1] - self.z_nodes[0]
        self.dr, self.dz = dr, dz
        n_r, n_z = cfg.n_r, cfg.n_z
        n = n_r * n_z
        rho_cp = spec.rho * spec.cp

        h_s, h_c = cooling.surface.h, cooling.core.h
        h_t, h_b = cooling.top.h, cooling.bottom.h

        lap = lil_matrix((n, n))
        # columns: [T_inf_surface, T_inf_core, T_inf_top, T_inf_bottom]
        bmat = lil_matrix((n, 4))

        def idx(i, j):
            return i * n_z + j

        for i in range(n_r):
            r = self.r_nodes[i]
            # radial stencil coefficients (k/dr^2 +- k/(2 r dr) for cylinders)
            conv = k_r / (2.0 * r * dr) if self.spec.is_cylindrical else 0.0
            c_plus = k_r / dr**2 + conv
            c_minus = k_r / dr**2 - conv
            c_diag_r = -2.0 * k_r / dr**2
            for j in range(n_z):
                row = idx(i, j)
                lap[row, row] += c_diag_r
                # +r neighbour or surface ghost: T_g = T[i-1] - (2 dr h_s/k)(T_i - T_inf)
                if i + 1 < n_r:
                    lap[row, idx(i + 1, j)] += c_plus
                else:
                    lap[row, idx(i - 1, j)] += c_plus
                    lap[row, row] += -c_plus * 2.0 * dr * h_s / k_r
                    bmat[row, 0] += c_plus * 2.0 * dr * h_s / k_r
                # -r neighbour or core/back ghost: T_g = T[i+1] - (2 dr h_c/k)(T_i - T_inf)
                if i - 1 >= 0:
                    lap[row, idx(i - 1, j)] += c_minus
                else:
                    lap[row, idx(i + 1, j)] += c_minus
                    lap[row, row] += -c_minus * 2.0 * dr * h_c / k_r
                    bmat[row, 1] += c_minus * 2.0 * dr * h_c / k_r

                c_z = spec.k_z / dz**2
                lap[row, row] += -2.0 * c_z
                # +z neighbour or top ghost
                if j + 1 < n_z:
                    lap[row, idx(i, j + 1)] += c_z
                else:
                    lap[row, idx(i, j - 1)] += c_z
                    lap[row, row] += -c_z * 2.0 * dz * h_t / spec.k_z
                    bmat[row, 2] += c_z * 2.0 * dz * h_t / spec.k_z
                # -z neighbour or bottom ghost
                if j - 1 >= 0:
                    lap[row, idx(i, j - 1)] += c_z
                else:
                    lap[row, idx(i, j + 1)] += c_z
                    lap[row, row] += -c_z * 2.0 * dz * h_b / spec.k_z
                    bmat[row, 3] += c_z * 2.0 * dz * h_b / spec.k_z

        self._rate = (lap / rho_cp).tocsr()
        self._binp = (bmat / rho_cp).tocsr()
        self._rho_cp = rho_cp
        theta = 1.0 if cfg.scheme == BACKWARD_EULER else 0.5
        self._theta = theta
        ident = sp_eye(n, format="csc")
        try:
            self._lu = splu((ident - cfg.dt * theta * self._rate).tocsc())
        except RuntimeError as exc:
            raise NumericalError(f"FD implicit factorization failed: {exc}") from exc
        self._expl = (ident + cfg.dt * (1.0 - theta) * self._rate).tocsr()

        # output interpolation weights at the four mid-side points
        r_mid = 0.5 * (self.r_nodes[0] + self.r_nodes[-1])
        z_mid = 0.5 * (self.z_nodes[0] + self.z_nodes[-1])
        self._out_pts = [
            (self.r_nodes[-1], z_mid),   # surface
            (self.r_nodes[0], z_mid),    # core / back
            (r_mid, self.z_nodes[-1]),   # top
            (r_mid, self.z_nodes[0]),    # bottom
        ]

        tr = np.ones(n_r)
        tr[0] = tr[-1] = 0.5
        tz = np.ones(n_z)
        tz[0] = tz[-1] = 0.5
        wr = tr * (self.r_nodes if spec.is_cylindrical else np.ones(n_r))
        vol = np.outer(wr, tz)
        self._vol_weights = vol / vol.sum()

    def uniform_field(self, T: float) -> np.ndarray:
        return np.full((self.cfg.n_r, self.cfg.n_z), float(T))

    def tinf_from_inputs(self, u_vec: np.ndarray) -> np.ndarray:
        """Coolant temperatures [surface, core, top, bottom] from the model
        input vector (u = h T_inf); sides with h = 0 are insulated and their
        entry is ignored by the operator."""
        sides = input_sides(self.spec.shape)
        by_side = dict(zip(sides, np.asarray(u_vec, dtype=float)))
        tinf = np.zeros(4)
        for col, side in enumerate(("surface", "core", "top", "bottom")):
            h = self.cooling.side(side).h
            if h > 0.0:
                tinf[col] = by_side.get(side, 0.0) / h
        return tinf

    def step(self, field: np.ndarray, tinf: np.ndarray, q: float) -> np.ndarray:
        """One implicit step with inputs held constant over the interval."""
        flat = field.reshape(-1)
        b = self._binp @ tinf + q / self._rho_cp
        rhs = self._expl @ flat + self.cfg.dt * b
        out = self._lu.solve(rhs)
        if not np.all(np.isfinite(out)):
            raise NumericalError("FD step produced non-finite values")
        return out.reshape(field.shape)

    def outputs(self, field: np.ndarray) -> np.ndarray:
        """Bilinear interpolation of the four mid-side temperatures."""
        out = np.empty(4)
        for k, (r, z) in enumerate(self._out_pts):
            out[k] = self._interp(field, r, z)
        return out

    def _interp(self, field: np.ndarray, r: float, z: float) -> float:
        i = min(np.searchsorted(self.r_nodes, r) - 1, self.cfg.n_r - 2)
        i = max(i, 0)
        j = min(np.searchsorted(self.z_nodes, z) - 1, self.cfg.n_z - 2)
        j = max(j, 0)
        fr = (r - self.r_nodes[i]) / self.dr
        fz = (z - self.z_nodes[j]) / self.dz
        fr = min(max(fr, 0.0), 1.0)
        fz = min(max(fz, 0.0), 1.0)
        return float(
            field[i, j] * (1 - fr) * (1 - fz) + field[i + 1, j] * fr * (1 - fz)
            + field[i, j + 1] * (1 - fr) * fz + field[i + 1, j + 1] * fr * fz)

    def metrics(self, field: np.ndarray):
        """(T_mean, T_max, T_min, dT, dTr_max, dTz_max, dTr_mean, dTz_mean)
        with gradients from second-order finite differences of the field."""
        g_r = np.gradient(field, self.dr, axis=0)
        g_z = np.gradient(field, self.dz, axis=1)
        return (
            float(np.sum(self._vol_weights * field)),
            float(field.max()), float(field.min()),
            float(field.max() - field.min()),
            float(np.abs(g_r).max()), float(np.abs(g_z).max()),
            float(np.abs(g_r).mean()), float(np.abs(g_z).mean()),
        )

    def surface_flux(self, field: np.ndarray) -> float:
        """Mean convective flux h_s (T_surface - T_inf) out of the outer face,
        W m^-2 (z-averaged with trapezoid weights)."""
        tz = np.ones(self.cfg.n_z)
        tz[0] = tz[-1] = 0.5
        t_surf = np.sum(field[-1] * tz) / tz.sum()
        side = self.cooling.surface
        return side.h * (t_surf - side.T_inf)


@dataclass(frozen=True, eq=False)
class FdResult:
    times: np.ndarray
    outputs: np.ndarray         # (K+1, 4) mid-side temperatures
    metrics_times: np.ndarray
    T_mean: np.ndarray
    T_max: np.ndarray
    T_min: np.ndarray
    dT: np.ndarray
    dTr_max: np.ndarray
    dTz_max: np.ndarray
    dTr_mean: np.ndarray
    dTz_mean: np.ndarray
    final_field: np.ndarray
    r_nodes: np.ndarray
    z_nodes: np.ndarray


def fd_solve(spec: CellSpec, cooling: CoolingConfig, u, q, cfg: FdConfig,
             T_init: float = 15.0, horizon: float = 600.0,
             metrics_stride: int = 1) -> FdResult:
    """Integrate the original PDE over [0, horizon].

    ``u`` is None (baseline coolant temperatures from the cooling config), a
    constant model-input vector, or a per-step array (K+1 rows); ``q`` a
    scalar or per-step array of the volumetric heat rate.
    """
    solver = FdSolver(spec, cooling, cfg)
    dt = cfg.dt
    n_steps = int(np.floor(horizon / dt + 1e-9))
    times = np.arange(n_steps + 1) * dt

    if u is None:
        baseline = np.array([cooling.side(s).h * cooling.side(s).T_inf
                             for s in input_sides(spec.shape)])
        u_arr = np.broadcast_to(baseline, (n_steps + 1, baseline.size))
    else:
        u_arr = np.asarray(u, dtype=float)
        if u_arr.ndim == 1:
            u_arr = np.broadcast_to(u_arr, (n_steps + 1, u_arr.size))
    q_arr = np.asarray(q, dtype=float)
    if q_arr.ndim == 0:
        q_arr = np.broadcast_to(q_arr, (n_steps + 1,))

    field = solver.uniform_field(T_init)
    outputs = np.empty((n_steps + 1, 4))
    outputs[0] = solver.outputs(field)
    metric_idx = list(range(0, n_steps + 1, max(1, metrics_stride)))
    if metric_idx[-1] != n_steps:
        metric_idx.append(n_steps)
    metric_set = set(metric_idx)
    rows = {0: solver.metrics(field)} if 0 in metric_set else {}

    for k in range(n_steps):
        tinf = solver.tinf_from_inputs(u_arr[k])
        field = solver.step(field, tinf, q_arr[k])
        outputs[k + 1] = solver.outputs(field)
        if (k + 1) in metric_set:
            rows[k + 1] = solver.metrics(field)

    stacked = np.array([rows[k] for k in metric_idx])
    return FdResult(
        times=times, outputs=outputs, metrics_times=times[metric_idx],
        T_mean=stacked[:, 0], T_max=stacked[:, 1], T_min=stacked[:, 2],
        dT=stacked[:, 3], dTr_max=stacked[:, 4], dTz_max=stacked[:, 5],
        dTr_mean=stacked[:, 6], dTz_mean=stacked[:, 7],
        final_field=field, r_nodes=solver.r_nodes, z_nodes=solver.z_nodes)


@dataclass(frozen=True)
class TecModel:
    """Two-state lumped benchmark with core/surface heat capacities and
    conduction/convection resistances."""

    C_c: float = 1079.6   # J/K
    C_s: float = 48.35    # J/K
    R_c: float = 0.65     # K/W
    R_u: float = 0.08     # K/W
    T_inf: float = 15.0   # degC

    def __post_init__(self):
        for name in ("C_c", "C_s", "R_c", "R_u"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"TecModel.{name} must be positive")

    def continuous(self):
        """(A, B) of d/dt [T_c, T_s] = A [T_c, T_s] + B [q, T_inf]."""
        a = np.array([
            [-1.0 / (self.R_c * self.C_c), 1.0 / (self.R_c * self.C_c)],
            [1.0 / (self.R_c * self.C_s),
             -(1.0 / self.R_c + 1.0 / self.R_u) / self.C_s],
        ])
        b = np.array([
            [1.0 / self.C_c, 0.0],
            [0.0, 1.0 / (self.R_u * self.C_s)],
        ])
        return a, b

    def steady_state(self, q: float):
        """Analytic fixed point: T_s = T_inf + q R_u, T_c = T_s + q R_c."""
        t_s = self.T_inf + q * self.R_u
        return t_s + q * self.R_c, t_s


_TEC_ZOH_CACHE: dict = {}


def _tec_zoh(model: TecModel, dt: float):
    key = (model.C_c, model.C_s, model.R_c, model.R_u, dt)
    hit = _TEC_ZOH_CACHE.get(key)
    if hit is None:
        a, b = model.continuous()
        aug = np.zeros((4, 4))
        aug[:2, :2] = a
        aug[:2, 2:] = b
        phi = expm(aug * dt)
        hit = (phi[:2, :2], phi[:2, 2:])
        _TEC_ZOH_CACHE[key] = hit
    return hit


def tec_step(model: TecModel, T_c: float, T_s: float, q: float, dt: float):
    """Exact ZOH step of the two-state system with q and T_inf held constant."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    ad, bd = _tec_zoh(model, dt)
    state = ad @ np.array([T_c, T_s]) + bd @ np.array([q, model.T_inf])
    return float(state[0]), float(state[1])


def tec_run(model: TecModel, q, dt: float, horizon: float, T0: float = 15.0):
    """Integrate the TEC model; returns (times, T_c, T_s). ``q`` is the total
    heat rate in W, a scalar or per-step array."""
    n_steps = int(np.floor(horizon / dt + 1e-9))
    q_arr = np.asarray(q, dtype=float)
    if q_arr.ndim == 0:
        q_arr = np.broadcast_to(q_arr, (n_steps + 1,))
    t_c = np.empty(n_steps + 1)
    t_s = np.empty(n_steps + 1)
    t_c[0] = t_s[0] = T0
    for k in range(n_steps):
        t_c[k + 1], t_s[k + 1] = tec_step(model, t_c[k], t_s[k], q_arr[k], dt)
    return np.arange(n_steps + 1) * dt, t_c, t_s


def tec_metrics(T_c, T_s, spec: CellSpec):
    """(T_mean, dT_r) of the lumped model: the core/surface average and the
    end-to-end radial slope (T_c - T_s)/(R_out - R_in)."""
    if not spec.is_cylindrical:
        raise UnsupportedShapeError("TEC metrics are defined for cylindrical cells")
    T_c = np.asarray(T_c, dtype=float)
    T_s = np.asarray(T_s, dtype=float)
    return (T_c + T_s) / 2.0, (T_c - T_s) / (spec.R_out - spec.R_in)


# Published single-state vs two-state lumped speedup used as a yardstick in
# timing reports; hardware-dependent, never asserted.
REFERENCE_TIME_REDUCTION_PCT = 28.7


def timing_harness(entries, repetitions: int = 5):
    """Mean wall-clock time of each named run callable over `repetitions`.

    ``entries`` is a list of (name, callable) pairs; every callable executes
    one full simulation on the identical profile. Returns a list of
    {"model": name, "mean_ms": float} rows (reported, not asserted).
    """
    if repetitions < 3:
        raise ValueError("repetitions must be >= 3")
    table = []
    for name, fn in entries:
        fn()  # warm-up outside the timed window
        elapsed = []
        for _ in range(repetitions):
            t0 = time.perf_counter()
            fn()
            elapsed.append(time.perf_counter() - t0)
        table.append({"model": name, "mean_ms": 1e3 * float(np.mean(elapsed))})
    return table

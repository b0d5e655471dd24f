"""Assembly of the reduced state-space thermal model.

The homogeneous field is expanded as T_h = sum_{m,n} c_mn phi_m^r phi_n^z
with Robin-adapted composite Chebyshev bases in each direction, and the
weighted residual of the scaled heat equation is projected onto the same
tensor products, giving

    G dX/dt = A X + B u + F w,      Y = C X + Dft u,

with X = [c_11, ..., c_1N, c_21, ..., c_MN]^T (row-major over (m, n)),
u the per-side cooling powers, and w the volumetric heat rate. The inner
product carries the physical radius as weight for cylindrical cells; the
first-derivative (gamma) term then has constant integrand alpha*k_r, so all
assembled integrands are polynomials and the fixed-order Gauss rule is exact
(verified by an order-doubling check).

B columns apply the same spatial operator to the per-side particular
components; Dft adds their direct contribution to the four mid-side outputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CYLINDRICAL, CellSpec, CoolingConfig, input_sides
from .chebyshev import BasisSet, build_basis, basis_matrix, gauss_quadrature
from .exceptions import AssemblyError
from .particular import (
    ParticularComponents,
    axial_scale,
    boundary_scalars,
    feedthrough_matrix,
    radial_scale,
    radial_weight,
    robin_pairs,
    solve_side_coefficients,
)

# Mid-points of the surface, core, top, and bottom sides in scaled coordinates.
OUTPUT_LOCATIONS = ((1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0))


@dataclass(frozen=True, eq=False)
class ReducedModel:
    """Assembled state-space system plus everything needed to reconstruct
    the full temperature field."""

    spec: CellSpec
    cooling: CoolingConfig
    M: int
    N: int
    G: np.ndarray
    A: np.ndarray
    B: np.ndarray
    F: np.ndarray
    C: np.ndarray
    Dft: np.ndarray
    basis_r: BasisSet
    basis_z: BasisSet
    particular: ParticularComponents
    quad_order: int

    @property
    def order(self) -> int:
        return self.M * self.N

    @property
    def n_inputs(self) -> int:
        return self.B.shape[1]

    @property
    def sides(self) -> tuple:
        return input_sides(self.spec.shape)


def default_quad_order(M: int, N: int) -> int:
    """4 * (max basis degree + 2); generous for the polynomial integrands."""
    return 4 * (max(M, N) + 3)


def _operator_times_weight(spec: CellSpec, components: ParticularComponents,
                           side: str, xr: np.ndarray, xz: np.ndarray) -> np.ndarray:
    """w(r) * L[T_p^side] on the tensor grid, where L is the scaled diffusion
    operator. For cylinders w*gamma = alpha*k_r exactly, so the product is
    assembled without evaluating the rational gamma."""
    alpha = radial_scale(spec)
    beta = axial_scale(spec)
    w = radial_weight(spec, xr)[:, None]
    d2r = components.component_grid(side, xr, xz, dr=2)
    d2z = components.component_grid(side, xr, xz, dz=2)
    out = alpha**2 * spec.k_r * w * d2r + beta**2 * spec.k_z * w * d2z
    if spec.is_cylindrical:
        d1r = components.component_grid(side, xr, xz, dr=1)
        out = out + alpha * spec.k_r * d1r
    return out


def _assemble_matrices(spec, cooling, basis_r, basis_z, components, order):
    quad = gauss_quadrature(order)
    x, wq = quad.nodes, quad.weights
    wvals = radial_weight(spec, x)
    alpha, beta = radial_scale(spec), axial_scale(spec)

    pr0 = basis_matrix(basis_r, x)
    pr1 = basis_matrix(basis_r, x, deriv=1)
    pr2 = basis_matrix(basis_r, x, deriv=2)
    pz0 = basis_matrix(basis_z, x)
    pz2 = basis_matrix(basis_z, x, deriv=2)

    wr = wq * wvals
    gram_r = pr0.T @ (wr[:, None] * pr0)
    gram_z = pz0.T @ (wq[:, None] * pz0)
    diff_rr = pr0.T @ (wr[:, None] * pr2)
    diff_zz = pz0.T @ (wq[:, None] * pz2)
    s_h = pr0.T @ wr
    s_v = pz0.T @ wq

    G = spec.rho * spec.cp * np.kron(gram_r, gram_z)
    A = alpha**2 * spec.k_r * np.kron(diff_rr, gram_z) \
        + beta**2 * spec.k_z * np.kron(gram_r, diff_zz)
    if spec.is_cylindrical:
        diff_r1 = pr0.T @ (wq[:, None] * pr1)  # w * gamma == alpha k_r, unweighted here
        A = A + alpha * spec.k_r * np.kron(diff_r1, gram_z)
    F = np.kron(s_h, s_v)

    sides = input_sides(spec.shape)
    B = np.empty((G.shape[0], len(sides)))
    for col, side in enumerate(sides):
        lw = _operator_times_weight(spec, components, side, x, x)
        B[:, col] = (pr0.T @ ((wq[:, None] * wq[None, :]) * lw) @ pz0).ravel()
    return G, A, B, F


def assemble(spec: CellSpec, cooling: CoolingConfig, M: int, N: int,
             quad_order: int | None = None) -> ReducedModel:
    """Build the reduced model of order M*N for one cell and cooling setup.

    The basis depends on the convection coefficients (it absorbs the
    homogeneous Robin conditions), so a new cooling configuration requires a
    full reassembly; see reassemble_cooling.
    """
    if M < 1 or N < 1:
        raise ValueError("basis counts M, N must be >= 1")
    if spec.shape == CYLINDRICAL and cooling.core.h != 0.0:
        raise ValueError("cylindrical cells require core h = 0")
    order = quad_order if quad_order is not None else default_quad_order(M, N)

    r_pair, z_pair = robin_pairs(spec, cooling)
    basis_r = build_basis(M, *r_pair)
    basis_z = build_basis(N, *z_pair)
    scalars = boundary_scalars(spec, cooling)
    quad = gauss_quadrature(order)
    coeffs = solve_side_coefficients(basis_r, basis_z, scalars, quad, spec)
    components = ParticularComponents(spec, basis_r, basis_z, coeffs)

    G, A, B, F = _assemble_matrices(spec, cooling, basis_r, basis_z, components, order)
    G2, A2, B2, F2 = _assemble_matrices(spec, cooling, basis_r, basis_z,
                                        components, 2 * order)
    for name, m1, m2 in (("G", G, G2), ("A", A, A2), ("B", B, B2), ("F", F, F2)):
        scale = np.abs(m2).max()
        if scale > 0.0 and np.abs(m1 - m2).max() > 1e-8 * scale:
            raise AssemblyError(f"quadrature not converged for matrix {name}")

    cond = np.linalg.cond(G)
    if not np.isfinite(cond) or cond > 1e12:
        raise AssemblyError(f"singular mass matrix (cond={cond:.3g})")

    out_r = np.array([loc[0] for loc in OUTPUT_LOCATIONS])
    out_z = np.array([loc[1] for loc in OUTPUT_LOCATIONS])
    pr_out = basis_matrix(basis_r, out_r)
    pz_out = basis_matrix(basis_z, out_z)
    C = np.empty((len(OUTPUT_LOCATIONS), M * N))
    for i in range(len(OUTPUT_LOCATIONS)):
        C[i] = np.kron(pr_out[i], pz_out[i])
    Dft = feedthrough_matrix(components, OUTPUT_LOCATIONS)

    return ReducedModel(spec=spec, cooling=cooling, M=M, N=N, G=G, A=A, B=B,
                        F=F, C=C, Dft=Dft, basis_r=basis_r, basis_z=basis_z,
                        particular=components, quad_order=order)


def project_initial_state(model: ReducedModel, T_init: float, u0) -> np.ndarray:
    """Galerkin projection of the homogeneous part of a uniform initial field.

    Solves G X(0) = rho cp < w (T_init - T_p(.) u0), eta > so that the
    reconstruction T_h(0) + T_p u0 approximates the uniform T_init.
    """
    u0 = np.asarray(u0, dtype=float)
    if u0.shape != (model.n_inputs,):
        raise ValueError(f"u0 must have shape ({model.n_inputs},)")
    quad = gauss_quadrature(model.quad_order)
    x, wq = quad.nodes, quad.weights
    pr0 = basis_matrix(model.basis_r, x)
    pz0 = basis_matrix(model.basis_z, x)
    wr = wq * radial_weight(model.spec, x)

    field = np.full((x.size, x.size), float(T_init))
    field -= model.particular.eval_total(u0, x, x)
    rhs = model.spec.rho * model.spec.cp * \
        (pr0.T @ ((wr[:, None] * wq[None, :]) * field) @ pz0).ravel()
    return np.linalg.solve(model.G, rhs)


def reassemble_cooling(model: ReducedModel, cooling: CoolingConfig) -> ReducedModel:
    """Rebuild basis and matrices for a new cooling configuration; the
    original model is untouched."""
    return assemble(model.spec, cooling, model.M, model.N, model.quad_order)

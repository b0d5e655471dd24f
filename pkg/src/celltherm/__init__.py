"""Reduced-order 2D thermal models for battery cells.

A spectral-Galerkin discretization with Robin-adapted Chebyshev bases turns
the 2D heat equation of a cylindrical or pouch cell into a small LTI
state-space system whose inputs are the per-side cooling powers, validated
against an in-package finite-difference solver and a two-state lumped
benchmark, and applied to cooling-scenario analysis, closed-loop mean
temperature control, and constant-volume geometry sweeps.
"""

from .core import (
    BoundaryInput,
    CellSpec,
    CoolingConfig,
    HeatProfile,
    SideCooling,
    SCENARIOS,
    bernardi_q,
    boundary_input_from_cooling,
    cell_volume,
    constant_profile,
    input_sides,
    resample_profile,
    scenario_cooling,
)
from .chebyshev import (
    BasisSet,
    Quadrature,
    build_basis,
    cheb_deriv_at_endpoints,
    cheb_eval,
    gauss_quadrature,
    inner_product_1d,
)
from .galerkin import OUTPUT_LOCATIONS, ReducedModel, assemble, project_initial_state, reassemble_cooling
from .particular import boundary_scalars, feedthrough_matrix, solve_side_coefficients
from .simulate import (
    FieldGrid,
    MetricsRecord,
    SimResult,
    compute_metrics,
    discretize,
    reconstruct_field,
    run,
)

__version__ = "0.1.0"

PAPER_CELL = CellSpec(shape="cylindrical", L=0.198, R_out=0.032, R_in=0.004,
                      rho=2118.0, cp=795.0, k_r=0.67, k_z=66.6)
"""Large-format 45 Ah LFP cylindrical cell used throughout the demos."""

"""Chebyshev kernel: evaluation, Robin basis construction, quadrature.

Oracles: direct trigonometric identity for cheb_eval, central finite
differences for derivatives, scipy adaptive quadrature for integrals, and
the boundary-residual check for the Robin combination coefficients.
"""

import numpy as np
import pytest
from scipy.integrate import quad

from celltherm.chebyshev import (
    basis_deriv1,
    basis_deriv2,
    basis_eval,
    basis_matrix,
    build_basis,
    cheb_deriv_at_endpoints,
    cheb_eval,
    gauss_quadrature,
    inner_product_1d,
    robin_residuals,
)
from celltherm.exceptions import BasisConstructionError

# paper-cell radial Robin pair under surface cooling (physical convention):
# alpha k_r = (2 / 0.028) * 0.67
ALPHA_KR = 2.0 / 0.028 * 0.67
SC_RADIAL = ((0.0, -ALPHA_KR), (400.0, ALPHA_KR))


class TestChebEval:
    def test_degree_zero(self):
        for x in (-1.0, -0.3, 0.0, 0.7, 1.0):
            assert cheb_eval(0, x) == 1.0

    def test_analytic_identity(self):
        # P_3(1/2) = cos(3 * arccos(1/2)) = cos(pi) = -1
        assert cheb_eval(3, 0.5) == pytest.approx(-1.0, abs=1e-14)

    def test_trig_oracle(self):
        assert cheb_eval(7, 0.123) == pytest.approx(
            np.cos(7 * np.arccos(0.123)), abs=1e-13)

    def test_vectorized_matches_scalar(self):
        x = np.linspace(-1, 1, 11)
        vals = cheb_eval(5, x)
        for xi, vi in zip(x, vals):
            assert vi == pytest.approx(np.cos(5 * np.arccos(xi)), abs=1e-12)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            cheb_eval(2, 1.5)


class TestEndpointDerivatives:
    def test_degree_zero(self):
        assert cheb_deriv_at_endpoints(0) == (0.0, 0.0)

    def test_degree_three(self):
        assert cheb_deriv_at_endpoints(3) == (9.0, 9.0)

    def test_degree_five_finite_difference(self):
        dm, dp = cheb_deriv_at_endpoints(5)
        assert (dm, dp) == (25.0, 25.0)
        h = 1e-7
        fd_plus = (cheb_eval(5, 1.0) - cheb_eval(5, 1.0 - h)) / h
        fd_minus = (cheb_eval(5, -1.0 + h) - cheb_eval(5, -1.0)) / h
        assert fd_plus == pytest.approx(dp, rel=1e-5)
        assert fd_minus == pytest.approx(dm, rel=1e-5)

    def test_parity(self):
        for k in range(8):
            dm, dp = cheb_deriv_at_endpoints(k)
            assert dp == k * k
            assert dm == (-1) ** (k + 1) * k * k


class TestBuildBasis:
    def test_dirichlet_combination(self):
        bs = build_basis(5, (1.0, 0.0), (1.0, 0.0))
        for k in range(5):
            a_k, b_k = bs.combo[k]
            assert a_k == pytest.approx(0.0, abs=1e-14)
            assert b_k == pytest.approx(-1.0, abs=1e-14)

    def test_neumann_residuals(self):
        bs = build_basis(7, (0.0, 1.0), (0.0, 1.0))
        for k in range(1, 7):
            assert abs(basis_deriv1(bs, k, -1.0)) <= 1e-10 * (
                1 + np.abs(bs.combo[k]).sum()) * (k + 2) ** 2
            assert abs(basis_deriv1(bs, k, 1.0)) <= 1e-10 * (
                1 + np.abs(bs.combo[k]).sum()) * (k + 2) ** 2

    def test_neumann_first_function_is_constant(self):
        bs = build_basis(3, (0.0, 1.0), (0.0, 1.0))
        x = np.linspace(-1, 1, 9)
        assert np.allclose(basis_eval(bs, 0, x), 1.0, atol=1e-14)

    def test_paper_robin_pair_residuals(self):
        bs = build_basis(11, *SC_RADIAL)
        res = robin_residuals(bs)
        assert res[1:11].max() <= 1e-10

    def test_degenerate_pair_rejected(self):
        with pytest.raises(BasisConstructionError):
            build_basis(3, (0.0, 0.0), (1.0, 0.0))

    def test_count_validated(self):
        with pytest.raises(ValueError):
            build_basis(0, (1.0, 0.0), (1.0, 0.0))


class TestQuadrature:
    def test_degree_three_exact_with_two_nodes(self):
        q = gauss_quadrature(2)
        assert np.sum(q.weights * q.nodes**2) == pytest.approx(2.0 / 3.0, rel=1e-14)

    def test_weights_sum_to_two(self):
        for order in range(1, 65):
            q = gauss_quadrature(order)
            assert np.all(q.weights > 0)
            assert np.sum(q.weights) == pytest.approx(2.0, rel=1e-13)

    def test_monomial_exactness(self):
        for order in (1, 2, 3, 5, 8, 13):
            q = gauss_quadrature(order)
            for deg in range(2 * order):
                exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
                got = float(np.sum(q.weights * q.nodes**deg))
                assert got == pytest.approx(exact, abs=1e-13)

    def test_rational_integrand_vs_adaptive_oracle(self):
        # gamma-like integrand with the paper's alpha and R_in
        shift = 1.0 + (2.0 / 0.028) * 0.004 + 1e-3
        f = lambda x: 1.0 / (x + shift)
        q = gauss_quadrature(32)
        ref, _ = quad(f, -1, 1, epsabs=1e-13, epsrel=1e-13)
        assert float(np.sum(q.weights * f(q.nodes))) == pytest.approx(ref, abs=1e-12)

    def test_order_validated(self):
        with pytest.raises(ValueError):
            gauss_quadrature(0)


class TestInnerProduct:
    def test_p1_squared(self):
        q = gauss_quadrature(8)
        val = inner_product_1d(lambda x: cheb_eval(1, x), lambda x: cheb_eval(1, x),
                               lambda x: np.ones_like(x), q)
        assert val == pytest.approx(2.0 / 3.0, rel=1e-13)

    def test_odd_parity_vanishes(self):
        q = gauss_quadrature(8)
        val = inner_product_1d(lambda x: cheb_eval(2, x), lambda x: cheb_eval(3, x),
                               lambda x: np.ones_like(x), q)
        assert val == pytest.approx(0.0, abs=1e-14)

    def test_weighted_robin_product_vs_adaptive(self):
        bs = build_basis(4, *SC_RADIAL)
        alpha = 2.0 / 0.028
        c0 = (0.032 + 0.004) / 0.028
        radius = lambda x: (x + c0) / alpha
        q = gauss_quadrature(24)
        got = inner_product_1d(lambda x: basis_eval(bs, 1, x),
                               lambda x: basis_eval(bs, 1, x), radius, q)
        ref, _ = quad(lambda x: radius(x) * basis_eval(bs, 1, x)**2, -1, 1,
                      epsabs=1e-13, epsrel=1e-13)
        assert got == pytest.approx(ref, abs=1e-10)


class TestBasisDerivatives:
    def test_dirichlet_boundary_values(self):
        bs = build_basis(6, (1.0, 0.0), (1.0, 0.0))
        for k in range(6):
            assert basis_eval(bs, k, 1.0) == pytest.approx(0.0, abs=1e-12)
            assert basis_eval(bs, k, -1.0) == pytest.approx(0.0, abs=1e-12)

    def test_first_derivative_finite_difference(self):
        bs = build_basis(5, *SC_RADIAL)
        h = 1e-5
        for k in range(5):
            fd = (basis_eval(bs, k, 0.3 + h) - basis_eval(bs, k, 0.3 - h)) / (2 * h)
            assert basis_deriv1(bs, k, 0.3) == pytest.approx(fd, rel=1e-8)

    def test_second_derivative_finite_difference(self):
        bs = build_basis(5, *SC_RADIAL)
        h = 1e-4
        for k in range(5):
            fd = (basis_eval(bs, k, h) - 2 * basis_eval(bs, k, 0.0)
                  + basis_eval(bs, k, -h)) / h**2
            ref = basis_deriv2(bs, k, 0.0)
            assert ref == pytest.approx(fd, rel=1e-6, abs=1e-6)

    def test_derivatives_at_random_interior_points(self):
        rng = np.random.default_rng(42)
        bs = build_basis(6, (30.0, -672.7), (400.0, 672.7))
        pts = rng.uniform(-0.95, 0.95, size=20)
        h = 1e-5
        for x in pts:
            for k in (0, 2, 5):
                fd1 = (basis_eval(bs, k, x + h) - basis_eval(bs, k, x - h)) / (2 * h)
                assert basis_deriv1(bs, k, x) == pytest.approx(fd1, rel=1e-6, abs=1e-8)
                fd2 = (basis_eval(bs, k, x + h) - 2 * basis_eval(bs, k, x)
                       + basis_eval(bs, k, x - h)) / h**2
                assert basis_deriv2(bs, k, x) == pytest.approx(fd2, rel=1e-6, abs=1e-4)

    def test_domain_error(self):
        bs = build_basis(3, *SC_RADIAL)
        with pytest.raises(ValueError):
            basis_eval(bs, 0, 1.2)

    def test_basis_matrix_agrees_with_scalar_eval(self):
        bs = build_basis(4, *SC_RADIAL)
        x = np.linspace(-1, 1, 7)
        mat = basis_matrix(bs, x)
        for k in range(4):
            assert np.allclose(mat[:, k], basis_eval(bs, k, x), atol=1e-14)


def test_chebyshev_orthogonality_sanity():
    """P_m orthogonality under 1/sqrt(1-x^2), via a Chebyshev-Gauss rule
    (test-only rule; the package itself integrates with Gauss-Legendre)."""
    n = 40
    nodes = np.cos((2 * np.arange(1, n + 1) - 1) * np.pi / (2 * n))
    weight = np.pi / n
    for m in range(13):
        for k in range(13):
            val = weight * np.sum(cheb_eval(m, nodes) * cheb_eval(k, nodes))
            if m != k:
                assert abs(val) < 1e-12
            else:
                assert val == pytest.approx(np.pi if m == 0 else np.pi / 2, rel=1e-12)

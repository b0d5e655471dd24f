"""Chebyshev polynomial kernel: evaluation, endpoint derivatives, construction
of Robin-compatible composite basis functions, and Gauss-Legendre quadrature.

A basis function is the compact combination

    phi_k(x) = P_k(x) + a_k P_{k+1}(x) + b_k P_{k+2}(x),   k = 0, 1, ...

with P_k the Chebyshev polynomial of the first kind. The pair (a_k, b_k) is
chosen so that phi_k satisfies a homogeneous Robin condition

    p_minus * phi(-1) + q_minus * phi'(-1) = 0
    p_plus  * phi(+1) + q_plus  * phi'(+1) = 0

at both endpoints. The coefficients are obtained by solving the per-k 2x2
linear system numerically (using P_j(+-1) = (+-1)^j and
P'_j(+-1) = (+-1)^(j+1) j^2) rather than from a transcribed closed form; the
basis is validated by its boundary-condition residuals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as ncheb
from numpy.polynomial import legendre as nleg

from .exceptions import BasisConstructionError


def _check_domain(x):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0 + 1e-12):
        raise ValueError("argument outside the Chebyshev domain [-1, 1]")
    return x


def cheb_eval(k: int, x):
    """P_k(x) = cos(k arccos x) by the stable three-term recurrence."""
    if k < 0:
        raise ValueError("degree must be >= 0")
    x = _check_domain(x)
    t_prev = np.ones_like(x)
    if k == 0:
        return t_prev
    t = x.copy()
    for _ in range(k - 1):
        t_prev, t = t, 2.0 * x * t - t_prev
    return t


def cheb_deriv_at_endpoints(k: int):
    """(P'_k(-1), P'_k(+1)) from the endpoint identity P'_k(+-1) = (+-1)^(k+1) k^2."""
    if k < 0:
        raise ValueError("degree must be >= 0")
    return ((-1.0) ** (k + 1) * k * k, float(k * k))


@dataclass(frozen=True, eq=False)
class Quadrature:
    """Gauss-Legendre nodes and weights on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int


def gauss_quadrature(order: int) -> Quadrature:
    """Gauss-Legendre rule with `order` nodes; exact through degree 2*order - 1."""
    if order < 1:
        raise ValueError("quadrature order must be >= 1")
    nodes, weights = nleg.leggauss(order)
    return Quadrature(nodes, weights, order)


def inner_product_1d(f, g, weight, quad: Quadrature) -> float:
    """Approximate integral of weight(x) f(x) g(x) over [-1, 1]."""
    x = quad.nodes
    return float(np.sum(quad.weights * weight(x) * f(x) * g(x)))


@dataclass(frozen=True, eq=False)
class BasisSet:
    """Robin-compatible composite Chebyshev basis for one spatial direction.

    ``combo[k] = (a_k, b_k)`` and ``coeffs[k]`` is the Chebyshev-series
    coefficient row of phi_k (length count + 2), used for evaluation and
    differentiation via the series recurrences.
    """

    count: int
    robin_minus: tuple     # (coefficient on value, coefficient on derivative) at x = -1
    robin_plus: tuple      # same at x = +1
    combo: np.ndarray      # (count, 2)
    coeffs: np.ndarray     # (count, count + 2)

    @property
    def max_degree(self) -> int:
        return self.count + 1


def build_basis(count: int, robin_minus, robin_plus) -> BasisSet:
    """Construct the first `count` basis functions for the given Robin pairs.

    The per-k 2x2 system is solved with rows normalized to unit maximum
    coefficient, which keeps the residuals at rounding level even when the
    value and derivative coefficients differ by orders of magnitude.
    """
    if count < 1:
        raise ValueError("basis count must be >= 1")
    p_m, q_m = float(robin_minus[0]), float(robin_minus[1])
    p_p, q_p = float(robin_plus[0]), float(robin_plus[1])
    if (p_m == 0.0 and q_m == 0.0) or (p_p == 0.0 and q_p == 0.0):
        raise BasisConstructionError("Robin pair must have a nonzero coefficient")

    combo = np.empty((count, 2))
    coeffs = np.zeros((count, count + 2))
    for k in range(count):

        def plus_term(j):
            return p_p + q_p * j * j

        def minus_term(j):
            # (coefficient of P_j in p*phi + q*phi' at x=-1) / (-1)^j
            return p_m - q_m * j * j

        mat = np.array([
            [plus_term(k + 1), plus_term(k + 2)],
            [-minus_term(k + 1), minus_term(k + 2)],
        ])
        rhs = np.array([-plus_term(k), -minus_term(k)])
        scale = np.abs(mat).max(axis=1)
        scale[scale == 0.0] = 1.0
        mat_n = mat / scale[:, None]
        if abs(np.linalg.det(mat_n)) < 1e-12:
            raise BasisConstructionError(
                f"singular combination system for basis index k={k}")
        a_k, b_k = np.linalg.solve(mat_n, rhs / scale)
        combo[k] = (a_k, b_k)
        coeffs[k, k] = 1.0
        coeffs[k, k + 1] = a_k
        if k + 2 < count + 2:
            coeffs[k, k + 2] = b_k
    return BasisSet(count, (p_m, q_m), (p_p, q_p), combo, coeffs)


def basis_eval(bs: BasisSet, k: int, x):
    """phi_k(x)."""
    x = _check_domain(x)
    return ncheb.chebval(x, bs.coeffs[k])


def basis_deriv1(bs: BasisSet, k: int, x):
    """phi'_k(x) via the Chebyshev series derivative recurrence."""
    x = _check_domain(x)
    return ncheb.chebval(x, ncheb.chebder(bs.coeffs[k]))


def basis_deriv2(bs: BasisSet, k: int, x):
    """phi''_k(x)."""
    x = _check_domain(x)
    return ncheb.chebval(x, ncheb.chebder(bs.coeffs[k], 2))


def basis_matrix(bs: BasisSet, x, deriv: int = 0) -> np.ndarray:
    """Matrix of phi-k values (or derivatives) at the points x, shape (len(x), count)."""
    x = _check_domain(np.atleast_1d(x))
    out = np.empty((x.size, bs.count))
    for k in range(bs.count):
        c = bs.coeffs[k] if deriv == 0 else ncheb.chebder(bs.coeffs[k], deriv)
        out[:, k] = ncheb.chebval(x, c)
    return out


def robin_residuals(bs: BasisSet) -> np.ndarray:
    """Scaled Robin residuals of every basis function at both endpoints.

    Residuals are normalized by the magnitude of the largest term entering
    the boundary sum, (|p| + |q| (k+2)^2) (1 + |a_k| + |b_k|), so a value of
    order machine epsilon means the condition is satisfied to rounding.
    Shape (count, 2): column 0 at x = -1, column 1 at x = +1.
    """
    res = np.empty((bs.count, 2))
    for k in range(bs.count):
        a_k, b_k = bs.combo[k]
        size = 1.0 + abs(a_k) + abs(b_k)
        for col, (x, (p, q)) in enumerate(
                ((-1.0, bs.robin_minus), (1.0, bs.robin_plus))):
            val = basis_eval(bs, k, x)
            der = basis_deriv1(bs, k, x)
            scale = (abs(p) + abs(q) * (k + 2) ** 2) * size
            res[k, col] = abs(p * val + q * der) / scale
    return res

"""Hermite polynomials, oscillator eigenfunctions and Gauss-Hermite quadrature.

Quadrature weights absorb the ``exp(-z**2)`` factor: integrands passed to
:func:`overlap_1d` are the bare polynomial parts, e.g.
:func:`oscillator_polynomial`, never the full eigenfunctions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

MAX_QUADRATURE_ORDER = 400


class UnsupportedOrderError(ValueError):
    pass


@dataclass(frozen=True)
class HermiteBasis:
    """Oscillator eigenfunctions up to degree ``nmax`` with inverse length ``alpha``."""

    nmax: int
    alpha: float = 1.0

    def __post_init__(self):
        if self.nmax < 0:
            raise ValueError("nmax must be nonnegative")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")

    @classmethod
    def for_oscillator(cls, nmax: int, mass: float, omega_osc: float, hbar: float = 1.0):
        return cls(nmax, math.sqrt(mass * abs(omega_osc) / hbar))


def hermite_poly(n: int, z):
    """Physicists' Hermite polynomial by the three-term recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    z = np.asarray(z, dtype=float)
    h_prev = np.ones_like(z)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * z
    for k in range(1, n):
        h_prev, h = h, 2.0 * z * h - 2.0 * k * h_prev
    return h if h.ndim else float(h)


def generating_partial_sum(s: float, z: float, order: int) -> float:
    """Truncated generating series ``sum_{n<=order} s^n/n! H_n(z)``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    total = 0.0
    coeff = 1.0  # s^n / n!
    for n in range(order + 1):
        total += coeff * hermite_poly(n, z)
        coeff *= s / (n + 1)
    return total


def oscillator_polynomials(nmax: int, z) -> np.ndarray:
    """Rows ``h_n(z)`` for ``n = 0..nmax``, orthonormal against ``exp(-z^2)``.

    ``h_n(z) = H_n(z) / sqrt(sqrt(pi) 2^n n!)`` via the normalized recurrence,
    so no factorials or large ``H_n`` values are formed.
    """
    z = np.asarray(z, dtype=float)
    out = np.empty((nmax + 1,) + z.shape)
    out[0] = math.pi ** -0.25
    if nmax >= 1:
        out[1] = math.sqrt(2.0) * z * out[0]
    for n in range(1, nmax):
        out[n + 1] = math.sqrt(2.0 / (n + 1)) * z * out[n] - math.sqrt(n / (n + 1)) * out[n - 1]
    return out


def oscillator_polynomial(n: int, z):
    return oscillator_polynomials(n, z)[n]


def eigenfunctions(nmax: int, x, alpha: float = 1.0) -> np.ndarray:
    """Rows ``psi_n(x)`` for ``n = 0..nmax``, normalized in ``L^2(dx)``.

    The Gaussian is folded into the starting value of the recurrence to
    avoid overflow for large ``|alpha x|``.
    """
    x = np.asarray(x, dtype=float)
    z = alpha * x
    out = np.empty((nmax + 1,) + z.shape)
    out[0] = (alpha * alpha / math.pi) ** 0.25 * np.exp(-0.5 * z * z)
    if nmax >= 1:
        out[1] = math.sqrt(2.0) * z * out[0]
    for n in range(1, nmax):
        out[n + 1] = math.sqrt(2.0 / (n + 1)) * z * out[n] - math.sqrt(n / (n + 1)) * out[n - 1]
    return out


def eigenfunction(n: int, x, basis: HermiteBasis):
    if n < 0 or n > basis.nmax:
        raise IndexError(f"degree {n} outside basis range 0..{basis.nmax}")
    v = eigenfunctions(n, x, basis.alpha)[n]
    return v if v.ndim else float(v)


def eigenfunction_derivatives(nmax: int, x, alpha: float = 1.0) -> np.ndarray:
    """``d psi_n / dx`` from the ladder identity."""
    psi = eigenfunctions(nmax + 1, x, alpha)
    out = np.empty_like(psi[:-1])
    for n in range(nmax + 1):
        lower = math.sqrt(n / 2.0) * psi[n - 1] if n else 0.0
        out[n] = alpha * (lower - math.sqrt((n + 1) / 2.0) * psi[n + 1])
    return out


def printed_eigenfunction(n: int, x, mass: float, omega: float, hbar: float = 1.0):
    """Eigenfunction with the printed scale ``(m^{3/2} omega / hbar)^{1/2}`` and
    a unit-width Gaussian; only used for errata evidence."""
    alpha = math.sqrt(mass**1.5 * omega / hbar)
    norm = math.sqrt(alpha / (math.sqrt(math.pi) * 2.0**n * math.factorial(n)))
    x = np.asarray(x, dtype=float)
    return norm * hermite_poly(n, alpha * x) * np.exp(-0.5 * x * x)


@dataclass(frozen=True)
class Quadrature:
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def order(self) -> int:
        return len(self.nodes)


@lru_cache(maxsize=64)
def gauss_hermite(order: int) -> Quadrature:
    """Gauss-Hermite rule for weight ``exp(-z^2)`` (Golub-Welsch).

    Nodes are the eigenvalues of the Jacobi matrix, polished by one Newton
    step on the normalized recurrence; weights come from the Christoffel
    function ``1 / sum_k h_k(z)^2``, which keeps small weights accurate.
    """
    if order < 1:
        raise UnsupportedOrderError("order must be at least 1")
    if order > MAX_QUADRATURE_ORDER:
        raise UnsupportedOrderError(f"order {order} exceeds cap {MAX_QUADRATURE_ORDER}")
    off = np.sqrt(np.arange(1, order) / 2.0)
    nodes = eigh_tridiagonal(np.zeros(order), off, eigvals_only=True)
    # Newton polish: h_n'(z) = sqrt(2n) h_{n-1}(z)
    with np.errstate(over="ignore", invalid="ignore"):
        h = oscillator_polynomials(order, nodes)
    nodes = nodes - h[order] / (math.sqrt(2.0 * order) * h[order - 1])
    nodes = 0.5 * (nodes - nodes[::-1])
    # outermost weights underflow to 0 for very high orders
    with np.errstate(over="ignore"):
        h = oscillator_polynomials(order - 1, nodes)
        weights = 1.0 / np.sum(h * h, axis=0)
    weights = 0.5 * (weights + weights[::-1])
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return Quadrature(nodes, weights)


def overlap_1d(f, g, quad: Quadrature) -> float:
    """``sum_i w_i f(z_i) g(z_i)``; ``f`` and ``g`` exclude the Gaussian."""
    return float(np.sum(quad.weights * f(quad.nodes) * g(quad.nodes)))


def required_order(total_degree: int) -> int:
    """Smallest Gauss-Hermite order exact for a polynomial of ``total_degree``."""
    return total_degree // 2 + 1


def hermite_from_series(n: int, z: float) -> float:
    """``H_n(z)`` read off the Taylor coefficient of ``exp(-s^2) * exp(2 s z)``.

    Independent of the recurrence: the product of the two power series gives
    ``n! * sum_k (-1)^k (2z)^(n-2k) / (k! (n-2k)!)``.
    """
    coeff = 0.0
    for k in range(n // 2 + 1):
        coeff += (-1) ** k / math.factorial(k) * (2 * z) ** (n - 2 * k) / math.factorial(n - 2 * k)
    return math.factorial(n) * coeff


def eigen_equation_residual(n: int, x, mass: float, omega_osc: float, hbar: float = 1.0,
                            step: float = 1e-4, psi=None) -> np.ndarray:
    """Relative pointwise residual of the oscillator eigen-equation.

    ``psi`` defaults to the normalized eigenfunction; the second derivative
    is a central difference with ``step`` in units of the oscillator length.
    """
    alpha = math.sqrt(mass * abs(omega_osc) / hbar)
    if psi is None:
        def psi(v):
            return eigenfunctions(n, v, alpha)[n]
    x = np.asarray(x, dtype=float)
    h = step / alpha
    d2 = (psi(x + h) - 2 * psi(x) + psi(x - h)) / (h * h)
    lhs = -hbar**2 / (2 * mass) * d2 + 0.5 * mass * omega_osc**2 * x * x * psi(x)
    rhs = hbar * abs(omega_osc) * (n + 0.5) * psi(x)
    scale = np.max(np.abs(rhs))
    return np.abs(lhs - rhs) / scale

"""Gamma/Beta evaluation, irregular-operator expansion coefficients, the
ray-Laplace closed form for monomials, and the Gevrey majorant bound.

The expansion coefficients A_{m,l} rewrite T^{m(k+1)} d^m/dT^m as a
combination of powers of the irregular operator T^{k+1} d/dT:

    T^{m(k+1)} D^m = (T^{k+1} D)^m + sum_{l=1}^{m-1} A_{m,l} T^{k(m-l)} (T^{k+1} D)^l.

Applying both sides to monomials T^j turns this into a polynomial identity
in j, which pins the coefficients through an exact integer linear solve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .oracles import adaptive_quad_ray
from .quadrules import golden_max

# Lanczos approximation, g = 7, n = 9 (double-precision classic).
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def log_gamma(a: float) -> float:
    """log Gamma(a) for a > 0, Lanczos-based, usable far beyond overflow."""
    if a <= 0.0:
        raise DomainError(f"log_gamma requires a positive argument, got {a}")
    if a < 0.5:
        # reflection keeps the series argument in its sweet spot
        return math.log(math.pi / math.sin(math.pi * a)) - log_gamma(1.0 - a)
    x = _LANCZOS_C[0]
    z = a - 1.0
    for i, c in enumerate(_LANCZOS_C[1:], start=1):
        x += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(t) - t + math.log(x)


def gamma(a: float) -> float:
    """Gamma(a) for a > 0; switches to the log form past 50 to avoid overflow."""
    if a <= 0.0:
        raise DomainError(f"gamma requires a positive argument, got {a}")
    return math.exp(log_gamma(a))


def beta(a: float, b: float) -> float:
    """Euler Beta for positive arguments, evaluated in the log domain."""
    if a <= 0.0 or b <= 0.0:
        raise DomainError("beta requires positive arguments")
    return math.exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b))


def gamma_beta(a: float, b: float | None = None) -> float:
    """Gamma(a) when b is None, otherwise Beta(a, b)."""
    return gamma(a) if b is None else beta(a, b)


@dataclass
class MonoExpansion:
    """Coefficients A_{m,l}, l = 1..m-1, for fixed (m, k)."""

    m: int
    k: int
    coeffs: list

    def residual_on_monomials(self, j_max: int | None = None) -> float:
        """Max relative identity residual over monomials T^j, j = 1..j_max."""
        j_max = 2 * self.m if j_max is None else j_max
        worst = 0.0
        for j in range(1, j_max + 1):
            lhs = _falling(j, self.m)
            rhs = _rising_k(j, self.m, self.k)
            for l, a in enumerate(self.coeffs, start=1):
                rhs += a * _rising_k(j, l, self.k)
            scale = max(1.0, abs(float(lhs)), abs(float(rhs)))
            worst = max(worst, abs(float(lhs - rhs)) / scale)
        return worst


def _falling(j: int, m: int) -> Fraction:
    out = Fraction(1)
    for i in range(m):
        out *= (j - i)
    return out


def _rising_k(j: int, power: int, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(power):
        out *= (j + i * k)
    return out


def _solve_fraction(a, b):
    """Gaussian elimination over Fractions; a is square, b a vector."""
    n = len(b)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = Fraction(1) / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


@lru_cache(maxsize=None)
def mono_op_coeffs(m: int, k: int) -> MonoExpansion:
    """Expansion coefficients for (m, k); exact, m = 1 gives the empty list.

    Both sides act diagonally on T^j with scalar factors that are degree-m
    polynomials in j; matching them at j = 1..m-1 determines the A_{m,l}
    (leading power of the irregular operator already matches the leading
    falling factorial).
    """
    if m < 1 or k < 1:
        raise DomainError("m and k must be positive integers")
    if m == 1:
        return MonoExpansion(m=1, k=k, coeffs=[])
    rows, rhs = [], []
    for j in range(1, m):
        rows.append([_rising_k(j, l, k) for l in range(1, m)])
        rhs.append(_falling(j, m) - _rising_k(j, m, k))
    coeffs = _solve_fraction(rows, rhs)
    exp = MonoExpansion(m=m, k=k, coeffs=coeffs)
    res = exp.residual_on_monomials()
    if res > 1e-12:
        raise DomainError(f"singular/inconsistent expansion solve for m={m}, k={k}")
    return exp


def laplace_monomial(k: int, n: int, d: float, t: complex) -> complex:
    """Closed form of the ray Laplace transform of u^n against exp(-(u/T)^k).

    Requires kernel decay along the ray: cos(k (d - arg T)) > 0.
    """
    t = complex(t)
    if t == 0:
        raise DomainError("T must be nonzero")
    if math.cos(k * (d - np.angle(t))) <= 0.0:
        raise DomainError("kernel does not decay along the ray: cos(k(d - arg T)) <= 0")
    return t ** n * gamma(n / k)


def laplace_monomial_check(k: int, n: int, d: float, t: complex, tol: float = 1e-10):
    """(closed form, quadrature value, relative discrepancy) for the identity."""
    closed = laplace_monomial(k, n, d, t)
    phase = np.exp(1j * d)

    def integrand(r):
        u = r * phase
        return k * u ** (n - 1) * np.exp(-((u / t) ** k)) * phase

    quad = adaptive_quad_ray(integrand, 0.0, tol=tol, r_init=2.0 * abs(t) + 1.0)
    rel = abs(quad.value - closed) / max(abs(closed), 1e-300)
    return closed, quad.value, rel


def gevrey_majorant(n: int, m_const: float, k_prime: int):
    """Left-hand sup and right-hand factor of the exponential-smallness bound.

    sup_{r>0} r^{-n} exp(-m_const / r^{k'}) is attained at u = n/(k' m_const)
    after substituting u = r^{-k'}, giving (n/(k' m_const))^{n/k'} e^{-n/k'}.
    The right factor is (1/m_const)^{n/k'} (n/k')^{1/2} Gamma(n/k').
    Both are returned in the linear domain; use gevrey_majorant_log for
    arguments where they overflow.
    """
    ls, lr = gevrey_majorant_log(n, m_const, k_prime)
    return math.exp(ls), math.exp(lr)


def gevrey_majorant_log(n: int, m_const: float, k_prime: int):
    if n < 1 or m_const <= 0.0 or k_prime < 1:
        raise DomainError("need n >= 1, m_const > 0, k_prime >= 1")
    u = n / k_prime
    log_sup = u * (math.log(u) - math.log(m_const)) - u
    log_rhs = -u * math.log(m_const) + 0.5 * math.log(u) + log_gamma(u)
    return log_sup, log_rhs


def gevrey_majorant_numeric_sup(n: int, m_const: float, k_prime: int) -> float:
    """1-D golden-section check value for the closed-form sup."""
    r_star = (k_prime * m_const / n) ** (1.0 / k_prime)

    def f(r):
        return r ** (-n) * math.exp(-m_const / r ** k_prime)

    _, val = golden_max(f, 0.2 * r_star, 5.0 * r_star, tol=1e-14)
    return val


@lru_cache(maxsize=None)
def calibrate_gevrey_constant(k_prime: int, n_max: int = 200) -> float:
    """Smallest constant (times 1.01) making the majorant bound hold for n <= n_max.

    The bound only asserts existence of the constant; the ratio
    sup/rhs_factor is independent of m_const and increases toward
    1/sqrt(2 pi), so a sweep over n pins it.
    """
    worst = 0.0
    for n in range(1, n_max + 1):
        ls, lr = gevrey_majorant_log(n, 1.0, k_prime)
        worst = max(worst, math.exp(ls - lr))
    return 1.01 * worst

"""Independent reference implementations used by tests and verification modes.

Nothing in here is shared with the production evaluation paths: the adaptive
quadrature refines panels on its own, the monomial calculus is exact integer
arithmetic, and the differentiator is plain Richardson extrapolation. The
main solver is validated against these, never the other way around.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import heapq

import numpy as np

from .errors import DomainError
from .quadrules import gauss_legendre


@dataclass
class QuadResult:
    value: complex
    error_estimate: float
    evaluations: int

    def __iter__(self):
        yield from (self.value, self.error_estimate, self.evaluations)


def _panel_estimates(f, a, b):
    """(coarse, fine) Gauss estimates of int_a^b f, with 10/20 points."""
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    x10, w10 = gauss_legendre(10)
    x20, w20 = gauss_legendre(20)
    c = half * np.sum(w10 * f(mid + half * x10))
    fine = half * np.sum(w20 * f(mid + half * x20))
    return c, fine


def adaptive_quad(f, a: float, b: float, tol: float = 1e-10, limit: int = 4000) -> QuadResult:
    """Adaptive panel-splitting quadrature of a (vectorized) complex integrand.

    Splits the panel with the largest embedded-rule discrepancy until the sum
    of local error estimates falls below tol (absolute, with a relative floor
    against the accumulated value). Raises DomainError when the refinement
    budget is exhausted without convergence.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if a == b:
        return QuadResult(0.0 + 0.0j, 0.0, 0)
    coarse, fine = _panel_estimates(f, a, b)
    heap = [(-abs(fine - coarse), 0, a, b, fine, abs(fine - coarse))]
    counter = 1
    evals = 30
    for _ in range(limit):
        total = sum(item[4] for item in heap)
        err = sum(item[5] for item in heap)
        if err <= tol * max(1.0, abs(total)) or err <= tol:
            return QuadResult(total, err, evals)
        _, _, pa, pb, _, _ = heapq.heappop(heap)
        pm = 0.5 * (pa + pb)
        for qa, qb in ((pa, pm), (pm, pb)):
            c, fi = _panel_estimates(f, qa, qb)
            heapq.heappush(heap, (-abs(fi - c), counter, qa, qb, fi, abs(fi - c)))
            counter += 1
            evals += 30
    total = sum(item[4] for item in heap)
    err = sum(item[5] for item in heap)
    raise DomainError(
        f"adaptive quadrature did not converge: value={total}, error={err}, tol={tol}"
    )


def adaptive_quad_ray(f, r0: float, tol: float = 1e-10, r_init: float = 4.0,
                      limit: int = 4000) -> QuadResult:
    """Quadrature over [r0, infinity) for a decaying integrand.

    Doubles the truncation radius until the outermost block contributes less
    than tol relative to the running total, then refines the finite part.
    """
    r1 = max(r_init, 2.0 * max(r0, 1.0))
    total = adaptive_quad(f, r0, r1, tol=tol, limit=limit)
    value, err, evals = total.value, total.error_estimate, total.evaluations
    for _ in range(60):
        block = adaptive_quad(f, r1, 2.0 * r1, tol=tol, limit=limit)
        value += block.value
        err += block.error_estimate
        evals += block.evaluations
        r1 *= 2.0
        if abs(block.value) <= tol * max(1.0, abs(value)):
            return QuadResult(value, err, evals)
    raise DomainError("ray quadrature: tail did not decay below tolerance")


def symbolic_monomial_apply(word, j: int):
    """Apply an operator word to T^j, exactly.

    The word is a sequence of ops, applied right to left like operator
    composition written on paper: ('T', a) multiplies by T^a, ('D',) is
    d/dT. Returns (coefficient, exponent) with an exact Fraction/int
    coefficient. A vanished monomial returns (0, 0).
    """
    coeff = Fraction(1)
    exp = int(j)
    for op in reversed(list(word)):
        if op[0] == "T":
            exp += int(op[1])
        elif op[0] == "D":
            if exp == 0:
                return Fraction(0), 0
            coeff *= exp
            exp -= 1
        else:
            raise ValueError(f"unknown op {op!r}")
        if coeff == 0:
            return Fraction(0), 0
    return coeff, exp


def irregular_word(k: int, power: int):
    """Operator word for (T^{k+1} d/dT)^power."""
    w = []
    for _ in range(power):
        w.extend([("T", k + 1), ("D",)])
    return w


def finite_diff(f, x: float, h0: float = 1e-2, levels: int = 5):
    """Central-difference derivative with Richardson extrapolation.

    Returns (derivative, error_estimate, reliable). The reliability flag goes
    False when the extrapolation ladder is not internally consistent, which
    happens for insufficiently smooth integrands.
    """
    tab = np.zeros((levels, levels), dtype=complex)
    h = h0
    for i in range(levels):
        tab[i, 0] = (f(x + h) - f(x - h)) / (2.0 * h)
        fac = 1.0
        for m in range(1, i + 1):
            fac *= 4.0
            tab[i, m] = (fac * tab[i, m - 1] - tab[i - 1, m - 1]) / (fac - 1.0)
        h /= 2.0
    best = tab[levels - 1, levels - 1]
    err = abs(tab[levels - 1, levels - 1] - tab[levels - 2, levels - 2])
    scale = max(1.0, abs(best))
    reliable = err <= 1e-5 * scale
    return best, err, reliable

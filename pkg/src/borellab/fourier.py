"""Inverse Fourier transform, m-line convolution, and the weighted sup norm
for profiles decaying like (1+|m|)^{-mu} e^{-beta |m|}.

The grid doubles as collocation nodes and quadrature rule. Convolutions are
product-integration operators: for each output node the integration panels
are re-split at the kernel's kink (the |.| in the profile shape is only C^0
there), the kernel is evaluated exactly at node differences, and the unknown
factor is interpolated back to grid nodes by the panel polynomials. The
resulting dense matrices/tensors are precomputed once per grid and reused
across every Picard iteration, which also fixes the floating-point reduction
order once and for all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UsageError
from .quadrules import PanelGrid, golden_max

_SQRT2PI = math.sqrt(2.0 * math.pi)


class FourierGrid:
    """Symmetric panel grid on [-M_cut, M_cut] with a breakpoint at 0."""

    def __init__(self, beta: float, mu: float, m_cut: float | None = None,
                 tail_tol: float = 1e-12, nodes_per_panel: int = 12):
        if beta <= 0 or mu <= 0:
            raise UsageError("beta and mu must be positive")
        self.beta = beta
        self.mu = mu
        self.tail_tol = tail_tol
        if m_cut is None:
            m_cut = max(40.0 / beta, 40.0)
        self.m_cut = float(m_cut)
        tail = math.exp(-beta * self.m_cut) * (1.0 + self.m_cut) ** (-mu)
        if tail > tail_tol:
            raise UsageError(
                f"m_cut={self.m_cut} leaves profile tail {tail:.2e} > tail_tol={tail_tol:.2e}")
        base = np.array([0.0, 1.0, 2.5, 5.0, 9.0, 15.0, 24.0]) / beta
        base = base[base < self.m_cut]
        pos = np.concatenate([base, [self.m_cut]])
        bps = np.concatenate([-pos[::-1][:-1], pos])
        self.panel = PanelGrid(bps, nodes_per_panel)
        self.nodes = self.panel.nodes
        self.weights = self.panel.weights
        self._bilinear_cache = None

    @property
    def size(self) -> int:
        return len(self.nodes)

    def interp_matrix(self, targets):
        return self.panel.interp_matrix(targets)

    def integrate(self, values, axis=-1):
        return np.tensordot(np.asarray(values), self.weights, axes=([axis], [0]))

    def conv_matrix(self, kernel) -> np.ndarray:
        """Matrix M with (M @ v)[i] ~ int kernel(m_i - y) v(y) dy.

        kernel is a vectorized callable of a real array. Panels are split at
        the output node so a kink of kernel(.) at zero never sits inside a
        quadrature panel.
        """
        n = self.size
        out = np.zeros((n, n), dtype=complex)
        for i, mi in enumerate(self.nodes):
            x, w = self.panel.rule_with_breaks([mi])
            kv = np.asarray(kernel(mi - x), dtype=complex)
            out[i] = (w * kv) @ self.panel.interp_matrix(x)
        if np.abs(out.imag).max() == 0.0:
            return out.real
        return out

    def bilinear_tensors(self):
        """Shared quadrature geometry for bilinear convolutions.

        Returns (xq, wq, a_shift, a_plain): xq/wq of shape (n, nq) hold the
        per-output quadrature rules (panels split at the output node and 0);
        a_shift[i, q, :] interpolates a grid function at m_i - xq[i, q],
        a_plain[i, q, :] at xq[i, q]. Cached: these depend only on the grid.
        """
        if self._bilinear_cache is not None:
            return self._bilinear_cache
        n = self.size
        rules = [self.panel.rule_with_breaks([mi]) for mi in self.nodes]
        nq = max(len(x) for x, _ in rules)
        xq = np.full((n, nq), self.panel.lo)
        wq = np.zeros((n, nq))
        for i, (x, w) in enumerate(rules):
            xq[i, : len(x)] = x
            wq[i, : len(w)] = w
        a_shift = np.zeros((n, nq, n))
        a_plain = np.zeros((n, nq, n))
        for i in range(n):
            a_shift[i] = self.panel.interp_matrix(self.nodes[i] - xq[i])
            a_plain[i] = self.panel.interp_matrix(xq[i])
        self._bilinear_cache = (xq, wq, a_shift, a_plain)
        return self._bilinear_cache


@dataclass
class ProfileFn:
    """Function of the Fourier variable m: grid samples or a closed form."""

    grid: FourierGrid
    values: np.ndarray | None = None
    closed_form: object = None

    def __post_init__(self):
        if (self.values is None) == (self.closed_form is None):
            raise UsageError("provide exactly one of values / closed_form")
        if self.values is not None:
            self.values = np.asarray(self.values, dtype=complex)
            if self.values.shape != (self.grid.size,):
                raise UsageError("values must be sampled on the grid nodes")

    @classmethod
    def from_callable(cls, grid, fn, closed: bool = True):
        if closed:
            return cls(grid=grid, closed_form=fn)
        return cls(grid=grid, values=np.asarray(fn(grid.nodes), dtype=complex))

    def on_grid(self) -> np.ndarray:
        if self.values is not None:
            return self.values
        return np.asarray(self.closed_form(self.grid.nodes), dtype=complex)

    def eval(self, m):
        if self.closed_form is not None:
            return self.closed_form(np.asarray(m, dtype=float))
        return self.grid.interp_matrix(m) @ self.values


def e_beta_mu_norm(h: ProfileFn, beta: float, mu: float) -> float:
    """sup over m of (1+|m|)^mu e^{beta|m|} |h(m)|.

    Grid sup refined by a golden-section pass around the winning node; the
    weight's own extrema sit at m = 0 or unit scale, both of which are nodes.
    """
    m = h.grid.nodes
    vals = np.abs(h.on_grid()) * (1.0 + np.abs(m)) ** mu * np.exp(beta * np.abs(m))
    i = int(np.argmax(vals))
    best = float(vals[i])
    lo = m[max(i - 1, 0)]
    hi = m[min(i + 1, len(m) - 1)]
    if hi > lo:
        def f(x):
            return float(np.abs(h.eval([x]))[0]
                         * (1.0 + abs(x)) ** mu * math.exp(beta * abs(x)))
        _, v = golden_max(f, lo, hi, tol=1e-12)
        best = max(best, v)
    return best


def inverse_fourier(h: ProfileFn, x: complex) -> complex:
    """(1/sqrt(2 pi)) int h(m) e^{i x m} dm for x in the analyticity strip."""
    if abs(np.imag(x)) >= h.grid.beta:
        raise DomainError(
            f"|Im x|={abs(np.imag(x)):.3g} outside the strip of half-width {h.grid.beta}")
    vals = h.on_grid() * np.exp(1j * complex(x) * h.grid.nodes)
    return complex(h.grid.integrate(vals)) / _SQRT2PI


def convolve_m(h: ProfileFn, g: ProfileFn) -> ProfileFn:
    """(1/sqrt(2 pi)) int h(m - m1) g(m1) dm1, returned on the shared grid."""
    if h.grid is not g.grid:
        raise UsageError("profiles must share a grid")
    grid = h.grid
    xq, wq, _, a_plain = grid.bilinear_tensors()
    gq = np.einsum("iqj,j->iq", a_plain, g.on_grid()) if g.values is not None \
        else g.closed_form(xq)
    if h.values is not None:
        hm = np.stack([grid.interp_matrix(mi - xq[i]) @ h.values
                       for i, mi in enumerate(grid.nodes)])
    else:
        hm = h.closed_form(grid.nodes[:, None] - xq)
    vals = np.einsum("iq,iq,iq->i", wq + 0j, hm, gq) / _SQRT2PI
    return ProfileFn(grid=grid, values=vals)

"""Quadrature and interpolation building blocks.

Composite Gauss-Legendre panels, Gauss-Jacobi rules for algebraic endpoint
weights, and barycentric polynomial interpolation on the panel nodes. Nodes
are real; values may be complex. Everything here is deterministic and
allocation-only, so the higher modules can precompute operator matrices once
per grid and reuse them across Picard iterations.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi


@lru_cache(maxsize=None)
def gauss_legendre(n: int):
    """Nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def segment_rule(a: float, b: float, n: int):
    """Gauss-Legendre rule on [a, b]."""
    x, w = gauss_legendre(n)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return mid + half * x, half * w


@lru_cache(maxsize=None)
def jacobi_rule_01(n: int, alpha: float, beta: float):
    """Rule for integrals of the form  int_0^1 (1-x)^alpha x^beta g(x) dx.

    The weight function is part of the rule, so g is sampled bare. Requires
    alpha, beta > -1.
    """
    t, w = roots_jacobi(n, alpha, beta)
    x = 0.5 * (t + 1.0)
    w = w * 0.5 ** (alpha + beta + 1.0)
    return x, w


def composite_rule(breakpoints, n_per_panel: int):
    """Composite Gauss-Legendre rule over consecutive breakpoints."""
    xs, ws = [], []
    for a, b in zip(breakpoints[:-1], breakpoints[1:]):
        x, w = segment_rule(float(a), float(b), n_per_panel)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


def geometric_breakpoints(start: float, stop: float, first: float, growth: float = 2.0):
    """Breakpoints from start to stop with panel widths first, first*growth, ...

    The final panel is stretched to end exactly at stop.
    """
    if stop <= start:
        raise ValueError("stop must exceed start")
    pts = [start]
    width = first
    while pts[-1] + width < stop:
        pts.append(pts[-1] + width)
        width *= growth
    pts.append(stop)
    if len(pts) > 2 and (pts[-1] - pts[-2]) < 0.25 * (pts[-2] - pts[-3]):
        del pts[-2]
    return np.asarray(pts)


class BaryInterp:
    """Barycentric Lagrange interpolation on a fixed set of distinct nodes."""

    def __init__(self, nodes):
        self.nodes = np.asarray(nodes, dtype=float)
        n = len(self.nodes)
        if n < 2:
            raise ValueError("need at least two nodes")
        diff = self.nodes[:, None] - self.nodes[None, :]
        np.fill_diagonal(diff, 1.0)
        # scale columns to tame over/underflow for wide node sets
        scale = 4.0 / (self.nodes.max() - self.nodes.min())
        self.weights = 1.0 / np.prod(diff * scale, axis=1)

    def matrix(self, targets):
        """Dense matrix M with (M @ values)[i] = p(targets[i])."""
        t = np.atleast_1d(np.asarray(targets, dtype=float))
        d = t[:, None] - self.nodes[None, :]
        hit = np.isclose(d, 0.0, atol=1e-14 * max(1.0, np.abs(self.nodes).max()))
        d_safe = np.where(hit, 1.0, d)
        num = self.weights[None, :] / d_safe
        m = num / num.sum(axis=1)[:, None]
        rows = hit.any(axis=1)
        if rows.any():
            m[rows] = 0.0
            m[rows, np.argmax(hit[rows], axis=1)] = 1.0
        return m

    def __call__(self, values, targets):
        return self.matrix(targets) @ np.asarray(values)


class PanelGrid:
    """1-D grid of Gauss-Legendre panels with per-panel barycentric interpolation.

    Doubles as a quadrature rule (``nodes``/``weights``) and as the node set
    functions are collocated on. Interpolation of off-node points uses the
    degree-(n-1) panel polynomial of the panel containing the point; points
    outside the covered interval interpolate as zero (profile tail cut).
    """

    def __init__(self, breakpoints, n_per_panel: int):
        self.breakpoints = np.asarray(breakpoints, dtype=float)
        if np.any(np.diff(self.breakpoints) <= 0):
            raise ValueError("breakpoints must increase strictly")
        self.n_per_panel = int(n_per_panel)
        self.n_panels = len(self.breakpoints) - 1
        nodes, weights, interps = [], [], []
        for a, b in zip(self.breakpoints[:-1], self.breakpoints[1:]):
            x, w = segment_rule(a, b, self.n_per_panel)
            nodes.append(x)
            weights.append(w)
            interps.append(BaryInterp(x))
        self.nodes = np.concatenate(nodes)
        self.weights = np.concatenate(weights)
        self._interps = interps

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def lo(self) -> float:
        return float(self.breakpoints[0])

    @property
    def hi(self) -> float:
        return float(self.breakpoints[-1])

    def panel_of(self, x):
        idx = np.searchsorted(self.breakpoints, x, side="right") - 1
        return np.clip(idx, 0, self.n_panels - 1)

    def interp_matrix(self, targets):
        """Dense (len(targets), size) matrix; rows for out-of-range targets are zero."""
        t = np.atleast_1d(np.asarray(targets, dtype=float))
        out = np.zeros((len(t), self.size))
        inside = (t >= self.lo) & (t <= self.hi)
        if not inside.any():
            return out
        pid = self.panel_of(t[inside])
        cols = np.arange(self.n_per_panel)
        rows_idx = np.flatnonzero(inside)
        for p in np.unique(pid):
            sel = rows_idx[pid == p]
            block = self._interps[p].matrix(t[sel])
            out[np.ix_(sel, p * self.n_per_panel + cols)] = block
        return out

    def interpolate(self, values, targets):
        return self.interp_matrix(targets) @ np.asarray(values)

    def rule_with_breaks(self, extra):
        """Quadrature nodes/weights after splitting panels at the extra points."""
        pts = np.asarray(np.atleast_1d(extra), dtype=float)
        pts = pts[(pts > self.lo) & (pts < self.hi)]
        bp = np.unique(np.concatenate([self.breakpoints, pts]))
        return composite_rule(bp, self.n_per_panel)

    def integrate(self, values):
        return self.weights @ np.asarray(values)


def chebyshev_radii(n: int, rho: float):
    """n radii in (0, rho], clustered at both ends, boundary rho included."""
    j = np.arange(1, n + 1)
    return rho * 0.5 * (1.0 - np.cos(np.pi * j / n))


def golden_max(f, a: float, b: float, tol: float = 1e-12, max_iter: int = 200):
    """Golden-section maximization of a scalar function on [a, b]."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a < tol * max(1.0, abs(a) + abs(b)):
            break
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
    xm = 0.5 * (a + b)
    return xm, f(xm)

"""Problem instances: the equation data, its arithmetic hypotheses, and the
coefficient/forcing profiles.

An instance couples two irregular time variables through the leading operator

    Q(dz) u = eps^{D0} (t1^{k1+1} dt1)^{d1} (t2^{k2+1} dt2)^{d2} R(dz) u + ...

plus lower-order irregular terms indexed by a finite set of integer 4-tuples,
a quadratic nonlinearity, and a polynomial forcing term. Every hypothesis the
construction relies on is checked by validate_spec, which reports findings
instead of raising: invalid mathematics is a diagnosis, not a crash. Only
malformed inputs (empty polynomial, nonpositive radius) raise.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError
from .quadrules import golden_max
from .special import gamma

SPEC_VERSION = 1


class ComplexPoly:
    """Polynomial with complex coefficients, ascending degree."""

    def __init__(self, coefficients):
        c = np.asarray(list(coefficients), dtype=complex)
        if c.size == 0:
            raise ConfigError("polynomial needs at least one coefficient")
        # normalize: strip trailing zeros, keep at least the constant term
        nz = np.flatnonzero(np.abs(c) > 0)
        self.coefficients = c[: nz[-1] + 1] if nz.size else c[:1] * 0.0

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coefficients) == 1 and self.coefficients[0] == 0

    def __call__(self, x):
        out = np.zeros_like(np.asarray(x, dtype=complex))
        for c in self.coefficients[::-1]:
            out = out * x + c
        return out if out.shape else complex(out)

    def at_im(self, m):
        """Evaluate at X = i m for real m."""
        return self(1j * np.asarray(m, dtype=float))

    def __repr__(self):
        return f"ComplexPoly({list(self.coefficients)})"


class EpsPoly:
    """Polynomial in X whose coefficients are polynomials in eps."""

    def __init__(self, coeff_polys):
        self.coeff_polys = [p if isinstance(p, ComplexPoly) else ComplexPoly(p)
                            for p in coeff_polys]
        if not self.coeff_polys:
            raise ConfigError("EpsPoly needs at least one X-coefficient")

    @property
    def degree(self) -> int:
        deg = 0
        for j, p in enumerate(self.coeff_polys):
            if not p.is_zero:
                deg = j
        return deg

    def at(self, eps: complex) -> ComplexPoly:
        return ComplexPoly([p(eps) for p in self.coeff_polys])

    def __call__(self, eps, x):
        return self.at(eps)(x)


@dataclass
class ProfileAmplitude:
    """eps-dependence of a coefficient profile plus its claimed sup bound."""

    amplitude: ComplexPoly
    sup_bound: float

    def __call__(self, eps: complex) -> complex:
        return self.amplitude(eps)

    def sup_ok(self, eps0: float, n_radial: int = 12, n_angle: int = 24):
        """Check |amplitude| <= sup_bound on a dense grid of the closed disc."""
        r = np.linspace(0.0, eps0, n_radial)
        th = np.linspace(0.0, 2 * np.pi, n_angle, endpoint=False)
        pts = (r[:, None] * np.exp(1j * th)[None, :]).ravel()
        vals = np.abs(self.amplitude(pts))
        return bool(vals.max() <= self.sup_bound * (1 + 1e-12)), float(vals.max())


@dataclass
class IndexTuple:
    """One lower-order irregular term t1^{l1} dt1^{l2} t2^{l3} dt2^{l4}."""

    l1: int
    l2: int
    l3: int
    l4: int
    delta_l: int
    amplitude: ProfileAmplitude

    def d_k1(self, k1: int) -> int:
        return self.l1 - self.l2 * (k1 + 1)

    def d_k2(self, k2: int) -> int:
        return self.l3 - self.l4 * (k2 + 1)

    def key(self):
        return (self.l1, self.l2, self.l3, self.l4)


@dataclass
class ProblemSpec:
    k1: int
    k2: int
    delta1: int
    delta2: int
    delta0: int
    eps0: float
    beta: float
    mu: float
    index_set: list            # of IndexTuple
    q_poly: ComplexPoly
    r_poly: ComplexPoly
    r_l_polys: list            # of ComplexPoly, aligned with index_set
    p1: EpsPoly
    p2: EpsPoly
    n1_set: list               # of int
    n2_set: list
    forcing_profiles: dict     # (n1, n2) -> ProfileAmplitude
    name: str = "unnamed"

    def __post_init__(self):
        if self.eps0 <= 0:
            raise ConfigError("eps0 must be positive")
        if self.beta <= 0 or self.mu <= 0:
            raise ConfigError("beta and mu must be positive")
        if len(self.r_l_polys) != len(self.index_set):
            raise ConfigError("one R_l polynomial per index tuple is required")
        if not self.n1_set or not self.n2_set:
            raise ConfigError("forcing exponent sets must be nonempty")
        missing = [(a, b) for a in self.n1_set for b in self.n2_set
                   if (a, b) not in self.forcing_profiles]
        if missing:
            raise ConfigError(f"missing forcing profiles for {missing}")

    # profiles are fixed to the separable shape amp(eps) (1+|m|)^-mu e^{-beta|m|}
    def profile_shape(self, m):
        m = np.abs(np.asarray(m, dtype=float))
        return (1.0 + m) ** (-self.mu) * np.exp(-self.beta * m)

    def c_profile(self, idx: int, m, eps: complex):
        return self.index_set[idx].amplitude(eps) * self.profile_shape(m)

    def f_profile(self, n1: int, n2: int, m, eps: complex):
        return self.forcing_profiles[(n1, n2)](eps) * self.profile_shape(m)

    def psi(self, tau1, tau2, m, eps: complex):
        """Forcing image in the Borel-Fourier plane at a single (tau1, tau2)."""
        out = 0.0 + 0.0j
        t1 = complex(tau1)
        t2 = complex(tau2)
        for a in self.n1_set:
            for b in self.n2_set:
                out += (self.f_profile(a, b, m, eps)
                        * t1 ** a / gamma(a / self.k1)
                        * t2 ** b / gamma(b / self.k2))
        return out

    def c_psi(self, rho1: float, rho2: float) -> float:
        """Forcing norm bound on the rho-discs, per its defining sum."""
        ktil = max(self.forcing_profiles[(a, b)].sup_bound
                   for a in self.n1_set for b in self.n2_set)
        s = sum(rho1 ** (a - 1) * rho2 ** (b - 1)
                / (gamma(a / self.k1) * gamma(b / self.k2))
                for a in self.n1_set for b in self.n2_set)
        return ktil * s


@dataclass
class Finding:
    constraint: str
    passed: bool
    detail: str


@dataclass
class ValidationReport:
    findings: list
    derived_d: dict            # tuple-key -> (d_k1, d_k2)

    @property
    def valid(self) -> bool:
        return all(f.passed for f in self.findings)

    def failed(self):
        return [f for f in self.findings if not f.passed]

    def as_dict(self):
        return {
            "valid": self.valid,
            "findings": [{"constraint": f.constraint, "passed": f.passed,
                          "detail": f.detail} for f in self.findings],
            "derived_d": {str(k): list(v) for k, v in self.derived_d.items()},
        }


def _abs_squared_on_axis(p: ComplexPoly):
    """Real coefficients of m -> |p(i m)|^2."""
    a = p.coefficients * (1j ** np.arange(len(p.coefficients)))
    prod = np.convolve(a, np.conj(a))
    return np.real(prod)


def _min_abs_on_axis(p: ComplexPoly):
    """Grid-plus-refinement minimum of |p(i m)| over real m.

    The grid extent is 1 + sum of coefficient ratios (a Cauchy-type bound),
    beyond which the leading term dominates; each local grid minimum is
    refined by golden section.
    """
    q = _abs_squared_on_axis(p)
    lead = q[-1]
    if len(q) == 1:
        return math.sqrt(max(q[0], 0.0))
    extent = 1.0 + sum(abs(c) for c in q[:-1]) / max(abs(lead), 1e-300)
    grid = np.linspace(-extent, extent, 4001)
    vals = np.polyval(q[::-1], grid)
    best = vals.min()
    idx = [i for i in range(1, len(grid) - 1)
           if vals[i] <= vals[i - 1] and vals[i] <= vals[i + 1]]
    for i in idx:
        _, v = golden_max(lambda x: -np.polyval(q[::-1], x), grid[i - 1], grid[i + 1])
        best = min(best, -v)
    return math.sqrt(max(best, 0.0))


def validate_spec(spec: ProblemSpec) -> ValidationReport:
    """One finding per hypothesis; invalidity is an outcome, never an exception."""
    f: list[Finding] = []
    derived = {}

    f.append(Finding("k-order", spec.k1 > spec.k2 >= 1,
                     f"k1={spec.k1}, k2={spec.k2}, need k1 > k2 >= 1"))
    f.append(Finding("delta-compat", spec.delta1 * spec.k1 == spec.delta2 * spec.k2,
                     f"delta1*k1={spec.delta1 * spec.k1}, delta2*k2={spec.delta2 * spec.k2}"))
    f.append(Finding("delta0-def",
                     spec.delta0 == spec.k1 * spec.delta1 + spec.k2 * spec.delta2,
                     f"delta0={spec.delta0}, k1*delta1+k2*delta2="
                     f"{spec.k1 * spec.delta1 + spec.k2 * spec.delta2}"))

    for tup in spec.index_set:
        key = tup.key()
        d1 = tup.d_k1(spec.k1)
        d2 = tup.d_k2(spec.k2)
        derived[key] = (d1, d2)
        f.append(Finding(f"factor-shift:{key}", d1 >= 1 and d2 >= 1,
                         f"d_k1={d1}, d_k2={d2}, both must be >= 1"))
        f.append(Finding(f"eps-power:{key}",
                         tup.delta_l >= tup.l1 - tup.l2 + tup.l3 - tup.l4 + 1,
                         f"delta_l={tup.delta_l} vs "
                         f"{tup.l1 - tup.l2 + tup.l3 - tup.l4 + 1}"))
        gap1 = tup.l1 - tup.l2
        gap2 = tup.l3 - tup.l4
        f.append(Finding(f"order-window:{key}",
                         gap1 == gap2 and spec.k1 <= gap1 <= spec.delta1 * spec.k1,
                         f"l1-l2={gap1}, l3-l4={gap2}, window "
                         f"[{spec.k1}, {spec.delta1 * spec.k1}]"))

    degq, degr = spec.q_poly.degree, spec.r_poly.degree
    degrl = max((p.degree for p in spec.r_l_polys), default=0)
    f.append(Finding("degree-chain", degq >= degr >= degrl,
                     f"deg Q={degq}, deg R={degr}, max deg R_l={degrl}"))
    f.append(Finding("degree-nonlinear",
                     degr >= max(spec.p1.degree, spec.p2.degree),
                     f"deg R={degr} vs max deg P={max(spec.p1.degree, spec.p2.degree)}"))
    f.append(Finding("fourier-weight",
                     spec.mu > max(spec.p1.degree, spec.p2.degree, degrl) + 1,
                     f"mu={spec.mu} vs {max(spec.p1.degree, spec.p2.degree, degrl) + 1}"))

    for label, poly in (("Q", spec.q_poly), ("R", spec.r_poly)):
        m = _min_abs_on_axis(poly)
        f.append(Finding(f"axis-nonvanishing:{label}", m > 1e-9,
                         f"min |{label}(i m)| over real m ~= {m:.3e}"))
    for tup, poly in zip(spec.index_set, spec.r_l_polys):
        m = _min_abs_on_axis(poly)
        f.append(Finding(f"axis-nonvanishing:R_l{tup.key()}", m > 1e-9,
                         f"min ~= {m:.3e}"))

    hull = _arg_hull(spec)
    f.append(Finding("ratio-sector", hull is not None and hull[1] - hull[0] < 2 * math.pi - 1e-9,
                     "Q/R values on the axis must fit a proper sector"
                     + ("" if hull is None else f"; hull width {hull[1] - hull[0]:.3f} rad")))

    ok_amp = True
    worst = ""
    for tup in spec.index_set:
        good, mx = tup.amplitude.sup_ok(spec.eps0)
        if not good:
            ok_amp, worst = False, f"tuple {tup.key()} exceeds bound: {mx:.3e}"
    f.append(Finding("profile-sup", ok_amp, worst or "all C_l amplitudes within bounds"))
    ok_f = True
    worst = ""
    for key, prof in spec.forcing_profiles.items():
        good, mx = prof.sup_ok(spec.eps0)
        if not good:
            ok_f, worst = False, f"forcing {key} exceeds bound: {mx:.3e}"
    f.append(Finding("forcing-sup", ok_f, worst or "all forcing amplitudes within bounds"))

    return ValidationReport(findings=f, derived_d=derived)


def _arg_hull(spec: ProblemSpec, n_samples: int = 2001, extent: float | None = None):
    """Minimal arc (lo, hi) containing arg(Q(im)/R(im)); None if R vanishes."""
    if extent is None:
        extent = 1.0 + sum(abs(c) for c in spec.q_poly.coefficients) \
            + sum(abs(c) for c in spec.r_poly.coefficients)
    m = np.linspace(-extent, extent, n_samples)
    r = spec.r_poly.at_im(m)
    if np.any(np.abs(r) < 1e-14):
        return None
    vals = spec.q_poly.at_im(m) / r
    args = np.sort(np.angle(vals))
    gaps = np.diff(np.concatenate([args, [args[0] + 2 * math.pi]]))
    j = int(np.argmax(gaps))
    if gaps[j] <= 1e-12:
        return (float(args[0]), float(args[0]) + 2 * math.pi)
    # the hull is the complement of the largest gap, starting at the gap's end
    lo = float(args[j + 1]) if j + 1 < len(args) else float(args[0]) + 2 * math.pi
    width = float(2 * math.pi - gaps[j])
    while lo > math.pi:
        lo -= 2 * math.pi
    return (lo, lo + width)


@dataclass
class DerivedReport:
    r_qr: float
    arg_hull: tuple
    sector_sqr: tuple          # (center, half_opening) of a sector containing the hull
    delta0: int

    def as_dict(self):
        return {"r_qr": self.r_qr, "arg_hull": list(self.arg_hull),
                "sector_sqr": list(self.sector_sqr), "delta0": self.delta0}


def derived_quantities(spec: ProblemSpec, m_grid_extent: float = 30.0) -> DerivedReport:
    """Lower bound r_QR of |Q/R| on the axis, the argument hull, and a sector.

    Includes the |m| -> infinity limit: the ratio diverges when deg Q exceeds
    deg R and tends to the leading-coefficient ratio when the degrees agree.
    """
    m = np.linspace(-m_grid_extent, m_grid_extent, 4001)
    r = spec.r_poly.at_im(m)
    if np.any(np.abs(r) < 1e-13):
        raise DomainError("R(i m) vanishes at a sample point; contradicts the hypotheses")
    vals = spec.q_poly.at_im(m) / r
    r_qr = float(np.min(np.abs(vals)))
    # refine around the coarse grid minimum
    i0 = int(np.argmin(np.abs(vals)))
    lo = m[max(i0 - 2, 0)]
    hi = m[min(i0 + 2, len(m) - 1)]
    _, v = golden_max(lambda x: -abs(complex(spec.q_poly.at_im(x))
                                     / complex(spec.r_poly.at_im(x))), lo, hi)
    r_qr = min(r_qr, -v)
    if spec.q_poly.degree == spec.r_poly.degree:
        limit = abs(spec.q_poly.coefficients[-1] / spec.r_poly.coefficients[-1])
        r_qr = min(r_qr, float(limit))
    hull = _arg_hull(spec, extent=m_grid_extent)
    if hull is None:
        raise DomainError("R(i m) vanishes; no hull")
    center = 0.5 * (hull[0] + hull[1])
    half = 0.5 * (hull[1] - hull[0]) + 0.05
    return DerivedReport(r_qr=r_qr, arg_hull=hull, sector_sqr=(center, half),
                         delta0=spec.delta0)


@dataclass
class ProfileReport:
    c_values: list
    f_values: dict
    psi_value: complex
    c_psi: float


def eval_profiles(spec: ProblemSpec, m: float, eps: complex,
                  tau1: complex = 0.0, tau2: complex = 0.0,
                  rho1: float = 1.0, rho2: float = 1.0) -> ProfileReport:
    """Coefficient profiles, forcing profiles and the Borel forcing at a point."""
    if abs(eps) > spec.eps0 * (1 + 1e-12):
        raise DomainError(f"|eps|={abs(eps)} outside the disc of radius {spec.eps0}")
    c_vals = [spec.c_profile(i, m, eps) for i in range(len(spec.index_set))]
    f_vals = {(a, b): spec.f_profile(a, b, m, eps)
              for a in spec.n1_set for b in spec.n2_set}
    return ProfileReport(c_values=c_vals, f_values=f_vals,
                         psi_value=spec.psi(tau1, tau2, m, eps),
                         c_psi=spec.c_psi(rho1, rho2))


# ---------------------------------------------------------------- JSON layer

def _poly_to_json(p: ComplexPoly):
    return [[float(c.real), float(c.imag)] for c in p.coefficients]


def _poly_from_json(data):
    return ComplexPoly([complex(re, im) for re, im in data])


def _amp_to_json(a: ProfileAmplitude):
    return {"amplitude_poly": _poly_to_json(a.amplitude), "sup_bound": a.sup_bound}


def _amp_from_json(data):
    return ProfileAmplitude(amplitude=_poly_from_json(data["amplitude_poly"]),
                            sup_bound=float(data["sup_bound"]))


def spec_to_dict(spec: ProblemSpec) -> dict:
    return {
        "spec_version": SPEC_VERSION,
        "name": spec.name,
        "k1": spec.k1, "k2": spec.k2,
        "delta1": spec.delta1, "delta2": spec.delta2, "delta0": spec.delta0,
        "eps0": spec.eps0, "beta": spec.beta, "mu": spec.mu,
        "index_set": [
            {"l": list(t.key()), "delta_l": t.delta_l,
             "amplitude": _amp_to_json(t.amplitude),
             "r_l": _poly_to_json(p)}
            for t, p in zip(spec.index_set, spec.r_l_polys)
        ],
        "q_poly": _poly_to_json(spec.q_poly),
        "r_poly": _poly_to_json(spec.r_poly),
        "p1": [_poly_to_json(c) for c in spec.p1.coeff_polys],
        "p2": [_poly_to_json(c) for c in spec.p2.coeff_polys],
        "n1_set": list(spec.n1_set), "n2_set": list(spec.n2_set),
        "forcing_profiles": {f"{a},{b}": _amp_to_json(p)
                             for (a, b), p in spec.forcing_profiles.items()},
    }


def spec_from_dict(data: dict) -> ProblemSpec:
    if "spec_version" not in data:
        raise ConfigError("missing spec_version key")
    if data["spec_version"] != SPEC_VERSION:
        raise ConfigError(f"unsupported spec_version {data['spec_version']}")
    try:
        tuples, r_l = [], []
        for entry in data["index_set"]:
            l1, l2, l3, l4 = entry["l"]
            tuples.append(IndexTuple(l1, l2, l3, l4, int(entry["delta_l"]),
                                     _amp_from_json(entry["amplitude"])))
            r_l.append(_poly_from_json(entry["r_l"]))
        forcing = {}
        for key, amp in data["forcing_profiles"].items():
            a, b = key.split(",")
            forcing[(int(a), int(b))] = _amp_from_json(amp)
        return ProblemSpec(
            k1=int(data["k1"]), k2=int(data["k2"]),
            delta1=int(data["delta1"]), delta2=int(data["delta2"]),
            delta0=int(data["delta0"]),
            eps0=float(data["eps0"]), beta=float(data["beta"]), mu=float(data["mu"]),
            index_set=tuples,
            q_poly=_poly_from_json(data["q_poly"]),
            r_poly=_poly_from_json(data["r_poly"]),
            r_l_polys=r_l,
            p1=EpsPoly([_poly_from_json(c) for c in data["p1"]]),
            p2=EpsPoly([_poly_from_json(c) for c in data["p2"]]),
            n1_set=[int(x) for x in data["n1_set"]],
            n2_set=[int(x) for x in data["n2_set"]],
            forcing_profiles=forcing,
            name=data.get("name", "unnamed"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed problem file: {exc}") from exc


def load_spec(path) -> ProblemSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return spec_from_dict(json.load(fh))


def save_spec(spec: ProblemSpec, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec_to_dict(spec), fh, indent=2, sort_keys=True)
        fh.write("\n")

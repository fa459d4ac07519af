"""Built-in problem instances and their run geometry.

Three instances ship with the package:

* ``paper-remark``  - the k1=3/k2=2 instance with one lower-order term,
  t1^6 dt1 t2^7 dt2^2, whose derived shifts are (2, 1).
* ``scenario-a``    - minimal instance (empty index set, k1=2, k2=1) used by
  the acceptance pipeline; all decay sweeps run on it.
* ``scenario-b``    - k1=2, k2=1 with the tuple (7, 2, 8, 3), which makes all
  four convolution kernels (including both inner coefficient sums) active.

Geometry (disc radii, time-sector radii, coverings, sweep ladders) is tuned
per scenario so every measured decay exponent stays comfortably inside
floating-point range across the ladder while remaining deep in the
exponential regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ConfigError
from .problem import ComplexPoly, EpsPoly, IndexTuple, ProblemSpec, ProfileAmplitude


@dataclass
class RunGeometry:
    """Evaluation geometry for the Laplace/asymptotics stages."""

    rho1: float
    rho2: float
    nu1: float
    nu2: float
    # bounded time sectors: bisecting direction, half opening, radius
    t1_dir: float
    t2_dir: float
    t_half_opening: float
    r_t1: float
    r_t2: float
    beta_prime: float
    # eps sector (covering sector 0) half opening
    eps_half_opening: float
    covering_sectors: int
    covering_overlap_deg: float
    sweep_eps_max: float
    sweep_eps_min: float
    sweep_samples: int = 12
    n_points: int = 8


def _const_amp(value: float, sup: float | None = None) -> ProfileAmplitude:
    return ProfileAmplitude(ComplexPoly([value]), sup if sup is not None else abs(value) * 1.0001)


def paper_remark_spec() -> ProblemSpec:
    # The published example instance: one irregular term with shifts (2, 1).
    # Its leading operator carries no explicit R factor, so R = 1; the
    # degree chain then forces constant R_l and P_j here.
    amp = _const_amp(0.02)
    return ProblemSpec(
        k1=3, k2=2, delta1=2, delta2=3, delta0=12,
        eps0=0.1, beta=1.0, mu=3.0,
        index_set=[IndexTuple(6, 1, 7, 2, 11, amp)],
        q_poly=ComplexPoly([1, 0, 0, 0, 1]),      # X^4 + 1
        r_poly=ComplexPoly([1]),
        r_l_polys=[ComplexPoly([2])],
        p1=EpsPoly([[0.15]]),
        p2=EpsPoly([[0.15]]),
        n1_set=[1], n2_set=[1],
        forcing_profiles={(1, 1): _const_amp(0.05)},
        name="paper-remark",
    )


def scenario_a_spec() -> ProblemSpec:
    return ProblemSpec(
        k1=2, k2=1, delta1=1, delta2=2, delta0=4,
        eps0=0.1, beta=1.0, mu=3.0,
        index_set=[],
        q_poly=ComplexPoly([1, 0, 0, 0, 1]),
        r_poly=ComplexPoly([1]),
        r_l_polys=[],
        p1=EpsPoly([[0.25]]),
        p2=EpsPoly([[0.25]]),
        n1_set=[1], n2_set=[1],
        forcing_profiles={(1, 1): _const_amp(0.05)},
        name="scenario-a",
    )


def scenario_b_spec() -> ProblemSpec:
    # amplitude with genuine eps dependence to exercise that code path
    amp = ProfileAmplitude(ComplexPoly([0.02, 0.1]), sup_bound=0.031)
    return ProblemSpec(
        k1=2, k2=1, delta1=3, delta2=6, delta0=12,
        eps0=0.1, beta=1.0, mu=3.0,
        index_set=[IndexTuple(7, 2, 8, 3, 11, amp)],
        q_poly=ComplexPoly([1, 0, 0, 0, 1]),
        r_poly=ComplexPoly([1]),
        r_l_polys=[ComplexPoly([1])],
        p1=EpsPoly([[0.2]]),
        p2=EpsPoly([[0.2], [0.05]]),               # 0.2 + 0.05 eps... constant in X
        n1_set=[1], n2_set=[1, 2],
        forcing_profiles={(1, 1): _const_amp(0.04), (1, 2): _const_amp(0.02)},
        name="scenario-b",
    )


def _geometry_for(name: str, spec: ProblemSpec) -> RunGeometry:
    # Directions are assigned later (they depend on the argument hull); the
    # time sectors sit so that eps*t is centered on the chosen rays when the
    # covering's first sector is centered at 0.
    if name == "scenario-a":
        d = math.pi / spec.delta0       # d1 = d2 = pi/Delta0 makes d_{1,2} = pi
        return RunGeometry(
            rho1=0.6, rho2=0.6, nu1=1.0, nu2=1.0,
            t1_dir=d, t2_dir=d, t_half_opening=math.radians(4.0),
            r_t1=4.1, r_t2=0.84,
            beta_prime=0.5,
            eps_half_opening=math.radians(17.0),
            covering_sectors=12, covering_overlap_deg=4.0,
            sweep_eps_max=spec.eps0 / 8.0, sweep_eps_min=spec.eps0 / 40.0,
        )
    if name == "paper-remark":
        d = math.pi / spec.delta0
        return RunGeometry(
            rho1=0.6, rho2=0.6, nu1=1.0, nu2=1.0,
            t1_dir=d, t2_dir=d, t_half_opening=math.radians(3.0),
            r_t1=1.5, r_t2=1.0,
            beta_prime=0.5,
            eps_half_opening=math.radians(10.0),
            covering_sectors=16, covering_overlap_deg=3.0,
            sweep_eps_max=spec.eps0 / 8.0, sweep_eps_min=spec.eps0 / 40.0,
        )
    if name == "scenario-b":
        d = math.pi / spec.delta0
        return RunGeometry(
            rho1=0.55, rho2=0.55, nu1=1.0, nu2=1.0,
            t1_dir=d, t2_dir=d, t_half_opening=math.radians(4.0),
            r_t1=4.1, r_t2=0.84,
            beta_prime=0.5,
            eps_half_opening=math.radians(17.0),
            covering_sectors=12, covering_overlap_deg=4.0,
            sweep_eps_max=spec.eps0 / 8.0, sweep_eps_min=spec.eps0 / 40.0,
        )
    raise ConfigError(f"unknown scenario {name!r}")


BUILTIN = {
    "paper-remark": paper_remark_spec,
    "scenario-a": scenario_a_spec,
    "scenario-b": scenario_b_spec,
}


def builtin_scenario(name: str):
    """(ProblemSpec, RunGeometry) for a named builtin."""
    if name not in BUILTIN:
        raise ConfigError(f"unknown scenario {name!r}; have {sorted(BUILTIN)}")
    spec = BUILTIN[name]()
    return spec, _geometry_for(name, spec)

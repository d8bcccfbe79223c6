"""Radial and angular bound-state eigenfunctions.

The radial profile is the closed-form product
    R(r) = N r^{-(D-1)/2} e^{-sqrt(m0^2-E^2) r} (1 - q e^{-alpha r})^delta
           * P_n^{(eps, 2 delta - 1)}(1 - 2 q e^{-alpha r})
whose reduced form g = r^{(D-1)/2} R solves the screened-barrier radial
equation and vanishes at the domain edge r = ln(q)/alpha (zero for q = 1,
negative for q < 1).  Normalization, node structure, and the ODE defect are
all formulated on that domain.  Profiles are constructible at any |E| < m0:
the Jacobi factor always carries exactly n sign changes, so node counting is
a property of the closed form, while the ODE-defect check is what singles
out residual-verified levels.

Angular factors are Gegenbauer-type Jacobi products normalized by
quadrature; the closed-form normalization constants are evaluated separately
for comparison reports only (their Gamma arguments disagree with quadrature
except in the lowest cases).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .errors import (
    InvalidParams,
    InvalidQuantumNumbers,
    PoleAtRadius,
    QuadratureFailure,
)
from .nu_core import NUProblem
from .potential import PotentialParams
from .spectrum import (
    EnergyLevel,
    QuantumState,
    derived_params,
    energy_residual,
    shape_parameter,
)

NODE_GRID_POINTS = 10_000
NODE_GRID_SPAN = (1e-4, 40.0)       # in alpha * (r - edge)
NODE_FLOOR = 1e-14                  # of peak, both sides of a sign change
NORM_REL_TOL = 1e-8
DEFECT_SPAN = (0.01, 20.0)          # in alpha * (r - edge)
DEFECT_POINTS = 1500
DEFECT_STEP_FRACTION = 0.003        # local 5-point step as a fraction of x


@dataclass(frozen=True)
class JacobiParams:
    """Degree and the two weight exponents of a Jacobi polynomial."""

    n: int
    a: float
    b: float

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 0:
            raise InvalidParams(f"degree must be an integer >= 0, got {self.n!r}")
        if not self.a > -1.0:
            raise InvalidParams(f"need a > -1 for an integrable weight, got {self.a!r}")
        if not self.b > -1.0:
            raise InvalidParams(f"need b > -1 for an integrable weight, got {self.b!r}")


def jacobi(p: JacobiParams, x: float) -> float:
    """P_n^{(a,b)}(x) by the ascending three-term recurrence.

    Stable for real non-integer parameters; the argument may lie outside
    [-1, 1] (needed by the experimental q < 0 profile, whose argument
    1 - 2q e^{-alpha r} exceeds 1).
    """
    a, b = p.a, p.b
    if p.n == 0:
        return 1.0
    prev = 1.0
    cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    for m in range(2, p.n + 1):
        s = 2.0 * m + a + b
        # denominators are positive for m >= 2 since a + b > -2
        c1 = 2.0 * m * (m + a + b) * (s - 2.0)
        c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b)
        c3 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * s
        cur, prev = (c2 * cur - c3 * prev) / c1, cur
    return cur


def jacobi_array(p: JacobiParams, x: np.ndarray) -> np.ndarray:
    """Vectorized jacobi over a numpy array of arguments."""
    a, b = p.a, p.b
    if p.n == 0:
        return np.ones_like(x)
    prev = np.ones_like(x)
    cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    for m in range(2, p.n + 1):
        s = 2.0 * m + a + b
        c1 = 2.0 * m * (m + a + b) * (s - 2.0)
        c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b)
        c3 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * s
        cur, prev = (c2 * cur - c3 * prev) / c1, cur
    return cur


@dataclass(frozen=True)
class RadialWavefunction:
    """A closed-form radial profile at a fixed energy.

    delta_exp follows the sign convention of the quantization condition:
    (q+a)/(2q) for q > 0 and (q-a)/(2q) for q < 0, unless built with
    branch="printed" which uses (q+a)/(2q) unconditionally.
    """

    state: QuantumState
    level: EnergyLevel
    eps: float              # 2 sqrt(m0^2 - E^2) / alpha, the Jacobi a-parameter
    delta_exp: float
    potential: PotentialParams
    norm: float = 1.0

    @property
    def experimental(self) -> bool:
        """True for q < 0, where the Jacobi argument leaves [-1, 1]."""
        return self.potential.q < 0.0

    @property
    def kappa(self) -> float:
        return 0.5 * self.eps * self.potential.alpha

    @property
    def jacobi_params(self) -> JacobiParams:
        return JacobiParams(self.state.n, self.eps, 2.0 * self.delta_exp - 1.0)


def radial_domain_edge(params) -> float:
    """Radius where the closed-form profile vanishes; 0 for q < 0."""
    if params.q > 0.0:
        return math.log(params.q) / params.alpha
    return 0.0


def build_radial(params, state, energy, branch="auto", normalize=True) -> RadialWavefunction:
    """Assemble the radial profile for any energy strictly inside the gap.

    Args:
        energy: a float or an EnergyLevel.
        branch: "auto" picks the delta_exp consistent with the sign of q;
            "printed" forces (q+a)/(2q).
        normalize: fix the constant by radial_normalize; otherwise norm=1.
    """
    p = params
    if isinstance(energy, EnergyLevel):
        level = energy
        e = level.energy
    else:
        e = float(energy)
        level = None
    if not abs(e) < p.m0:
        raise InvalidParams(f"bound profile needs |E| < m0, got {e!r}")
    if branch not in ("auto", "printed"):
        raise InvalidParams(f"branch must be 'auto' or 'printed', got {branch!r}")
    a = shape_parameter(params, state.centrifugal())
    if branch == "printed" or p.q > 0.0:
        delta_exp = (p.q + a) / (2.0 * p.q)
    else:
        delta_exp = (p.q - a) / (2.0 * p.q)
    if level is None:
        level = EnergyLevel(
            energy=e,
            branch="particle" if e >= 0.0 else "antiparticle",
            residual=energy_residual(params, state, e),
            state=state,
        )
    eps = 2.0 * math.sqrt(p.m0**2 - e**2) / p.alpha
    w = RadialWavefunction(
        state=state,
        level=level,
        eps=eps,
        delta_exp=delta_exp,
        potential=params,
    )
    if normalize:
        w = RadialWavefunction(
            state=state,
            level=level,
            eps=eps,
            delta_exp=delta_exp,
            potential=params,
            norm=radial_normalize(w),
        )
    return w


def _base_factor(params, r):
    return 1.0 - params.q * np.exp(-params.alpha * np.asarray(r, dtype=float))


def _reduced_raw(w: RadialWavefunction, x):
    """Unnormalized g at distance x above the domain edge, vectorized."""
    p = w.potential
    x = np.asarray(x, dtype=float)
    edge = radial_domain_edge(p)
    r = x + edge
    base = _base_factor(p, r)
    z = 1.0 - 2.0 * p.q * np.exp(-p.alpha * r)
    poly = jacobi_array(w.jacobi_params, z)
    return np.exp(-w.kappa * r) * base**w.delta_exp * poly


def radial_eval(w: RadialWavefunction, r: float) -> float:
    """R(r) with the stored normalization.

    Raises:
        PoleAtRadius: at or below the base-factor zero (q > 1 only).
    """
    p = w.potential
    if not (r > 0.0) or not math.isfinite(r):
        raise InvalidParams(f"r must be positive and finite, got {r!r}")
    base = 1.0 - p.q * math.exp(-p.alpha * r)
    if p.q > 0.0 and base <= 1e-12:
        raise PoleAtRadius(r, p.q, p.alpha)
    dim = w.state.dim
    z = 1.0 - 2.0 * p.q * math.exp(-p.alpha * r)
    val = (
        math.exp(-w.kappa * r)
        * base**w.delta_exp
        * jacobi(w.jacobi_params, z)
    )
    return w.norm * val * r ** (-(dim - 1) / 2.0)


def reduced_eval(w: RadialWavefunction, r: float) -> float:
    """g(r) = r^{(D-1)/2} R(r); vanishes at the domain edge."""
    p = w.potential
    edge = radial_domain_edge(p)
    if not r > edge:
        raise InvalidParams(f"reduced profile is defined for r > {edge:.6g}")
    return w.norm * float(_reduced_raw(w, r - edge))


def _peak_and_cutoff(w: RadialWavefunction):
    """Peak location of |g| and an upper cutoff where the tail < 1e-16 peak."""
    p = w.potential
    kappa = max(w.kappa, 1e-12)
    probe_top = 60.0 * max(1.0 / kappa, 1.0 / p.alpha)
    x = np.geomspace(1e-6 / p.alpha, probe_top, 4000)
    g = np.abs(_reduced_raw(w, x))
    x_peak = x[int(np.argmax(g))]
    return x_peak, x_peak + 37.0 / kappa


def radial_normalize(w: RadialWavefunction) -> float:
    """N with integral of g^2 over the domain equal to one.

    Adaptive quadrature from the domain edge up to a cutoff where the
    envelope is below 1e-16 of the peak; relative accuracy 1e-8.

    Raises:
        QuadratureFailure: reported error above the tolerance.
    """
    _, cutoff = _peak_and_cutoff(w)

    def f(x):
        return float(_reduced_raw(w, x)) ** 2

    val, err = integrate.quad(f, 0.0, cutoff, epsabs=0.0, epsrel=1e-10, limit=400)
    if not (val > 0.0 and math.isfinite(val)):
        raise QuadratureFailure(f"norm integral came out {val!r}")
    if err > NORM_REL_TOL * val:
        raise QuadratureFailure(
            f"norm integral error {err:.3g} exceeds {NORM_REL_TOL:g} relative"
        )
    return 1.0 / math.sqrt(val)


def default_node_grid(w: RadialWavefunction) -> np.ndarray:
    """Log-spaced radii covering the profile above its domain edge."""
    p = w.potential
    edge = radial_domain_edge(p)
    lo, hi = NODE_GRID_SPAN
    return edge + np.geomspace(lo, hi, NODE_GRID_POINTS) / p.alpha


def node_count(w: RadialWavefunction, grid=None) -> int:
    """Strict sign changes of the profile over the grid.

    Both sides of a change must exceed 1e-14 of the peak magnitude, so
    grid points landing on a zero are not double counted.
    """
    p = w.potential
    if grid is None:
        grid = default_node_grid(w)
    edge = radial_domain_edge(p)
    g = _reduced_raw(w, np.asarray(grid) - edge)
    floor = NODE_FLOOR * float(np.max(np.abs(g)))
    live = np.abs(g) > floor
    signs = np.sign(g[live])
    return int(np.count_nonzero(signs[:-1] != signs[1:]))


def _approx_w_term(params, spec, energy, x):
    """Effective W(x) of the screened-barrier radial equation, g'' = W g."""
    p = params
    kap2 = p.m0**2 - energy**2
    c1 = 2.0 * (p.m0 * p.s0 + energy * p.v0) / p.q
    c2 = (p.s0**2 - p.v0**2) / p.q**2
    c3 = spec.factor * p.alpha**2 / (4.0 * p.q)
    ex = np.exp(-p.alpha * x)
    u = ex / (1.0 - ex)
    return kap2 - c1 * u + c2 * u * u + c3 * (u * u + u)


def ode_defect(w: RadialWavefunction) -> float:
    """Max |g'' - W g| / max |g| over the mid-range of the domain.

    Local 5-point stencils with step proportional to the distance from the
    edge keep the finite-difference error uniform despite the fractional
    edge exponent.  Small only when the energy is an actual eigenvalue.
    """
    p = w.potential
    if p.q <= 0.0:
        raise InvalidParams("defect check applies to the q > 0 domain")
    spec = w.state.centrifugal()
    e = w.level.energy
    lo, hi = DEFECT_SPAN
    x = np.geomspace(lo, hi, DEFECT_POINTS) / p.alpha
    h = DEFECT_STEP_FRACTION * x
    g = [_reduced_raw(w, x + k * h) for k in (-2.0, -1.0, 0.0, 1.0, 2.0)]
    d2 = (-g[0] + 16.0 * g[1] - 30.0 * g[2] + 16.0 * g[3] - g[4]) / (12.0 * h * h)
    defect = d2 - _approx_w_term(p, spec, e, x) * g[2]
    return float(np.max(np.abs(defect)) / np.max(np.abs(g[2])))


def _gegenbauer_profile(n, m, sin_pow, theta):
    th = np.asarray(theta, dtype=float)
    return np.sin(th) ** sin_pow * jacobi_array(JacobiParams(n, m, m), np.cos(th))


@lru_cache(maxsize=256)
def _angular_norm(n: int, two_m: int, sin_pow: int, measure_pow: int) -> float:
    m = two_m / 2.0

    def f(th):
        return float(
            _gegenbauer_profile(n, m, sin_pow, th) ** 2 * math.sin(th) ** measure_pow
        )

    val, err = integrate.quad(f, 0.0, math.pi, epsabs=0.0, epsrel=1e-12, limit=200)
    if err > 1e-10 * val:
        raise QuadratureFailure(f"angular norm error {err:.3g} too large")
    return 1.0 / math.sqrt(val)


def _check_angular_numbers(l_hi, l_lo):
    for name, v in (("upper", l_hi), ("lower", l_lo)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise InvalidQuantumNumbers(f"{name} quantum number must be an integer >= 0")
    if l_hi < l_lo:
        raise InvalidQuantumNumbers(
            f"angular chain must be nondecreasing, got {l_hi} < {l_lo}"
        )


def angular_factor(j: int, l_j: int, l_prev: int, theta: float) -> float:
    """Polar factor for an intermediate axis j >= 2.

    (sin theta)^{l_prev} P_{n_j}^{(m,m)}(cos theta), m = l_prev + (j-2)/2,
    n_j = l_j - l_prev, normalized under the measure (sin theta)^{j-1}.
    """
    if not isinstance(j, int) or j < 2:
        raise InvalidQuantumNumbers(f"axis index must be an integer >= 2, got {j!r}")
    _check_angular_numbers(l_j, l_prev)
    n = l_j - l_prev
    norm = _angular_norm(n, 2 * l_prev + (j - 2), l_prev, j - 1)
    m = l_prev + (j - 2) / 2.0
    return norm * float(_gegenbauer_profile(n, m, l_prev, theta))


def angular_factor_last(dim: int, l: int, l_prev: int, theta: float) -> float:
    """Polar factor for the last axis, m' = l_prev + (D-3)/2."""
    if not isinstance(dim, int) or dim < 3:
        raise InvalidQuantumNumbers(f"need dim >= 3 for a polar axis, got {dim!r}")
    _check_angular_numbers(l, l_prev)
    n = l - l_prev
    norm = _angular_norm(n, 2 * l_prev + (dim - 3), l_prev, dim - 2)
    m = l_prev + (dim - 3) / 2.0
    return norm * float(_gegenbauer_profile(n, m, l_prev, theta))


def azimuthal(l1: int, theta1: float, sign: int = 1) -> complex:
    """exp(+/- i l1 theta1) / sqrt(2 pi)."""
    if not isinstance(l1, int) or isinstance(l1, bool) or l1 < 0:
        raise InvalidQuantumNumbers(f"l1 must be an integer >= 0, got {l1!r}")
    return cmath.exp(1j * sign * l1 * theta1) / math.sqrt(2.0 * math.pi)


def printed_angular_norm(j: int, l_j: int, l_prev: int) -> float:
    """Closed-form constant as printed; report-only, disagrees with
    quadrature except in the lowest cases."""
    n = l_j - l_prev
    try:
        return math.sqrt(
            (2 * l_j + j - 1) * math.factorial(n)
            / (2.0 * math.gamma(l_j + l_prev + j - 2))
        )
    except ValueError:
        return math.nan


def printed_angular_norm_last(dim: int, l: int, l_prev: int) -> float:
    """Closed-form constant for the last axis as printed; report-only."""
    n = l - l_prev
    mp = l_prev + (dim - 3) / 2.0
    try:
        return math.sqrt(
            (2 * n + 2 * mp + 1) * math.factorial(n) / (2.0 * math.gamma(n + 2 * mp))
        )
    except ValueError:
        return math.nan


def total_wavefunction(w: RadialWavefunction, angles, r: float, l_chain=None) -> complex:
    """Product of the radial profile and the full angular chain.

    Args:
        angles: D-1 angles, azimuthal first, the last polar axis last.
        l_chain: quantum numbers (l_1, ..., l_{D-2}), nondecreasing and
            bounded by state.l; defaults to the stretched chain (l, ..., l).
            For D = 2 the chain is empty and l_1 = state.l.
    """
    p = w.potential
    if p.q != 1.0:
        raise InvalidParams("the total profile is defined for q = 1 only")
    dim = w.state.dim
    l = w.state.l
    if dim < 2:
        raise InvalidParams("the angular chain needs dim >= 2")
    angles = tuple(float(t) for t in angles)
    if len(angles) != dim - 1:
        raise InvalidParams(f"need {dim - 1} angles for dim={dim}, got {len(angles)}")
    if l_chain is None:
        l_chain = (l,) * (dim - 2)
    l_chain = tuple(l_chain)
    if len(l_chain) != dim - 2:
        raise InvalidQuantumNumbers(
            f"need {dim - 2} chain entries for dim={dim}, got {len(l_chain)}"
        )
    full = l_chain + (l,)
    for hi, lo in zip(full[1:], full[:-1]):
        _check_angular_numbers(hi, lo)
    l1 = l_chain[0] if l_chain else l
    out = azimuthal(l1, angles[0])
    for j in range(2, dim - 1):
        out *= angular_factor(j, l_chain[j - 1], l_chain[j - 2], angles[j - 1])
    if dim >= 3:
        out *= angular_factor_last(dim, l, l_chain[-1], angles[-1])
    return out * radial_eval(w, r)


def radial_nu_problem(params, state, energy) -> NUProblem:
    """Hypergeometric-type coefficients of the radial equation in s = q e^{-alpha r}."""
    d = derived_params(params, state, energy)
    eps2 = d.eps**2
    return NUProblem(
        sigma=(0.0, 1.0, -1.0),
        tau_tilde=(1.0, -1.0),
        sigma_tilde=(
            -eps2,
            2.0 * eps2 + d.beta1 - d.gamma,
            -(eps2 + d.beta1 + d.beta2),
        ),
    )


def angular_nu_problem(j: int, l_j: int, l_prev: int) -> NUProblem:
    """Coefficients for an intermediate polar axis in s = cos theta."""
    _check_angular_numbers(l_j, l_prev)
    lam_j = l_j * (l_j + j - 1)
    lam_prev = l_prev * (l_prev + j - 2)
    return NUProblem(
        sigma=(1.0, 0.0, -1.0),
        tau_tilde=(0.0, -float(j)),
        sigma_tilde=(float(lam_j - lam_prev), 0.0, -float(lam_j)),
    )


def angular_nu_problem_last(dim: int, l: int, l_prev: int) -> NUProblem:
    """Coefficients for the last polar axis in s = cos theta."""
    _check_angular_numbers(l, l_prev)
    nu = l * (l + dim - 2)
    lam = l_prev * (l_prev + dim - 3)
    return NUProblem(
        sigma=(1.0, 0.0, -1.0),
        tau_tilde=(0.0, -float(dim - 1)),
        sigma_tilde=(float(nu - lam), 0.0, -float(nu)),
    )

"""Closed-form bound-state energies of the radial problem.

The transcendental quantization condition for the approximated radial
equation is

    sqrt(m0^2 - E^2) = [2 q (m0 s0 + E v0) + s0^2 - v0^2] / (2 q^2 alpha (n + delta))
                       - alpha (n + delta) / 2

with delta = (1 + a/q)/2 for q > 0 and (1 - a/q)/2 for q < 0, where
a = sqrt(q^2 + 4 (s0^2 - v0^2)/alpha^2 + q (D+2l-1)(D+2l-3)).  Its residual
is the source of truth here: the explicit closed forms below arise from
squaring it, which manufactures extra sign-flipped roots.  Every closed-form
candidate is therefore back-substituted, and only candidates whose residual
is below RESIDUAL_TOL * m0 count as actual levels.  The raw formula values
(including the squaring artifacts) stay available through the *_candidates
functions and energy_principal, because published tabulations quote them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConstraintViolated,
    DegenerateLevelSpacing,
    InvalidParams,
    NonRealA,
    NoRoot,
)
from .potential import CentrifugalSpec, PotentialParams

# acceptance threshold for back-substituted residuals, in units of m0
RESIDUAL_TOL = 1e-9
# residual-scan grid: point count and open-window margin (units of m0)
SCAN_POINTS = 4096
SCAN_MARGIN = 1e-8
# bisection stops when the bracket is narrower than this (units of m0)
BISECT_TOL = 1e-12


@dataclass(frozen=True)
class QuantumState:
    """Radial excitation n with orbital quantum number l in dimension dim."""

    n: int
    l: int = 0
    dim: int = 3

    def __post_init__(self):
        for name in ("n", "l"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise InvalidParams(f"{name} must be an integer >= 0, got {value!r}")
        if not isinstance(self.dim, int) or isinstance(self.dim, bool) or self.dim < 1:
            raise InvalidParams(f"dim must be an integer >= 1, got {self.dim!r}")

    def centrifugal(self):
        return CentrifugalSpec(self.dim, self.l)


@dataclass(frozen=True)
class DerivedParams:
    """Dimensionless combinations entering the quantization condition."""

    eps: float
    beta1: float
    beta2: float
    gamma: float
    a: float
    delta: float
    kappa: float
    eta: float


@dataclass(frozen=True)
class EnergyLevel:
    """One residual-verified eigenvalue."""

    energy: float
    branch: str  # "particle" for E >= 0, "antiparticle" for E < 0
    residual: float
    state: QuantumState


@dataclass(frozen=True)
class CandidateEnergy:
    """One raw root of the squared (explicit) energy formula.

    kappa_sign +1 marks the inner sign consistent with the delta rule for
    the sign of q; outer_sign is the +/- in front of the square root.
    accepted is True only when back-substitution into the unsquared
    condition leaves a residual below RESIDUAL_TOL * m0.
    """

    energy: float
    kappa: float
    kappa_sign: int
    outer_sign: int
    residual: float
    accepted: bool
    reason: str


@dataclass(frozen=True)
class LevelCapacity:
    """Printed capacity bound: highest n (None if no level fits) + existence."""

    n_max: int | None
    existence: bool
    bound: float | None

    @property
    def count(self) -> int:
        """Number of levels the bound admits (n = 0 .. n_max)."""
        return 0 if self.n_max is None else self.n_max + 1


def shape_parameter(params, spec):
    """a = sqrt(q^2 + 4(s0^2 - v0^2)/alpha^2 + q (D+2l-1)(D+2l-3)).

    Raises:
        NonRealA: the radicand is negative (no real bound-state family).
    """
    p = params
    radicand = p.q * p.q + 4.0 * (p.s0**2 - p.v0**2) / p.alpha**2 + p.q * spec.factor
    if radicand < 0.0:
        raise NonRealA(radicand)
    return math.sqrt(radicand)


def _delta_of(params, spec):
    a = shape_parameter(params, spec)
    if params.q > 0:
        return a, 0.5 * (1.0 + a / params.q)
    return a, 0.5 * (1.0 - a / params.q)


def derived_params(params, state, energy):
    """All dimensionless combinations at a trial energy.

    Args:
        params: PotentialParams.
        state: QuantumState.
        energy: trial energy with |energy| <= m0.

    Raises:
        InvalidParams: |energy| > m0 (eps would be imaginary).
        NonRealA: shape parameter a not real.
    """
    p = params
    if abs(energy) > p.m0:
        raise InvalidParams(f"|energy| must be <= m0, got {energy!r}")
    spec = state.centrifugal()
    a, delta = _delta_of(p, spec)
    nd = state.n + delta
    if abs(nd) < 1e-12:
        raise DegenerateLevelSpacing(f"n + delta = {nd:.3e} is too close to zero")
    alpha, q = p.alpha, p.q
    eps = math.sqrt(max(p.m0**2 - energy**2, 0.0)) / alpha
    beta1 = 2.0 * (p.m0 * p.s0 + energy * p.v0) / (alpha**2 * q)
    beta2 = (p.s0**2 - p.v0**2) / (alpha**2 * q**2)
    gamma = spec.factor / (4.0 * q)
    kappa = 2.0 * q * alpha * nd
    eta = (4.0 * (p.v0**2 - p.s0**2) + kappa**2 - 8.0 * q * p.m0 * p.s0) / (
        4.0 * p.v0**2 + kappa**2
    )
    # algebraic identity linking beta2 to delta; failure means a coding bug
    check = abs(beta2 - (delta * delta - delta - gamma))
    if check > 1e-12 * max(1.0, abs(beta2), abs(gamma), delta * delta):
        raise AssertionError(f"beta2 identity violated by {check:.3e}")
    return DerivedParams(
        eps=eps, beta1=beta1, beta2=beta2, gamma=gamma,
        a=a, delta=delta, kappa=kappa, eta=eta,
    )


def _rhs_coeffs(params, state):
    """RHS of the quantization condition as A + B * E (it is linear in E).

    Raises NonRealA / DegenerateLevelSpacing like derived_params.
    """
    p = params
    a, delta = _delta_of(p, state.centrifugal())
    nd = state.n + delta
    if abs(nd) < 1e-12:
        raise DegenerateLevelSpacing(f"n + delta = {nd:.3e} is too close to zero")
    denom = 2.0 * p.q**2 * p.alpha * nd
    const = (2.0 * p.q * p.m0 * p.s0 + p.s0**2 - p.v0**2) / denom - 0.5 * p.alpha * nd
    slope = 2.0 * p.q * p.v0 / denom
    return const, slope


def energy_rhs(params, state, energy):
    """Right-hand side of the quantization condition at a trial energy."""
    const, slope = _rhs_coeffs(params, state)
    return const + slope * energy


def energy_residual(params, state, energy):
    """sqrt(m0^2 - E^2) minus the RHS of the quantization condition.

    A true level has residual 0 AND nonnegative RHS; roots of the squared
    closed form with negative RHS are artifacts.
    """
    p = params
    if abs(energy) > p.m0:
        raise InvalidParams(f"|energy| must be <= m0, got {energy!r}")
    return math.sqrt(max(p.m0**2 - energy**2, 0.0)) - energy_rhs(params, state, energy)


def _bisect(f, lo, hi, flo, tol):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (flo > 0) == (fmid > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_levels(params, state, n_grid=SCAN_POINTS):
    """Residual-verified eigenvalues from a dense scan, ascending.

    Scans the open window (-m0, m0) on n_grid points, brackets every sign
    change of the residual, refines each bracket by bisection to
    BISECT_TOL * m0, and keeps roots whose RHS is nonnegative.  An empty
    list means no bound state (including the non-real-a case).
    """
    p = params
    try:
        const, slope = _rhs_coeffs(params, state)
    except NonRealA:
        return []
    m0 = p.m0
    grid = np.linspace(-m0 + SCAN_MARGIN * m0, m0 - SCAN_MARGIN * m0, n_grid)
    res = np.sqrt(np.maximum(m0 * m0 - grid * grid, 0.0)) - (const + slope * grid)

    def f(e):
        return math.sqrt(max(m0 * m0 - e * e, 0.0)) - (const + slope * e)

    levels = []
    sign = np.sign(res)
    hits = np.nonzero(sign == 0.0)[0]
    flips = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    roots = [grid[i] for i in hits]
    for i in flips:
        roots.append(_bisect(f, grid[i], grid[i + 1], res[i], BISECT_TOL * m0))
    roots.sort()
    for root in roots:
        if levels and abs(root - levels[-1].energy) < 1e-10 * m0:
            continue
        if const + slope * root < -RESIDUAL_TOL * m0:
            continue  # artifact guard; a genuine root has RHS = sqrt >= 0
        levels.append(
            EnergyLevel(
                energy=root,
                branch="particle" if root >= 0 else "antiparticle",
                residual=f(root),
                state=state,
            )
        )
    return levels


def _candidates_from_kappa(params, state, kappa, kappa_sign):
    """Both outer-sign roots of the squared equation for one kappa."""
    p = params
    out = []
    denom = 4.0 * p.v0**2 + kappa * kappa
    if denom <= 0.0:
        for outer in (1, -1):
            out.append(
                CandidateEnergy(
                    energy=math.nan, kappa=kappa, kappa_sign=kappa_sign,
                    outer_sign=outer, residual=math.nan, accepted=False,
                    reason="degenerate: 4 v0^2 + kappa^2 = 0",
                )
            )
        return out
    eta = (4.0 * (p.v0**2 - p.s0**2) + kappa**2 - 8.0 * p.q * p.m0 * p.s0) / denom
    disc = p.m0**2 / denom - (eta / (4.0 * p.q)) ** 2
    if disc < 0.0:
        reason = (
            "constraint 16 q^2 m0^2 >= eta^2 (4 v0^2 + kappa^2) fails: "
            f"{16 * p.q**2 * p.m0**2:.6g} < {eta**2 * denom:.6g}"
        )
        for outer in (1, -1):
            out.append(
                CandidateEnergy(
                    energy=math.nan, kappa=kappa, kappa_sign=kappa_sign,
                    outer_sign=outer, residual=math.nan, accepted=False,
                    reason=reason,
                )
            )
        return out
    root = math.sqrt(disc)
    for outer in (1, -1):
        energy = eta * p.v0 / (2.0 * p.q) + outer * kappa * root
        if abs(energy) >= p.m0:
            out.append(
                CandidateEnergy(
                    energy=energy, kappa=kappa, kappa_sign=kappa_sign,
                    outer_sign=outer, residual=math.nan, accepted=False,
                    reason=f"|E| = {abs(energy):.6g} outside the bound window (< m0)",
                )
            )
            continue
        residual = energy_residual(params, state, energy)
        accepted = abs(residual) <= RESIDUAL_TOL * p.m0
        out.append(
            CandidateEnergy(
                energy=energy, kappa=kappa, kappa_sign=kappa_sign,
                outer_sign=outer, residual=residual, accepted=accepted,
                reason="" if accepted else "back-substitution residual too large "
                "(root of the squared equation only)",
            )
        )
    return out


def explicit_candidates(params, state):
    """All four (inner sign, outer sign) roots of the explicit closed form.

    Raises:
        NonRealA: the shape parameter a is not real (no real formula at all).
    """
    p = params
    a, _ = _delta_of(p, state.centrifugal())
    base = p.q * p.alpha * (2 * state.n + 1)
    out = []
    seen = set()
    for kappa_sign in (1, -1):
        kappa = base + kappa_sign * math.copysign(p.alpha * a, p.q)
        key = round(kappa, 15)
        if key in seen:
            continue  # a = 0 collapses the two inner signs
        seen.add(key)
        out.extend(_candidates_from_kappa(params, state, kappa, kappa_sign))
    return out


def _accepted_levels(params, state, candidates):
    levels = []
    for cand in sorted(
        (c for c in candidates if c.accepted), key=lambda c: c.energy
    ):
        if levels and abs(cand.energy - levels[-1].energy) <= 1e-12 * params.m0:
            continue
        levels.append(
            EnergyLevel(
                energy=cand.energy,
                branch="particle" if cand.energy >= 0 else "antiparticle",
                residual=cand.residual,
                state=state,
            )
        )
    return levels


def _a_constraint_details(params, spec):
    lhs = (
        params.q**2 * params.alpha**2
        + params.q * params.alpha**2 * spec.factor
        + 4.0 * params.s0**2
    )
    rhs = 4.0 * params.v0**2
    return lhs, rhs


def energy_explicit(params, state):
    """Residual-verified levels from the explicit (squared) closed form.

    Matches solve_levels to RESIDUAL_TOL * m0 whenever it returns anything.

    Raises:
        ConstraintViolated: the shape parameter is not real, or the
            delta-consistent candidate has no real eigenvalue.
    """
    spec = state.centrifugal()
    try:
        candidates = explicit_candidates(params, state)
    except NonRealA:
        lhs, rhs = _a_constraint_details(params, spec)
        raise ConstraintViolated(
            "real shape parameter: q^2 a^2 + q a^2 (D+2l-1)(D+2l-3) + 4 s0^2"
            " >= 4 v0^2",
            lhs,
            rhs,
        )
    principal = [c for c in candidates if c.kappa_sign == 1]
    if principal and all(math.isnan(c.energy) for c in principal):
        p = params
        kappa = principal[0].kappa
        denom = 4.0 * p.v0**2 + kappa**2
        eta = (4.0 * (p.v0**2 - p.s0**2) + kappa**2 - 8.0 * p.q * p.m0 * p.s0) / denom
        raise ConstraintViolated(
            "16 q^2 m0^2 >= eta^2 (4 v0^2 + kappa^2)",
            16.0 * p.q**2 * p.m0**2,
            eta**2 * denom,
        )
    return _accepted_levels(params, state, candidates)


def energy_principal(params, state):
    """The as-published closed-form value: delta-consistent kappa, outer +.

    No residual filtering: for some parameters this is a root of the squared
    equation only (check energy_residual before trusting it as a level).

    Raises:
        NonRealA / ConstraintViolated: the formula has no real value.
    """
    p = params
    a, _ = _delta_of(p, state.centrifugal())
    kappa = p.q * p.alpha * (2 * state.n + 1) + math.copysign(p.alpha * a, p.q)
    cands = _candidates_from_kappa(params, state, kappa, 1)
    plus = next(c for c in cands if c.outer_sign == 1)
    if math.isnan(plus.energy):
        denom = 4.0 * p.v0**2 + kappa**2
        eta = (4.0 * (p.v0**2 - p.s0**2) + kappa**2 - 8.0 * p.q * p.m0 * p.s0) / denom
        raise ConstraintViolated(
            "16 q^2 m0^2 >= eta^2 (4 v0^2 + kappa^2)",
            16.0 * p.q**2 * p.m0**2,
            eta**2 * denom,
        )
    return plus.energy


def pure_vector_candidates(params, state):
    """Raw roots of the pure-vector specialization (s0 = 0 closed form)."""
    p = params
    if p.s0 != 0:
        raise InvalidParams("pure-vector form needs s0 = 0")
    spec = state.centrifugal()
    radicand = p.q**2 * p.alpha**2 + p.q * p.alpha**2 * spec.factor - 4.0 * p.v0**2
    if radicand < 0.0:
        raise ConstraintViolated(
            "q^2 a^2 + q a^2 (D+2l-1)(D+2l-3) >= 4 v0^2",
            p.q**2 * p.alpha**2 + p.q * p.alpha**2 * spec.factor,
            4.0 * p.v0**2,
        )
    inner = math.sqrt(radicand)  # equals alpha * a at s0 = 0
    base = p.q * p.alpha * (2 * state.n + 1)
    out = []
    seen = set()
    for kappa_sign in (1, -1):
        kappa = base + kappa_sign * math.copysign(inner, p.q)
        key = round(kappa, 15)
        if key in seen:
            continue
        seen.add(key)
        denom = 4.0 * p.v0**2 + kappa**2
        disc = p.m0**2 / denom - 1.0 / (16.0 * p.q**2)
        if disc < 0.0:
            for outer in (1, -1):
                out.append(
                    CandidateEnergy(
                        energy=math.nan, kappa=kappa, kappa_sign=kappa_sign,
                        outer_sign=outer, residual=math.nan, accepted=False,
                        reason="constraint 16 q^2 m0^2 >= 4 v0^2 + kappa^2 fails",
                    )
                )
            continue
        root = math.sqrt(disc)
        for outer in (1, -1):
            energy = p.v0 / (2.0 * p.q) + outer * kappa * root
            if abs(energy) >= p.m0:
                out.append(
                    CandidateEnergy(
                        energy=energy, kappa=kappa, kappa_sign=kappa_sign,
                        outer_sign=outer, residual=math.nan, accepted=False,
                        reason=f"|E| = {abs(energy):.6g} outside the bound window",
                    )
                )
                continue
            residual = energy_residual(params, state, energy)
            accepted = abs(residual) <= RESIDUAL_TOL * p.m0
            out.append(
                CandidateEnergy(
                    energy=energy, kappa=kappa, kappa_sign=kappa_sign,
                    outer_sign=outer, residual=residual, accepted=accepted,
                    reason="" if accepted else "back-substitution residual too "
                    "large (root of the squared equation only)",
                )
            )
    return out


def energy_pure_vector(params, state):
    """Residual-verified levels of the pure-vector closed form (s0 = 0)."""
    return _accepted_levels(params, state, pure_vector_candidates(params, state))


def pure_scalar_candidates(params, state):
    """Raw +/- pair of the pure-scalar specialization (v0 = 0 closed form).

    The unsquared condition has an E-independent RHS at v0 = 0, so the pair
    is either accepted or rejected as a whole.
    """
    p = params
    if p.v0 != 0:
        raise InvalidParams("pure-scalar form needs v0 = 0")
    spec = state.centrifugal()
    a = shape_parameter(p, spec)  # cannot fail for v0 = 0, q > 0
    base = p.q * p.alpha * (2 * state.n + 1)
    out = []
    seen = set()
    for kappa_sign in (1, -1):
        kay = base + kappa_sign * math.copysign(p.alpha * a, p.q)
        key = round(kay, 15)
        if key in seen:
            continue
        seen.add(key)
        first = kay * kay - 4.0 * p.s0**2
        second = (2.0 * p.s0 + 4.0 * p.q * p.m0) ** 2 - kay * kay
        if second < 0.0:
            for outer in (1, -1):
                out.append(
                    CandidateEnergy(
                        energy=math.nan, kappa=kay, kappa_sign=kappa_sign,
                        outer_sign=outer, residual=math.nan, accepted=False,
                        reason="constraint (2 s0 + 4 q m0)^2 >= kappa^2 fails",
                    )
                )
            continue
        if first < 0.0:
            for outer in (1, -1):
                out.append(
                    CandidateEnergy(
                        energy=math.nan, kappa=kay, kappa_sign=kappa_sign,
                        outer_sign=outer, residual=math.nan, accepted=False,
                        reason="constraint kappa^2 >= 4 s0^2 fails",
                    )
                )
            continue
        magnitude = math.sqrt(first * second) / abs(4.0 * p.q * kay)
        for outer in (1, -1):
            energy = outer * magnitude
            if abs(energy) >= p.m0:
                out.append(
                    CandidateEnergy(
                        energy=energy, kappa=kay, kappa_sign=kappa_sign,
                        outer_sign=outer, residual=math.nan, accepted=False,
                        reason=f"|E| = {abs(energy):.6g} outside the bound window",
                    )
                )
                continue
            residual = energy_residual(params, state, energy)
            accepted = abs(residual) <= RESIDUAL_TOL * p.m0
            out.append(
                CandidateEnergy(
                    energy=energy, kappa=kay, kappa_sign=kappa_sign,
                    outer_sign=outer, residual=residual, accepted=accepted,
                    reason="" if accepted else "back-substitution residual too "
                    "large (root of the squared equation only)",
                )
            )
    return out


def energy_pure_scalar(params, state):
    """Residual-verified +/- level pair of the pure-scalar closed form."""
    return _accepted_levels(params, state, pure_scalar_candidates(params, state))


def critical_coupling_energy(params, outer_sign=1):
    """Printed ground-state value at the critical coupling v0 = q alpha / 2.

    E0 = (v0 / 2q) [1 +/- sqrt(2 m0 q^2 / v0^2 - 1)], the one-dimensional
    n = 0 special case, kept exactly as printed (the radicand carries m0,
    not m0^2; the two agree at m0 = 1).
    """
    p = params
    target = p.q * p.alpha / 2.0
    if abs(p.v0 - target) > 1e-12 * max(1.0, abs(target)):
        raise InvalidParams(
            f"critical-coupling form needs v0 = q alpha / 2 = {target!r}, "
            f"got v0 = {p.v0!r}"
        )
    radicand = 2.0 * p.m0 * p.q**2 / p.v0**2 - 1.0
    if radicand < 0.0:
        raise ConstraintViolated("2 m0 q^2 >= v0^2", 2.0 * p.m0 * p.q**2, p.v0**2)
    return (p.v0 / (2.0 * p.q)) * (1.0 + outer_sign * math.sqrt(radicand))


def _equal_coupling_delta(params, state):
    p = params
    if p.q != 1:
        raise InvalidParams("equal-coupling form is stated for q = 1")
    if p.s0 != p.v0:
        raise InvalidParams("equal-coupling form needs s0 = v0")
    if state.dim + 2 * state.l < 2:
        raise InvalidParams(
            "equal-coupling delta = (D + 2l - 1)/2 needs D + 2l >= 2 "
            "(the shape parameter a = D + 2l - 2 must be nonnegative)"
        )
    return 0.5 * (state.dim + 2 * state.l - 1)


def energy_equal_coupling(params, state):
    """Level of the equal-coupling (s0 = v0, q = 1) transcendental condition.

    sqrt(m0^2 - E^2) = r0 v0 (m0 + E)/(n + delta) - (n + delta)/(2 r0) with
    delta = (D + 2l - 1)/2.  The two sides cross at most once; bisection on
    the bracketing interval refines the root.

    Raises:
        NoRoot: the condition has no solution in the open window (-m0, m0).
    """
    p = params
    delta = _equal_coupling_delta(params, state)
    nd = state.n + delta
    m0, r0 = p.m0, p.r0

    def f(e):
        rhs = r0 * p.v0 * (m0 + e) / nd - nd / (2.0 * r0)
        return math.sqrt(max(m0 * m0 - e * e, 0.0)) - rhs

    lo = -m0 + SCAN_MARGIN * m0
    hi = m0 - SCAN_MARGIN * m0
    grid = np.linspace(lo, hi, SCAN_POINTS)
    vals = np.sqrt(np.maximum(m0 * m0 - grid * grid, 0.0)) - (
        r0 * p.v0 * (m0 + grid) / nd - nd / (2.0 * r0)
    )
    sign = np.sign(vals)
    flips = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    if len(flips) == 0:
        raise NoRoot(
            "equal-coupling condition has no root in (-m0, m0); "
            "it requires v0 r0 / (n + delta) > (n + delta) / (4 m0 r0)"
        )
    i = flips[-1]
    root = _bisect(f, grid[i], grid[i + 1], vals[i], BISECT_TOL * m0)
    return EnergyLevel(
        energy=root,
        branch="particle" if root >= 0 else "antiparticle",
        residual=f(root),
        state=state,
    )


def nonrelativistic_limit(params, state):
    """Printed nonrelativistic binding energy of the equal-coupling level.

    E_nr = -(1 / 8 m0 alpha^2) [(4 m0 v0 - alpha^2 (n + delta)^2)/(n + delta)]^2
    """
    p = params
    delta = _equal_coupling_delta(params, state)
    nd = state.n + delta
    inner = (4.0 * p.m0 * p.v0 - p.alpha**2 * nd * nd) / nd
    return -(inner * inner) / (8.0 * p.m0 * p.alpha**2)


def relativistic_approx(params, state):
    """Printed approximation E ~ m0 + E_nr + 4 m0 (v0 r0 / (q (n+delta)))^4.

    Kept exactly as printed; the quartic term understates the true gap
    once v0 r0 / (n + delta) is not small.
    """
    p = params
    delta = _equal_coupling_delta(params, state)
    nd = state.n + delta
    quartic = 4.0 * p.m0 * (p.v0 * p.r0 / (p.q * nd)) ** 4
    return p.m0 + nonrelativistic_limit(params, state) + quartic


def woods_saxon_candidates(params, state):
    """Raw roots of the q = -1 (Woods-Saxon) closed form, both bracket choices.

    The printed bracket sqrt(2 a^2 + 4(s0^2 - v0^2) - a^2 (D+2l-2)^2)
    - a(2n+1) belongs to the delta_plus family, which contradicts the
    delta_minus rule used for q < 0 everywhere else; the delta_minus
    bracket -(a(2n+1) + sqrt(...)) is evaluated alongside it.  Acceptance is
    decided by the same q = -1 residual back-substitution either way.
    """
    p = params
    if p.q != -1:
        raise InvalidParams("Woods-Saxon form needs q = -1")
    edge = (state.dim + 2 * state.l - 2) ** 2
    radicand = 2.0 * p.alpha**2 + 4.0 * (p.s0**2 - p.v0**2) - p.alpha**2 * edge
    if radicand < 0.0:
        raise ConstraintViolated(
            "2 a^2 + 4 s0^2 >= 4 v0^2 + a^2 (D+2l-2)^2",
            2.0 * p.alpha**2 + 4.0 * p.s0**2,
            4.0 * p.v0**2 + p.alpha**2 * edge,
        )
    root = math.sqrt(radicand)  # equals alpha * a at q = -1
    base = p.alpha * (2 * state.n + 1)
    out = []
    seen = set()
    for kappa_sign, bracket in ((1, root - base), (-1, -(base + root))):
        key = round(bracket, 15)
        if key in seen:
            continue
        seen.add(key)
        out.extend(_candidates_from_kappa(params, state, bracket, kappa_sign))
    return out


def energy_woods_saxon(params, state):
    """Residual-verified q = -1 levels (empty when nothing binds)."""
    return _accepted_levels(params, state, woods_saxon_candidates(params, state))


def level_capacity(params, spec):
    """Printed capacity bound on n for the pure-vector family.

    n <= (1/(q alpha)) [sqrt(4 q^2 m0^2 - v0^2)
         - sqrt((q alpha^2 / 4)(q + (D+2l-1)(D+2l-3)) - v0^2)] - 1/2,
    floor-rounded; a bound below 0 (or a negative radicand) means None.
    The companion existence inequality is evaluated as stated.
    """
    p = params
    rad1 = 4.0 * p.q**2 * p.m0**2 - p.v0**2
    rad2 = (p.q * p.alpha**2 / 4.0) * (p.q + spec.factor) - p.v0**2
    if rad1 < 0.0 or rad2 < 0.0:
        return LevelCapacity(n_max=None, existence=False, bound=None)
    bound = (math.sqrt(rad1) - math.sqrt(rad2)) / (p.q * p.alpha) - 0.5
    n_max = math.floor(bound)
    existence = p.q * p.alpha + 2.0 * math.sqrt(rad2) <= 2.0 * math.sqrt(rad1)
    if n_max < 0:
        return LevelCapacity(n_max=None, existence=existence, bound=bound)
    return LevelCapacity(n_max=n_max, existence=existence, bound=bound)


def ws_level_capacity(params, spec):
    """Printed q = -1 capacity bound, evaluated exactly as stated.

    n <= (1/alpha) [sqrt((alpha^2/4)(2 - (D+2l-2)^2) - v0^2)
         - sqrt(4 m0^2 - v0^2)] - 1/2.
    As stated the subtracted term dominates for every workable coupling, so
    the bound lands below zero (None) even where the residual scan does find
    levels; the verify report surfaces the discrepancy.
    """
    p = params
    edge = (spec.dim + 2 * spec.l - 2) ** 2
    rad1 = (p.alpha**2 / 4.0) * (2.0 - edge) - p.v0**2
    rad2 = 4.0 * p.m0**2 - p.v0**2
    if rad1 < 0.0 or rad2 < 0.0:
        return LevelCapacity(n_max=None, existence=False, bound=None)
    bound = (math.sqrt(rad1) - math.sqrt(rad2)) / p.alpha - 0.5
    existence = math.sqrt(4.0 * rad1) >= p.alpha + 2.0 * math.sqrt(rad2)
    n_max = math.floor(bound)
    if n_max < 0:
        return LevelCapacity(n_max=None, existence=existence, bound=bound)
    return LevelCapacity(n_max=n_max, existence=existence, bound=bound)


def mixed_1d_candidates(params, state):
    """Printed one-dimensional s-wave closed form (D = 1, l = 0), raw roots.

    Algebraically identical to the general explicit form at D = 1, l = 0;
    kept as a separate expression so the identity can be tested.
    """
    p = params
    if state.dim != 1 or state.l != 0:
        raise InvalidParams("the 1d form needs dim = 1, l = 0")
    inner = p.q**2 * p.alpha**2 + 4.0 * (p.s0**2 - p.v0**2)
    if inner < 0.0:
        raise ConstraintViolated(
            "q^2 a^2 + 4 s0^2 >= 4 v0^2", p.q**2 * p.alpha**2 + 4.0 * p.s0**2,
            4.0 * p.v0**2,
        )
    base = p.q * p.alpha * (2 * state.n + 1)
    out = []
    seen = set()
    for kappa_sign in (1, -1):
        kappa = base + kappa_sign * math.copysign(math.sqrt(inner), p.q)
        key = round(kappa, 15)
        if key in seen:
            continue
        seen.add(key)
        denom = 4.0 * p.v0**2 + kappa**2
        eta = (4.0 * (p.v0**2 - p.s0**2) + kappa**2 - 8.0 * p.q * p.m0 * p.s0) / denom
        first = kappa**2 + 4.0 * (p.v0**2 - p.s0**2)
        second = (2.0 * p.s0 + 4.0 * p.q * p.m0) ** 2 - kappa**2 - 4.0 * p.v0**2
        product = first * second
        if product < 0.0:
            for outer in (1, -1):
                out.append(
                    CandidateEnergy(
                        energy=math.nan, kappa=kappa, kappa_sign=kappa_sign,
                        outer_sign=outer, residual=math.nan, accepted=False,
                        reason="product under the root is negative",
                    )
                )
            continue
        spread = kappa * math.sqrt(product) / (4.0 * p.q * denom)
        for outer in (1, -1):
            energy = eta * p.v0 / (2.0 * p.q) + outer * spread
            if abs(energy) >= p.m0:
                out.append(
                    CandidateEnergy(
                        energy=energy, kappa=kappa, kappa_sign=kappa_sign,
                        outer_sign=outer, residual=math.nan, accepted=False,
                        reason=f"|E| = {abs(energy):.6g} outside the bound window",
                    )
                )
                continue
            residual = energy_residual(params, state, energy)
            accepted = abs(residual) <= RESIDUAL_TOL * p.m0
            out.append(
                CandidateEnergy(
                    energy=energy, kappa=kappa, kappa_sign=kappa_sign,
                    outer_sign=outer, residual=residual, accepted=accepted,
                    reason="" if accepted else "back-substitution residual too "
                    "large (root of the squared equation only)",
                )
            )
    return out


def d3_candidates(params, state):
    """Printed three-dimensional q = 1 closed form, raw roots.

    Algebraically identical to the general explicit form at D = 3, q = 1;
    kept separate so the identity can be tested.
    """
    p = params
    if state.dim != 3:
        raise InvalidParams("the 3d form needs dim = 3")
    if p.q != 1:
        raise InvalidParams("the 3d form is stated for q = 1")
    ell = state.l
    bval = p.s0**2 - p.v0**2 + p.alpha**2 * ell * (ell + 1)
    inner = p.alpha**2 + 4.0 * bval
    if inner < 0.0:
        raise ConstraintViolated(
            "a^2 + 4 (s0^2 - v0^2) + 4 a^2 l (l+1) >= 0", inner, 0.0
        )
    base = p.alpha * (2 * state.n + 1)
    out = []
    seen = set()
    for kappa_sign in (1, -1):
        kappa = base + kappa_sign * math.sqrt(inner)
        key = round(kappa, 15)
        if key in seen:
            continue
        seen.add(key)
        out.extend(_candidates_from_kappa(params, state, kappa, kappa_sign))
    return out

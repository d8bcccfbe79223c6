"""Numeric branch engine for hypergeometric-type second-order ODEs.

Equations of the form

    psi'' + (tau_t(s)/sigma(s)) psi' + (sigma_t(s)/sigma(s)^2) psi = 0

with sigma, sigma_t at most quadratic and tau_t at most linear are reduced to
sigma y'' + tau y' + lambda y = 0 by the substitution psi = phi(s) y(s).
The reduction hinges on a linear polynomial

    pi(s) = h(s) +/- sqrt(h(s)^2 - sigma_t(s) + k sigma(s)),
    h = (sigma' - tau_t) / 2,

where k is fixed by demanding that the expression under the root be the
square of a linear polynomial. This module enumerates the resulting (k, pi)
branches numerically, selects the bound-state branch, and reports the
eigenvalue ladder and the weight/prefactor exponents.

Polynomials are plain coefficient tuples in ascending order: (c0, c1, c2)
means c0 + c1 s + c2 s^2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import (
    DegenerateDiscriminantWarning,
    InvalidParams,
    NoPhysicalBranch,
    NoRealK,
    UnsupportedSigma,
)

# relative tolerance of the perfect-square back-check on each k
SQUARE_TOL = 1e-10
# relative tolerance for recognizing the factored sigma families
_PATTERN_TOL = 1e-12


@dataclass(frozen=True)
class NUProblem:
    """Coefficient description of one hypergeometric-type equation."""

    sigma: tuple
    sigma_tilde: tuple
    tau_tilde: tuple

    def __post_init__(self):
        if len(self.sigma) != 3 or len(self.sigma_tilde) != 3:
            raise InvalidParams("sigma and sigma_tilde need 3 coefficients each")
        if len(self.tau_tilde) != 2:
            raise InvalidParams("tau_tilde needs 2 coefficients")
        for coeffs in (self.sigma, self.sigma_tilde, self.tau_tilde):
            for value in coeffs:
                if not math.isfinite(value):
                    raise InvalidParams("polynomial coefficients must be finite")
        if self.sigma == (0.0, 0.0, 0.0):
            raise InvalidParams("sigma must not vanish identically")


@dataclass(frozen=True)
class NUBranch:
    """One (k, pi) branch with its tau = tau_t + 2 pi and lambda = k + pi'."""

    k: float
    pi: tuple
    tau: tuple
    lam: float


@dataclass(frozen=True)
class SolutionFactors:
    """Exponents of the weight rho and prefactor phi for a factored sigma.

    For family "s(1-s)": rho = s**rho[0] * (1-s)**rho[1], same shape for phi.
    For family "1-s^2": the bases are (1-s) and (1+s).
    """

    family: str
    rho: tuple
    phi: tuple


def _real_roots(a, b, c):
    """Real roots of a k^2 + b k + c = 0, stably, ascending."""
    scale = max(abs(a), abs(b), abs(c), 1e-300)
    if abs(a) <= 1e-14 * scale:
        if abs(b) <= 1e-14 * scale:
            return []
        return [-c / b]
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        # forgive pure rounding noise
        if disc > -1e-12 * max(b * b, abs(4.0 * a * c)):
            disc = 0.0
        else:
            return []
    root = math.sqrt(disc)
    if b == 0.0 and root == 0.0:
        return [0.0]
    k1 = (-b - math.copysign(root, b)) / (2.0 * a)
    k2 = c / (a * k1) if k1 != 0.0 else (-b + root) / (2.0 * a)
    if abs(k1 - k2) <= 1e-12 * max(abs(k1), abs(k2)):
        return [k1]
    return sorted((k1, k2))


def candidate_branches(problem):
    """Enumerates the (k, pi) branches of the equation.

    Returns:
        List of NUBranch, duplicates merged, at most four, sorted by
        (k, pi slope, pi constant).

    Raises:
        NoRealK: no real k makes the root argument a perfect square.
    """
    c0, c1, c2 = problem.sigma
    t0, t1, t2 = problem.sigma_tilde
    d0, d1 = problem.tau_tilde
    h0 = 0.5 * (c1 - d0)
    h1 = 0.5 * (2.0 * c2 - d1)

    # under-root quadratic at k=0: qa0 s^2 + qb0 s + qc0
    qa0 = h1 * h1 - t2
    qb0 = 2.0 * h0 * h1 - t1
    qc0 = h0 * h0 - t0
    # its discriminant as a quadratic in k
    ka = c1 * c1 - 4.0 * c2 * c0
    kb = 2.0 * c1 * qb0 - 4.0 * (c2 * qc0 + c0 * qa0)
    kc = qb0 * qb0 - 4.0 * qa0 * qc0

    ks = _real_roots(ka, kb, kc)
    if not ks:
        raise NoRealK("no real k makes the root argument a perfect square")

    branches = []
    for k in ks:
        qa = qa0 + k * c2
        qb = qb0 + k * c1
        qc = qc0 + k * c0
        scale = max(qb * qb, abs(4.0 * qa * qc), 1e-300)
        rel = abs(qb * qb - 4.0 * qa * qc) / scale
        if rel > SQUARE_TOL:
            warnings.warn(
                f"k={k:.12g}: root argument is not a perfect square "
                f"(residual {rel:.3e}); branch dropped",
                DegenerateDiscriminantWarning,
                stacklevel=2,
            )
            continue
        if rel > 0.01 * SQUARE_TOL:
            warnings.warn(
                f"k={k:.12g}: perfect-square check is marginal (residual {rel:.3e})",
                DegenerateDiscriminantWarning,
                stacklevel=2,
            )
        coeff_scale = max(abs(qa), abs(qb), abs(qc), 1e-300)
        if qa > 1e-14 * coeff_scale:
            slope = math.sqrt(qa)
            const = qb / (2.0 * slope)
        elif qa < -1e-14 * coeff_scale or qc < -1e-14 * coeff_scale:
            # the root argument degenerates to a downward quadratic or a
            # negative constant: no real linear polynomial squares to it
            continue
        else:
            slope = 0.0
            const = math.sqrt(max(qc, 0.0))
        for sign in (1.0, -1.0):
            p0 = h0 + sign * const
            p1 = h1 + sign * slope
            tau = (d0 + 2.0 * p0, d1 + 2.0 * p1)
            branches.append(NUBranch(k=k, pi=(p0, p1), tau=tau, lam=k + p1))

    merged = []
    for b in branches:
        dup = False
        for kept in merged:
            tol = 1e-12 * max(1.0, abs(b.k), abs(b.pi[0]), abs(b.pi[1]))
            if (
                abs(b.k - kept.k) <= tol
                and abs(b.pi[0] - kept.pi[0]) <= tol
                and abs(b.pi[1] - kept.pi[1]) <= tol
            ):
                dup = True
                break
        if not dup:
            merged.append(b)
    if not merged:
        raise NoRealK("every real k yields a non-square root argument")
    merged.sort(key=lambda b: (b.k, b.pi[1], b.pi[0]))
    return merged


def select_physical(problem, branches):
    """Picks the bound-state branch.

    Keeps branches with tau' < 0; among several, prefers those whose phi
    exponents are both nonnegative (normalizable prefactor on the domain),
    breaking remaining ties toward the most negative pi slope.

    Raises:
        NoPhysicalBranch: every branch has tau' >= 0.
    """
    physical = [b for b in branches if b.tau[1] < 0.0]
    if not physical:
        raise NoPhysicalBranch("no branch has tau' < 0")
    if len(physical) == 1:
        return physical[0]
    try:
        keep = [
            b
            for b in physical
            if min(weight_and_phi(b, problem).phi) >= -1e-12
        ]
    except UnsupportedSigma:
        keep = []
    if not keep:
        keep = physical
    return min(keep, key=lambda b: (b.pi[1], b.pi[0]))


def lambda_ladder(branch, sigma, n):
    """Eigenvalue ladder lambda_n = -n tau' - n(n-1) sigma''/2 for integer n >= 0."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InvalidParams(f"n must be an integer >= 0, got {n!r}")
    return -n * branch.tau[1] - n * (n - 1) * sigma[2]


def weight_and_phi(branch, problem):
    """Weight and prefactor exponents of a branch for a factored sigma.

    rho solves (sigma rho)' = tau rho; phi solves phi'/phi = pi/sigma.

    Raises:
        UnsupportedSigma: sigma is proportional to neither s(1-s) nor 1-s^2.
    """
    c0, c1, c2 = problem.sigma
    scale = max(abs(c0), abs(c1), abs(c2))
    p0, p1 = branch.pi
    t0, t1 = branch.tau
    if abs(c0) <= _PATTERN_TOL * scale and c1 > 0 and abs(c2 + c1) <= _PATTERN_TOL * scale:
        c = c1  # sigma = c s(1-s)
        rho = ((t0 - c) / c, -(t0 + t1 + c) / c)
        phi = (p0 / c, -(p0 + p1) / c)
        return SolutionFactors("s(1-s)", rho, phi)
    if abs(c1) <= _PATTERN_TOL * scale and c0 > 0 and abs(c2 + c0) <= _PATTERN_TOL * scale:
        c = c0  # sigma = c (1-s^2)
        u0 = t0
        u1 = t1 + 2.0 * c
        rho = (-(u0 + u1) / (2.0 * c), (u0 - u1) / (2.0 * c))
        phi = (-(p0 + p1) / (2.0 * c), (p0 - p1) / (2.0 * c))
        return SolutionFactors("1-s^2", rho, phi)
    raise UnsupportedSigma(f"sigma coefficients {problem.sigma} fit neither family")

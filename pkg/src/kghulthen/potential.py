"""General Hulthen-type vector/scalar potentials and centrifugal terms.

Natural units hbar = c = 1 throughout: alpha, couplings and m0 all carry
energy units, radii carry inverse energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParams, PoleAtRadius

# |1 - q e^(-alpha r)| below this counts as sitting on the pole
POLE_TOL = 1e-12


@dataclass(frozen=True)
class PotentialParams:
    """Couplings and shape of the vector/scalar potential pair.

    Attributes:
        v0: vector coupling strength.
        s0: scalar coupling strength.
        alpha: screening parameter (inverse range), > 0.
        q: deformation parameter, nonzero. q=1 is the plain screened shape,
            q=-1 the shifted Woods-Saxon one.
        m0: rest mass, > 0.
    """

    v0: float
    s0: float
    alpha: float
    q: float
    m0: float = 1.0

    def __post_init__(self):
        for name in ("v0", "s0", "alpha", "q", "m0"):
            value = getattr(self, name)
            try:
                finite = math.isfinite(value)
            except TypeError:
                raise InvalidParams(f"{name} must be a real number, got {value!r}")
            if not finite:
                raise InvalidParams(f"{name} must be finite, got {value!r}")
        if self.q == 0:
            raise InvalidParams("q must be nonzero")
        if self.alpha <= 0:
            raise InvalidParams(f"alpha must be positive, got {self.alpha}")
        if self.m0 <= 0:
            raise InvalidParams(f"m0 must be positive, got {self.m0}")

    @property
    def r0(self) -> float:
        """Screening length 1/alpha."""
        return 1.0 / self.alpha

    @property
    def pole_radius(self):
        """Radius where 1 - q e^(-alpha r) = 0, or None when no r >= 0 does."""
        if self.q >= 1:
            return math.log(self.q) / self.alpha
        return None


@dataclass(frozen=True)
class CentrifugalSpec:
    """Spatial dimension and orbital quantum number of the radial barrier."""

    dim: int
    l: int

    def __post_init__(self):
        if not isinstance(self.dim, int) or isinstance(self.dim, bool) or self.dim < 1:
            raise InvalidParams(f"dim must be an integer >= 1, got {self.dim!r}")
        if not isinstance(self.l, int) or isinstance(self.l, bool) or self.l < 0:
            raise InvalidParams(f"l must be an integer >= 0, got {self.l!r}")

    @property
    def factor(self) -> int:
        """(D + 2l - 1)(D + 2l - 3), exact integer; negative for D=2, l=0."""
        w = self.dim + 2 * self.l
        return (w - 1) * (w - 3)


def _denominator(params, r):
    d = 1.0 - params.q * math.exp(-params.alpha * r)
    if abs(d) < POLE_TOL:
        raise PoleAtRadius(r, params.q, params.alpha)
    return d


def _check_radius(r):
    if not (r > 0) or not math.isfinite(r):
        raise InvalidParams(f"r must be positive and finite, got {r!r}")


def eval_vector(params, r):
    """Vector potential -v0 e^(-alpha r) / (1 - q e^(-alpha r)) at radius r > 0."""
    _check_radius(r)
    return -params.v0 * math.exp(-params.alpha * r) / _denominator(params, r)


def eval_scalar(params, r):
    """Scalar potential -s0 e^(-alpha r) / (1 - q e^(-alpha r)) at radius r > 0."""
    _check_radius(r)
    return -params.s0 * math.exp(-params.alpha * r) / _denominator(params, r)


def centrifugal_exact(spec, r):
    """True radial barrier (D+2l-1)(D+2l-3) / (4 r^2)."""
    _check_radius(r)
    return spec.factor / (4.0 * r * r)


def centrifugal_approx(spec, params, r):
    """Barrier with 1/r^2 replaced by its screened-exponential surrogate.

    The surrogate alpha^2 e^(-alpha r) / (1 - q e^(-alpha r))^2 is what the
    closed-form spectra assume; it matches 1/r^2 well only for alpha*r << 1
    (and, for q far from 1, not even there).
    """
    _check_radius(r)
    w = math.exp(-params.alpha * r)
    d = 1.0 - params.q * w
    if abs(d) < POLE_TOL:
        raise PoleAtRadius(r, params.q, params.alpha)
    return 0.25 * spec.factor * params.alpha**2 * w / (d * d)


def approx_error_profile(spec, params, radii):
    """Pointwise comparison of the exact and surrogate barriers.

    Args:
        spec: CentrifugalSpec of the barrier.
        params: PotentialParams supplying (alpha, q).
        radii: iterable of radii, each > 0.

    Returns:
        List of (r, exact, approx, rel_error) tuples. A pole at some radius
        yields NaN in the approx and error slots for that row only; the sweep
        itself never aborts. rel_error is 0 when both values are 0.
    """
    rows = []
    for r in radii:
        exact = centrifugal_exact(spec, r)
        try:
            approx = centrifugal_approx(spec, params, r)
        except PoleAtRadius:
            rows.append((r, exact, math.nan, math.nan))
            continue
        if exact == 0.0:
            rel = 0.0 if approx == 0.0 else math.inf
        else:
            rel = abs(approx - exact) / abs(exact)
        rows.append((r, exact, approx, rel))
    return rows


@dataclass(frozen=True)
class WoodsSaxonForm:
    """Woods-Saxon reading of a q = -1 potential pair.

    -v0 e^(-alpha r)/(1 + e^(-alpha r)) equals the flat-bottomed well
    -v0 + v0/(1 + e^(-alpha r)); the constant shifts -v0 and -s0 are recorded
    so spectra quoted against either convention can be compared.
    """

    params: PotentialParams
    v_shift: float
    s_shift: float

    def eval_vector(self, r):
        """Shifted-well closed form; identical to eval_vector(params, r)."""
        p = self.params
        return -p.v0 + p.v0 / (1.0 + math.exp(-p.alpha * r))

    def eval_scalar(self, r):
        p = self.params
        return -p.s0 + p.s0 / (1.0 + math.exp(-p.alpha * r))


def to_woods_saxon(params):
    """Reparameterizes a q = -1 pair as constant-shifted Woods-Saxon wells."""
    if params.q != -1:
        raise InvalidParams(f"Woods-Saxon form needs q = -1, got q = {params.q}")
    return WoodsSaxonForm(params=params, v_shift=-params.v0, s_shift=-params.s0)

"""Branch enumeration and selection for hypergeometric-type equations.

The associated-Legendre instance has exact integer branch data worked out
by hand and cross-checked against the classical solution; the screened-well
instance literals were frozen from a 50-digit mpmath run of the same
reduction.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kghulthen import nu_core
from kghulthen.errors import (
    InvalidParams,
    NoPhysicalBranch,
    NoRealK,
    UnsupportedSigma,
)
from kghulthen.nu_core import NUProblem


# Associated Legendre l=2, m=1 in s = cos(theta):
#   psi'' - (2s/(1-s^2)) psi' + (6(1-s^2) - 1)/(1-s^2)^2 psi = 0
LEGENDRE = NUProblem(sigma=(1.0, 0.0, -1.0), sigma_tilde=(5.0, 0.0, -6.0), tau_tilde=(0.0, -2.0))

# Screened-well radial reduction at a residual-verified eigenvalue
# (v0=s0=0.25, alpha=0.1, q=1, D=3, n=0, E=-0.69077029031938843682);
# all decimals below are frozen from the mpmath run.
RADIAL = NUProblem(
    sigma=(0.0, 1.0, -1.0),
    sigma_tilde=(
        -52.283640601206781365,
        120.02876668644414089,
        -67.745126085237359524,
    ),
    tau_tilde=(1.0, -1.0),
)


# ------------------------------------------------------------- enumeration


def test_legendre_branch_set():
    branches = nu_core.candidate_branches(LEGENDRE)
    keys = sorted((b.k, b.pi[0], b.pi[1]) for b in branches)
    assert keys == [
        (5.0, 0.0, -1.0),
        (5.0, 0.0, 1.0),
        (6.0, -1.0, 0.0),
        (6.0, 1.0, 0.0),
    ]
    for b in branches:
        assert b.tau == (LEGENDRE.tau_tilde[0] + 2 * b.pi[0], LEGENDRE.tau_tilde[1] + 2 * b.pi[1])
        assert b.lam == b.k + b.pi[1]


def test_legendre_selection_and_factors():
    branches = nu_core.candidate_branches(LEGENDRE)
    sel = nu_core.select_physical(LEGENDRE, branches)
    assert (sel.k, sel.pi) == (5.0, (0.0, -1.0))
    assert sel.tau == (0.0, -4.0)
    assert sel.lam == 4.0
    # classical solution sits on rung n=1 of this branch's ladder
    assert nu_core.lambda_ladder(sel, LEGENDRE.sigma, 1) == 4.0
    fac = nu_core.weight_and_phi(sel, LEGENDRE)
    assert fac.family == "1-s^2"
    assert fac.rho == pytest.approx((1.0, 1.0), abs=1e-14)
    assert fac.phi == pytest.approx((0.5, 0.5), abs=1e-14)


def test_radial_instance_frozen_branches():
    branches = nu_core.candidate_branches(RADIAL)
    ks = sorted({b.k for b in branches})
    assert ks == pytest.approx(
        [8.2307427420152890795, 22.692228226045867238], rel=1e-12
    )
    sel = nu_core.select_physical(RADIAL, branches)
    assert sel.k == pytest.approx(8.2307427420152890795, rel=1e-12)
    assert sel.pi == pytest.approx(
        (7.2307427420152890795, -8.2307427420152890795), rel=1e-12
    )
    assert sel.tau == pytest.approx(
        (15.461485484030578159, -17.461485484030578159), rel=1e-12
    )
    # eigenvalue rung n=0: lambda == 0 at a residual-verified energy
    assert abs(sel.lam - nu_core.lambda_ladder(sel, RADIAL.sigma, 0)) < 1e-9
    assert abs(sel.lam) < 1e-9


def test_radial_instance_factors():
    sel = nu_core.select_physical(RADIAL, nu_core.candidate_branches(RADIAL))
    fac = nu_core.weight_and_phi(sel, RADIAL)
    assert fac.family == "s(1-s)"
    assert fac.rho == pytest.approx((14.461485484030578159, 1.0), rel=1e-12)
    assert fac.phi == pytest.approx((7.2307427420152890795, 1.0), rel=1e-12)


def test_ladder_values_and_validation():
    sel = nu_core.select_physical(LEGENDRE, nu_core.candidate_branches(LEGENDRE))
    # lambda_n = -n tau' - n(n-1) sigma''/2 with tau' = -4, sigma'' = -2
    assert [nu_core.lambda_ladder(sel, LEGENDRE.sigma, n) for n in range(4)] == [
        0.0,
        4.0,
        10.0,
        18.0,
    ]
    for bad in (-1, 1.5, True):
        with pytest.raises(InvalidParams):
            nu_core.lambda_ladder(sel, LEGENDRE.sigma, bad)


# ------------------------------------------------------------ error paths


def test_no_real_k():
    prob = NUProblem(sigma=(1.0, 0.0, -1.0), sigma_tilde=(1.0, 2.0, 0.0), tau_tilde=(0.0, 0.0))
    with pytest.raises(NoRealK):
        nu_core.candidate_branches(prob)


def test_no_physical_branch():
    # sigma = s^2 gives tau' = 2 +/- 2*slope; this instance has k = -1/4
    # with a constant root argument, so slope = 0 and every branch has
    # tau' = 2 >= 0
    prob = NUProblem(
        sigma=(0.0, 0.0, 1.0), sigma_tilde=(-1.0, 0.0, 0.75), tau_tilde=(0.0, 0.0)
    )
    branches = nu_core.candidate_branches(prob)
    assert branches and all(b.tau[1] >= 0.0 for b in branches)
    with pytest.raises(NoPhysicalBranch):
        nu_core.select_physical(prob, branches)


def test_unsupported_sigma_family():
    prob = NUProblem(
        sigma=(0.0, 0.0, 1.0), sigma_tilde=(-1.0, 0.0, 0.75), tau_tilde=(0.0, 0.0)
    )
    branch = nu_core.candidate_branches(prob)[0]
    with pytest.raises(UnsupportedSigma):
        nu_core.weight_and_phi(branch, prob)


def test_negative_constant_root_argument_rejected():
    # qa = qb = 0 with qc < 0: no real linear polynomial squares to the
    # root argument, so no branch may be fabricated from it
    prob = NUProblem(
        sigma=(0.0, 0.0, 1.0), sigma_tilde=(1.0, 0.0, 0.0), tau_tilde=(0.0, 0.0)
    )
    with pytest.raises(NoRealK):
        nu_core.candidate_branches(prob)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(sigma=(1.0, 0.0), sigma_tilde=(0.0, 0.0, 0.0), tau_tilde=(0.0, 0.0)),
        dict(sigma=(1.0, 0.0, 0.0), sigma_tilde=(0.0, 0.0), tau_tilde=(0.0, 0.0)),
        dict(sigma=(1.0, 0.0, 0.0), sigma_tilde=(0.0, 0.0, 0.0), tau_tilde=(0.0,)),
        dict(sigma=(0.0, 0.0, 0.0), sigma_tilde=(1.0, 0.0, 0.0), tau_tilde=(0.0, 0.0)),
        dict(sigma=(1.0, math.nan, 0.0), sigma_tilde=(0.0, 0.0, 0.0), tau_tilde=(0.0, 0.0)),
    ],
)
def test_problem_validation(kwargs):
    with pytest.raises(InvalidParams):
        NUProblem(**kwargs)


# --------------------------------------------------------------- property


def _poly_mul(p, q):
    out = [0.0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


@pytest.mark.filterwarnings("ignore::kghulthen.errors.DegenerateDiscriminantWarning")
@given(
    t0=st.floats(-8.0, 8.0),
    t1=st.floats(-8.0, 8.0),
    t2=st.floats(-8.0, 8.0),
    d0=st.floats(-4.0, 4.0),
    d1=st.floats(-4.0, 4.0),
    family=st.sampled_from([(0.0, 1.0, -1.0), (1.0, 0.0, -1.0)]),
)
@settings(max_examples=150, deadline=None)
def test_branch_defining_identity(t0, t1, t2, d0, d1, family):
    """Every emitted branch satisfies (pi - h)^2 == h^2 - sigma_t + k sigma."""
    prob = NUProblem(sigma=family, sigma_tilde=(t0, t1, t2), tau_tilde=(d0, d1))
    try:
        branches = nu_core.candidate_branches(prob)
    except NoRealK:
        return
    h = (0.5 * (prob.sigma[1] - d0), 0.5 * (2.0 * prob.sigma[2] - d1))
    scale = max(1.0, abs(t0), abs(t1), abs(t2), abs(d0), abs(d1))
    for b in branches:
        lhs = _poly_mul((b.pi[0] - h[0], b.pi[1] - h[1]), (b.pi[0] - h[0], b.pi[1] - h[1]))
        rhs = [
            h[0] * h[0] - t0 + b.k * prob.sigma[0],
            2.0 * h[0] * h[1] - t1 + b.k * prob.sigma[1],
            h[1] * h[1] - t2 + b.k * prob.sigma[2],
        ]
        k_scale = scale * max(1.0, abs(b.k), abs(b.pi[0]) ** 2, abs(b.pi[1]) ** 2)
        for lc, rc in zip(lhs, rhs):
            assert abs(lc - rc) <= 1e-7 * k_scale
        assert b.lam == pytest.approx(b.k + b.pi[1], rel=1e-12, abs=1e-12)
        assert b.tau[0] == pytest.approx(d0 + 2 * b.pi[0], rel=1e-12, abs=1e-12)
        assert b.tau[1] == pytest.approx(d1 + 2 * b.pi[1], rel=1e-12, abs=1e-12)
        assert nu_core.lambda_ladder(b, prob.sigma, 0) == 0.0

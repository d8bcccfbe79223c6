"""Closed-form spectra: frozen eigenvalues, residual gating, and invariants.

Every expected number here was frozen from an independent 50-digit mpmath
evaluation of the quantization condition (and, for eigenvalues, confirmed
by the shooting integrator); tests compare the fast float implementation
against those literals.
"""

import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from kghulthen import potential, spectrum
from kghulthen.errors import ConstraintViolated, NonRealA, NoRoot
from kghulthen.potential import CentrifugalSpec, PotentialParams
from kghulthen.spectrum import QuantumState

P = PotentialParams
Q = QuantumState

# (label, params, state, 10-digit frozen principal value)
PRINCIPAL_CELLS = [
    ("vector q=0.5 a=1.0", P(v0=0.25, s0=0.0, alpha=1.0, q=0.5), Q(n=0, dim=1), 0.9114378278),
    ("vector q=1.0 a=0.5", P(v0=0.25, s0=0.0, alpha=0.5, q=1.0), Q(n=0, dim=1), 0.8209705454),
    ("vector q=1.5 a=0.5", P(v0=0.25, s0=0.0, alpha=0.5, q=1.5), Q(n=0, dim=1), 0.9916725133),
    ("vector q=2.0 a=0.5", P(v0=0.25, s0=0.0, alpha=0.5, q=2.0), Q(n=0, dim=1), 0.9998396706),
    ("scalar q=0.1 a=0.5", P(v0=0.0, s0=0.25, alpha=0.5, q=0.1), Q(n=0, dim=1), 0.7556396585),
    ("scalar q=0.1 a=1.0", P(v0=0.0, s0=0.25, alpha=1.0, q=0.1), Q(n=0, dim=1), 0.9474837538),
    ("scalar q=1.5 a=0.5", P(v0=0.0, s0=0.25, alpha=0.5, q=1.5), Q(n=0, dim=1), 0.998606395),
    ("scalar q=0.1 a=0.5 n=1", P(v0=0.0, s0=0.25, alpha=0.5, q=0.1), Q(n=1, dim=1), 0.9956735861),
    ("vector q=1.5 a=2.0", P(v0=0.25, s0=0.0, alpha=2.0, q=1.5), Q(n=0, dim=1), 1.0 / 6.0),
    ("vector q=1.0 a=1.0", P(v0=0.25, s0=0.0, alpha=1.0, q=1.0), Q(n=0, dim=1), 0.9708040709),
]


@pytest.mark.parametrize("label,p,st_,want", PRINCIPAL_CELLS, ids=[c[0] for c in PRINCIPAL_CELLS])
def test_principal_frozen_values(label, p, st_, want):
    assert spectrum.energy_principal(p, st_) == pytest.approx(want, abs=5e-10)


# ------------------------------------------------------ residual-gated roots


def test_solve_levels_genuine_cell():
    levels = spectrum.solve_levels(P(v0=0.25, s0=0.0, alpha=0.5, q=1.0), Q(n=0, dim=1))
    assert len(levels) == 1
    lv = levels[0]
    assert lv.energy == pytest.approx(0.8209705454, abs=1e-9)
    assert lv.branch == "particle"
    assert abs(lv.residual) <= spectrum.RESIDUAL_TOL


def test_solve_levels_spurious_cell_empty():
    assert spectrum.solve_levels(P(v0=0.25, s0=0.0, alpha=1.0, q=1.0), Q(n=0, dim=1)) == []


def test_explicit_matches_solve_on_genuine():
    p = P(v0=0.25, s0=0.0, alpha=0.5, q=1.0)
    lv = spectrum.energy_explicit(p, Q(n=0, dim=1))
    assert len(lv) == 1
    assert lv[0].energy == pytest.approx(0.8209705454, abs=5e-10)
    assert spectrum.energy_explicit(P(v0=0.25, s0=0.0, alpha=1.0, q=1.0), Q(n=0, dim=1)) == []


def test_residual_at_printed_table_value():
    # the 6-decimal table entry leaves a ~1e-6 residual; frozen -1.10836e-6
    r = spectrum.energy_residual(P(v0=0.25, s0=0.0, alpha=0.5, q=1.0), Q(n=0, dim=1), 0.820971)
    assert r == pytest.approx(-1.10836e-6, abs=1e-10)


def test_infeasible_cell_raises():
    p = P(v0=0.25, s0=0.0, alpha=0.5, q=0.1)
    with pytest.raises(NonRealA) as err:
        spectrum.energy_principal(p, Q(n=0, dim=1))
    assert err.value.radicand == pytest.approx(-0.99, abs=1e-12)
    with pytest.raises(ConstraintViolated) as err2:
        spectrum.energy_explicit(p, Q(n=0, dim=1))
    assert err2.value.lhs == pytest.approx(0.1**2 * 0.5**2, abs=1e-15)


def test_shape_parameter_radicand():
    with pytest.raises(NonRealA) as err:
        spectrum.shape_parameter(
            P(v0=0.25, s0=0.0, alpha=0.5, q=0.1), CentrifugalSpec(dim=1, l=0)
        )
    assert err.value.radicand == pytest.approx(-0.99, abs=1e-12)


# --------------------------------------------------------- pure-case forms


def test_pure_vector_accepted_level():
    pv = spectrum.energy_pure_vector(P(v0=0.25, s0=0.0, alpha=0.5, q=1.0), Q(n=0, dim=1))
    assert pv and pv[0].energy == pytest.approx(0.8209705454, abs=5e-10)


def test_pure_vector_candidates_spurious():
    cand = spectrum.pure_vector_candidates(P(v0=0.25, s0=0.0, alpha=1.0, q=1.0), Q(n=1, dim=1))
    vals = [c.energy for c in cand if not math.isnan(c.energy)]
    assert min(abs(v - 0.3472924668) for v in vals) < 1e-9
    assert not any(c.accepted for c in cand)


def test_pure_scalar_pair_and_symmetry():
    ps = spectrum.energy_pure_scalar(P(v0=0.0, s0=0.25, alpha=0.5, q=0.1), Q(n=0, dim=1))
    assert len(ps) == 2
    assert max(lv.energy for lv in ps) == pytest.approx(0.7556396585, abs=5e-10)
    assert ps[0].energy + ps[1].energy == pytest.approx(0.0, abs=1e-12)
    tags = {lv.branch for lv in ps}
    assert tags == {"particle", "antiparticle"}


def test_pure_scalar_candidates_printed_value():
    cand = spectrum.pure_scalar_candidates(P(v0=0.0, s0=0.25, alpha=1.0, q=10.0), Q(n=1, dim=1))
    vals = [c.energy for c in cand if not math.isnan(c.energy)]
    assert min(abs(v - 0.156613256) for v in vals) < 1e-9


def test_pure_scalar_weak_coupling_limit():
    # frozen: E+ at s0=1e-6 is 0.866025981133938; sqrt(3)/2 = 0.866025403784439
    cand = spectrum.pure_scalar_candidates(P(v0=0.0, s0=1e-6, alpha=1.0, q=1.0), Q(n=0, dim=1))
    best = min((c.energy for c in cand if c.energy > 0), key=lambda e: abs(e - 0.866))
    assert best == pytest.approx(0.866025981133938, abs=1e-12)
    assert abs(best - math.sqrt(3.0) / 2.0) < 1e-6


# ------------------------------------------------------- special couplings


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("alpha,want", [(0.5, 0.820970545354), (1.0, 0.911437827766)])
def test_critical_coupling_energy(q, alpha, want):
    p = P(v0=q * alpha / 2.0, s0=0.0, alpha=alpha, q=q)
    assert spectrum.critical_coupling_energy(p) == pytest.approx(want, abs=1e-11)


def test_equal_coupling_root_and_nr_limit():
    p = P(v0=0.25, s0=0.25, alpha=0.25, q=1.0)
    lev = spectrum.energy_equal_coupling(p, Q(n=0, dim=3))
    assert lev.energy == pytest.approx(0.11801215108222430313, abs=1e-10)
    assert spectrum.nonrelativistic_limit(p, Q(n=0, dim=3)) == pytest.approx(
        -1.7578125, abs=1e-15
    )


@pytest.mark.parametrize(
    "n,want",
    [
        (0, -0.69077029031938843682),
        (1, -0.12641839119375438657),
        (2, 0.31779238772276408336),
    ],
)
def test_equal_coupling_ladder(n, want):
    p = P(v0=0.25, s0=0.25, alpha=0.1, q=1.0)
    lev = spectrum.energy_equal_coupling(p, Q(n=n, dim=3))
    assert lev.energy == pytest.approx(want, abs=1e-10)


def test_equal_coupling_no_root():
    p = P(v0=0.05 * 4 * 0.05, s0=0.05 * 4 * 0.05, alpha=4 * 0.05, q=1.0)
    with pytest.raises(NoRoot):
        spectrum.energy_equal_coupling(p, Q(n=0, dim=3))


@pytest.mark.parametrize(
    "coupling_scale,b,e_r,gap",
    [
        (0.05, 0.0125, 0.997194075769, 1.8424231042254517e-05),
        (0.1, 0.0125, 0.984836745189, 0.00025075481052251727),
        (0.1, 0.05, 0.995037190210, 0.00036280979001086436),
        (0.1, 0.075, 0.998755440588, 0.00039455941164697026),
    ],
)
@pytest.mark.parametrize("n", [0, 1])
def test_weak_coupling_relativistic_gap(coupling_scale, b, e_r, gap, n):
    nd = n + 1.0
    alpha = 4.0 * b / nd
    v0 = coupling_scale * nd * alpha
    p = P(v0=v0, s0=v0, alpha=alpha, q=1.0)
    st_ = Q(n=n, dim=3)
    lev = spectrum.energy_equal_coupling(p, st_)
    assert lev.energy == pytest.approx(e_r, abs=1e-9)
    approx = spectrum.relativistic_approx(p, st_)
    assert abs(lev.energy - approx) == pytest.approx(gap, abs=1e-9)
    assert spectrum.nonrelativistic_limit(p, st_) == pytest.approx(
        -2.0 * (coupling_scale - b) ** 2, abs=1e-15
    )


# ------------------------------------------------------------- Woods-Saxon


def test_woods_saxon_bound_level():
    ws = spectrum.energy_woods_saxon(P(v0=0.2, s0=0.0, alpha=0.5, q=-1.0), Q(n=0, dim=1))
    assert len(ws) == 1
    assert ws[0].energy == pytest.approx(-0.971779788708135, abs=1e-11)
    assert ws[0].branch == "antiparticle"


def test_woods_saxon_empty_at_larger_alpha():
    assert spectrum.energy_woods_saxon(P(v0=0.2, s0=0.0, alpha=1.0, q=-1.0), Q(n=0, dim=1)) == []


def test_woods_saxon_rejected_branch():
    wc = spectrum.woods_saxon_candidates(P(v0=0.2, s0=0.0, alpha=0.5, q=-1.0), Q(n=0, dim=1))
    printed = [c for c in wc if c.kappa_sign == 1 and c.outer_sign == 1]
    assert printed and printed[0].energy == pytest.approx(-0.544409720865779, abs=1e-11)
    assert not printed[0].accepted


def test_solve_levels_handles_negative_q():
    sl = spectrum.solve_levels(P(v0=0.2, s0=0.0, alpha=0.5, q=-1.0), Q(n=0, dim=1))
    assert len(sl) == 1
    assert sl[0].energy == pytest.approx(-0.971779788708135, abs=1e-9)


def test_ws_capacity_bound():
    cap = spectrum.ws_level_capacity(
        P(v0=0.1, s0=0.0, alpha=1.0, q=-1.0), CentrifugalSpec(dim=3, l=0)
    )
    assert cap.bound == pytest.approx(-2.007600487, abs=1e-8)
    assert cap.n_max is None and cap.count == 0


# ---------------------------------------------------------------- capacity


@pytest.mark.parametrize(
    "dim,l,want", [(3, 0, 2), (3, 1, 1), (4, 0, 2), (5, 0, 1), (6, 0, 0)]
)
def test_level_capacity_counts(dim, l, want):
    v0 = (dim + 2 * l - 2) / 2.0
    cap = spectrum.level_capacity(
        P(v0=v0, s0=0.0, alpha=1.0, q=1.0), CentrifugalSpec(dim=dim, l=l)
    )
    assert cap.count == want


@pytest.mark.parametrize(
    "dim,l,want",
    [
        (3, 0, 0.911437827766),
        (3, 1, 0.94364916731),
        (4, 0, 0.870809924355),
        (5, 0, 0.94364916731),
    ],
)
def test_capacity_family_genuine_roots(dim, l, want):
    v0 = (dim + 2 * l - 2) / 2.0
    lv = spectrum.solve_levels(P(v0=v0, s0=0.0, alpha=1.0, q=1.0), Q(n=0, dim=dim, l=l))
    assert len(lv) == 1 and lv[0].energy == pytest.approx(want, abs=1e-9)


def test_capacity_family_empty_at_d6():
    assert spectrum.solve_levels(P(v0=2.0, s0=0.0, alpha=1.0, q=1.0), Q(n=0, dim=6)) == []


# ------------------------------------------------- printed specializations


def test_mixed_1d_matches_general():
    p = P(v0=0.2, s0=0.15, alpha=0.6, q=1.3)
    st_ = Q(n=1, dim=1)
    m1 = spectrum.mixed_1d_candidates(p, st_)
    expl = spectrum.explicit_candidates(p, st_)
    pm = [c.energy for c in m1 if c.kappa_sign == 1 and c.outer_sign == 1][0]
    pe = [c.energy for c in expl if c.kappa_sign == 1 and c.outer_sign == 1][0]
    assert pm == pytest.approx(pe, abs=1e-13)
    assert pm == pytest.approx(0.926060773595878, abs=1e-12)


def test_d3_matches_general():
    p = P(v0=0.3, s0=0.1, alpha=0.7, q=1.0)
    st_ = Q(n=0, dim=3, l=1)
    d3 = spectrum.d3_candidates(p, st_)
    expl = spectrum.explicit_candidates(p, st_)
    pm = [c.energy for c in d3 if c.kappa_sign == 1 and c.outer_sign == 1][0]
    pe = [c.energy for c in expl if c.kappa_sign == 1 and c.outer_sign == 1][0]
    assert pm == pytest.approx(pe, abs=1e-13)


def test_derived_params_identities():
    dp = spectrum.derived_params(P(v0=0.3, s0=0.3, alpha=0.7, q=1.0), Q(n=0, dim=3), 0.5)
    assert dp.a == pytest.approx(1.0, abs=1e-14)  # |D+2l-2| at s0=v0, q=1
    assert dp.beta2 - (dp.delta**2 - dp.delta - dp.gamma) == pytest.approx(0.0, abs=1e-12)


# --------------------------------------------------------------- properties


def _params(v0, s0, alpha, q):
    return P(v0=v0, s0=s0, alpha=alpha, q=q)


@given(
    v0=st.floats(0.0, 1.0),
    s0=st.floats(0.0, 1.0),
    alpha=st.floats(0.05, 2.0),
    q=st.floats(0.1, 3.0),
    energy=st.floats(-0.99, 0.99),
    dim=st.sampled_from([1, 2, 3, 4, 5]),
    l=st.integers(0, 2),
)
@settings(max_examples=120, deadline=None)
def test_beta2_identity_property(v0, s0, alpha, q, energy, dim, l):
    p = _params(v0, s0, alpha, q)
    st_ = Q(n=0, l=l, dim=dim)
    try:
        dp = spectrum.derived_params(p, st_, energy)
    except NonRealA:
        assume(False)
    scale = max(1.0, abs(dp.beta2), dp.delta**2, abs(dp.gamma))
    assert abs(dp.beta2 - (dp.delta**2 - dp.delta - dp.gamma)) <= 1e-10 * scale


@given(
    v0=st.floats(0.0, 1.0),
    s0=st.floats(0.0, 1.0),
    alpha=st.floats(0.05, 2.0),
    q=st.floats(0.1, 3.0),
    energy=st.floats(-0.99, 0.99),
    dim=st.sampled_from([1, 2, 3]),
    l=st.integers(1, 3),
)
@settings(max_examples=100, deadline=None)
def test_dimension_shift_invariance(v0, s0, alpha, q, energy, dim, l):
    """(dim, l) -> (dim+2, l-1) leaves D+2l and hence the residual unchanged."""
    p = _params(v0, s0, alpha, q)
    try:
        r1 = spectrum.energy_residual(p, Q(n=0, l=l, dim=dim), energy)
    except NonRealA:
        assume(False)
    r2 = spectrum.energy_residual(p, Q(n=0, l=l - 1, dim=dim + 2), energy)
    assert r1 == pytest.approx(r2, rel=1e-12, abs=1e-12)


@given(
    s0=st.floats(0.05, 1.0),
    alpha=st.floats(0.05, 2.0),
    q=st.floats(0.1, 3.0),
    n=st.integers(0, 2),
)
@settings(max_examples=100, deadline=None)
def test_pure_scalar_charge_symmetry(s0, alpha, q, n):
    """With v0 = 0 the spectrum is symmetric under E -> -E."""
    p = _params(0.0, s0, alpha, q)
    st_ = Q(n=n, dim=1)
    try:
        cand = spectrum.pure_scalar_candidates(p, st_)
    except NonRealA:
        assume(False)
    vals = sorted(c.energy for c in cand if not math.isnan(c.energy))
    for e in vals:
        assert min(abs(e + f) for f in vals) <= 1e-9 * max(1.0, abs(e))
    levels = spectrum.solve_levels(p, st_)
    energies = sorted(lv.energy for lv in levels)
    assert energies == pytest.approx(sorted(-e for e in energies), abs=1e-8)


@given(
    v0=st.floats(0.0, 1.2),
    s0=st.floats(0.0, 1.2),
    alpha=st.floats(0.05, 2.0),
    q=st.floats(0.1, 3.0),
    n=st.integers(0, 3),
    dim=st.sampled_from([1, 3, 5]),
)
@settings(max_examples=120, deadline=None)
def test_solve_levels_postconditions(v0, s0, alpha, q, n, dim):
    p = _params(v0, s0, alpha, q)
    st_ = Q(n=n, dim=dim)
    levels = spectrum.solve_levels(p, st_)
    for lv in levels:
        assert abs(lv.energy) < p.m0
        assert abs(lv.residual) <= spectrum.RESIDUAL_TOL
        assert lv.branch == ("particle" if lv.energy >= 0 else "antiparticle")
        assert abs(spectrum.energy_residual(p, st_, lv.energy)) <= 10 * spectrum.RESIDUAL_TOL
    energies = [lv.energy for lv in levels]
    assert energies == sorted(energies)


@given(
    v0=st.floats(0.05, 0.6),
    s0=st.floats(0.0, 0.6),
    alpha=st.floats(0.05, 1.5),
    q=st.floats(0.2, 2.5),
    energy=st.floats(-0.95, 0.95),
)
@settings(max_examples=100, deadline=None)
def test_one_dimensional_equals_s_wave_3d(v0, s0, alpha, q, energy):
    """dim=1 and (dim=3, l=0) share the quantization condition exactly."""
    p = _params(v0, s0, alpha, q)
    try:
        r1 = spectrum.energy_residual(p, Q(n=0, dim=1), energy)
    except NonRealA:
        assume(False)
    r3 = spectrum.energy_residual(p, Q(n=0, dim=3), energy)
    assert r1 == r3


def test_mass_scaling_of_principal_value():
    """E scales linearly with m0 when all couplings scale with m0."""
    base = spectrum.energy_principal(
        P(v0=0.25, s0=0.0, alpha=0.5, q=1.0, m0=1.0), Q(n=0, dim=1)
    )
    scaled = spectrum.energy_principal(
        P(v0=0.5, s0=0.0, alpha=1.0, q=1.0, m0=2.0), Q(n=0, dim=1)
    )
    assert scaled == pytest.approx(2.0 * base, rel=1e-12)

import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from bellcorr.correlations import closest_classical_state, closest_product_state, full_report
from bellcorr.dynamics import (
    PhaseFlipParams,
    evolve,
    first_crossing,
    lambda_factor,
    trajectory,
)
from bellcorr.errors import NonPhysicalState
from bellcorr.qstate import MAXIMALLY_MIXED, BellDiagonalState, is_physical, random_physical_state

from .conftest import REB_FREEZE_STATE, GEO_FREEZE_STATE

P = PhaseFlipParams()
# 40-digit mpmath evaluations
LAMBDA_AT_0_1 = -0.333248986080509411722
REB_FREEZE_CROSSING = 0.0346444082169352
GEO_FREEZE_CROSSING = 0.0311014683794014


def test_default_params():
    assert P.tau == 5.0 and P.alpha_abs == 1.0
    assert P.mu == pytest.approx(math.sqrt(399), abs=1e-14)


@pytest.mark.parametrize("tau, alpha", [(0.25, 1.0), (0.1, 1.0), (5.0, 0.05), (0.0, 1.0), (5.0, -1.0)])
def test_non_oscillatory_regime_rejected(tau, alpha):
    with pytest.raises(ValueError):
        PhaseFlipParams(tau, alpha)


def test_lambda_examples():
    assert lambda_factor(0.0) == 1.0
    assert lambda_factor(0.1) == pytest.approx(LAMBDA_AT_0_1, abs=1e-14)
    assert abs(lambda_factor(10.0)) < math.exp(-10) * (1 + 1 / P.mu)
    with pytest.raises(ValueError):
        lambda_factor(-0.1)


def test_lambda_vectorised_and_squared_bounded():
    nus = np.linspace(0, 20, 200_001)
    lam = lambda_factor(nus)
    assert lam.shape == nus.shape
    assert lam[1000] == lambda_factor(float(nus[1000]))
    assert np.max(lam**2) <= 1.0
    for p in (PhaseFlipParams(0.3, 1.0), PhaseFlipParams(1.0, 0.26), PhaseFlipParams(50.0, 3.0)):
        assert np.max(lambda_factor(nus, p) ** 2) <= 1.0


def test_evolve_examples():
    assert evolve(REB_FREEZE_STATE, 0.0) == REB_FREEZE_STATE
    nu = 0.1
    lam2 = lambda_factor(nu) ** 2
    np.testing.assert_allclose(tuple(evolve(REB_FREEZE_STATE, nu)), (lam2, -0.6 * lam2, 0.6), atol=1e-15)
    np.testing.assert_allclose(tuple(evolve(GEO_FREEZE_STATE, nu)), (0.6 * lam2, 0.0, 0.4), atol=1e-15)
    with pytest.raises(NonPhysicalState):
        evolve(BellDiagonalState(1, 1, 1), 0.1)


def test_physicality_preserved():
    rng = np.random.default_rng(3)
    nus = np.linspace(0, 5, 100)
    for _ in range(200):
        s0 = random_physical_state(rng)
        for nu in nus:
            assert is_physical(evolve(s0, float(nu)))


def test_trajectory_examples():
    traj = trajectory(REB_FREEZE_STATE, 3.0, 601)
    assert len(traj) == 601
    nu = traj.column("nu")
    assert nu[0] == 0.0 and nu[-1] == 3.0
    np.testing.assert_allclose(np.diff(nu), 0.005, atol=1e-14)
    initial = nu < REB_FREEZE_CROSSING
    assert np.ptp(traj.column("D")[initial]) < 1e-12

    traj = trajectory(GEO_FREEZE_STATE, 3.0, 601)
    initial = traj.column("nu") < GEO_FREEZE_CROSSING
    np.testing.assert_allclose(traj.column("D_g2")[initial], 0.08, atol=1e-12)

    traj = trajectory(BellDiagonalState(0, 0, 0), 3.0, 601)
    for name in ("T", "D", "C", "T_g", "D_g", "C_g"):
        assert np.all(traj.column(name) == 0.0)


def test_trajectory_validation():
    with pytest.raises(ValueError):
        trajectory(REB_FREEZE_STATE, 3.0, 1)
    with pytest.raises(ValueError):
        trajectory(REB_FREEZE_STATE, 0.0, 10)
    with pytest.raises(NonPhysicalState):
        trajectory(BellDiagonalState(1, 1, 1))


def test_first_crossing_examples():
    nu1 = first_crossing(REB_FREEZE_STATE)
    assert nu1 == pytest.approx(REB_FREEZE_CROSSING, abs=1e-10)
    assert lambda_factor(nu1) ** 2 == pytest.approx(0.6, abs=1e-10)
    nu2 = first_crossing(GEO_FREEZE_STATE)
    assert nu2 == pytest.approx(GEO_FREEZE_CROSSING, abs=1e-10)
    assert 0.6 * lambda_factor(nu2) ** 2 == pytest.approx(0.4, abs=1e-10)
    assert first_crossing(BellDiagonalState(0, 0, 0.5)) is None
    assert first_crossing(BellDiagonalState(0.5, 0, 0)) is None
    assert first_crossing(BellDiagonalState(0, 0, 0)) is None


@pytest.mark.parametrize("s0", [REB_FREEZE_STATE, GEO_FREEZE_STATE, BellDiagonalState(-0.3, 0.8, 0.1)])
def test_crossing_is_a_sign_change_of_the_dominance_gap(s0):
    nu = first_crossing(s0)

    def gap(x):
        return max(abs(s0.c1), abs(s0.c2)) * lambda_factor(x) ** 2 - abs(s0.c3)

    assert gap(nu - 1e-6) > 0 > gap(nu + 1e-6)
    grid = np.linspace(0, nu - 1e-9, 2000)
    assert all(gap(float(x)) > 0 for x in grid)


def test_crossing_when_transverse_term_regrows():
    # c3 dominant at first but Lambda^2 never returns to 1, so no crossing
    assert first_crossing(BellDiagonalState(0.3, 0, 0.5)) is None
    # tiny c3: the first zero of Lambda^2 comes before any regrowth
    s0 = BellDiagonalState(0.9, 0, 0.01)
    nu = first_crossing(s0)
    assert 0 < nu < math.pi / P.mu


def test_closest_states_along_trajectory():
    for s0 in (REB_FREEZE_STATE, GEO_FREEZE_STATE, BellDiagonalState(0.2, -0.1, 0.7)):
        traj = trajectory(s0, 3.0, 301)
        for smp in traj.samples:
            np.testing.assert_array_equal(closest_product_state(smp.state), MAXIMALLY_MIXED)
            s = smp.state
            if abs(s.c3) > max(abs(s.c1), abs(s.c2)):
                assert closest_classical_state(s) == BellDiagonalState(0, 0, s0.c3)


@given(st.floats(-1, 1), st.floats(-1, 1))
def test_reb_freezing_family(c1, c3):
    if abs(c1) < abs(c3):
        c1, c3 = c3, c1
    assume(abs(c1) - abs(c3) >= 1e-3 and abs(c3) >= 1e-3)
    s0 = BellDiagonalState(c1, -c1 * c3, c3)
    nu_star = first_crossing(s0)
    nus = np.linspace(0, nu_star, 60, endpoint=False)
    reports = [full_report(evolve(s0, float(nu))) for nu in nus]
    d = np.array([r.D for r in reports])
    assert np.ptp(d) < 1e-9
    dg = np.array([r.D_g2 for r in reports])
    assert np.all(np.diff(dg) < 0)


@given(st.floats(0.01, 0.99), st.floats(0.01, 1), st.sampled_from([-1, 1]), st.sampled_from([-1, 1]))
def test_geometric_freezing_family(m1, u, sign1, sign3):
    # physical with c2 = 0 iff |c1| + |c3| <= 1
    bound = min(m1 - 1e-3, 1 - m1)
    assume(bound >= 1e-3)
    c3 = sign3 * max(u * bound, 1e-3)
    s0 = BellDiagonalState(sign1 * m1, 0.0, c3)
    nu_star = first_crossing(s0)
    nus = np.linspace(0, nu_star, 60, endpoint=False)
    reports = [full_report(evolve(s0, float(nu))) for nu in nus]
    np.testing.assert_allclose([r.D_g for r in reports], c3 * c3 / 4, atol=1e-12)
    assert np.ptp([r.D for r in reports]) > 0


def _sign_agreement(a, b, floor=1e-8):
    da, db = np.diff(a), np.diff(b)
    mask = (np.abs(da) > floor) & (np.abs(db) > floor)
    return bool(np.all(np.sign(da[mask]) == np.sign(db[mask]))), int(mask.sum())


@pytest.mark.parametrize("s0", [REB_FREEZE_STATE, GEO_FREEZE_STATE])
def test_total_and_classical_co_monotone(s0):
    traj = trajectory(s0)
    # C only moves while a transverse coefficient dominates, so it has far fewer informative steps
    for reb, geo, min_count in (("T", "T_g", 500), ("C", "C_g", 10)):
        ok, count = _sign_agreement(traj.column(reb), traj.column(geo))
        assert ok and count >= min_count

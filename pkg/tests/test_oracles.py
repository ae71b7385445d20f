import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bellcorr import oracles
from bellcorr.correlations import full_report
from bellcorr.entropy import hs_distance_sq
from bellcorr.errors import AppendixViolation, NotConverged
from bellcorr.oracles import (
    GridSpec,
    Measurement,
    discord_gap,
    geometric_discord_bruteforce,
    measure_A,
    minimize_product_distance,
    original_discord,
    product_distance,
    product_distance_matrix,
)
from bellcorr.qstate import (
    I2,
    MAXIMALLY_MIXED,
    BellDiagonalState,
    check_density_matrix,
    random_density_matrix,
    random_physical_state,
    to_density_matrix,
)

from .conftest import physical_states

X_AXIS = Measurement(math.pi / 2, 0.0)
Z_AXIS = Measurement(0.0, 0.0)
REB_FREEZE = BellDiagonalState(1, -0.6, 0.6)
GEO_FREEZE = BellDiagonalState(0.6, 0, 0.4)
SCAN_STATE = BellDiagonalState(0.2, math.sqrt(0.21), 0.2)

bloch_vectors = st.tuples(*(st.floats(-1, 1),) * 3).map(np.array).filter(lambda v: v @ v <= 1)


def _literal_measurement(rho, m):
    return sum(np.kron(p, I2) @ rho @ np.kron(p, I2) for p in m.projectors())


def test_measure_examples():
    for m in (X_AXIS, Z_AXIS, Measurement(0.3, 2.0)):
        np.testing.assert_allclose(measure_A(MAXIMALLY_MIXED, m), MAXIMALLY_MIXED, atol=1e-15)
    chi = to_density_matrix(BellDiagonalState(1, 0, 0))
    np.testing.assert_allclose(measure_A(chi, X_AXIS), chi, atol=1e-15)
    np.testing.assert_allclose(
        measure_A(to_density_matrix(REB_FREEZE), Z_AXIS), to_density_matrix(BellDiagonalState(0, 0, 0.6)), atol=1e-15
    )


def test_measure_matches_kronecker_construction_and_is_idempotent(rng):
    for _ in range(50):
        rho = random_density_matrix(rng)
        m = Measurement(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
        out = measure_A(rho, m)
        np.testing.assert_allclose(out, _literal_measurement(rho, m), atol=1e-14)
        np.testing.assert_allclose(measure_A(out, m), out, atol=1e-12)
        check_density_matrix(out)
        assert np.linalg.eigvalsh(out)[0] > -1e-12


def test_measurement_axis_is_unit():
    for theta, phi in [(0, 0), (1.0, 2.0), (math.pi, 5.0)]:
        assert np.linalg.norm(Measurement(theta, phi).axis) == pytest.approx(1.0, abs=1e-12)
    m = Measurement.along([0, 0, -2])
    np.testing.assert_allclose(m.axis, [0, 0, -1], atol=1e-15)


def test_grid_objective_equals_full_spectrum_definition(rng):
    # the block-spectrum shortcut must agree with I(rho) - I(Pi(rho)) from 4x4 spectra
    from bellcorr.entropy import von_neumann_entropy
    from bellcorr.qstate import partial_trace_b

    for _ in range(30):
        rho = random_density_matrix(rng)
        obj = oracles._discord_objective(rho, von_neumann_entropy(partial_trace_b(rho)), von_neumann_entropy(rho))
        theta, phi = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
        assert obj(theta, phi)[0] == pytest.approx(discord_gap(rho, Measurement(theta, phi)), abs=1e-10)


def test_original_discord_examples():
    assert original_discord(MAXIMALLY_MIXED).value == pytest.approx(0.0, abs=1e-12)
    res = original_discord(to_density_matrix(REB_FREEZE))
    assert res.value == pytest.approx(0.278071905112637652, abs=1e-4)
    assert abs(res.argmin.axis[0]) == pytest.approx(1.0, abs=1e-6)
    assert res.converged and res.evaluations > 181 * 361
    assert original_discord(to_density_matrix(GEO_FREEZE)).value == pytest.approx(0.236452797660028028, abs=1e-4)


def test_original_discord_of_pure_bell_state_is_one():
    phi_plus = to_density_matrix(BellDiagonalState(1, -1, 1))
    assert original_discord(phi_plus).value == pytest.approx(1.0, abs=1e-6)


def test_geometric_bruteforce_examples():
    assert geometric_discord_bruteforce(MAXIMALLY_MIXED).value == pytest.approx(0.0, abs=1e-15)
    assert geometric_discord_bruteforce(to_density_matrix(REB_FREEZE)).value == pytest.approx(0.18, abs=1e-6)
    assert geometric_discord_bruteforce(to_density_matrix(SCAN_STATE)).value == pytest.approx(0.02, abs=1e-6)


def test_oracles_match_closed_forms_on_random_states():
    rng = np.random.default_rng(2024)
    worst_delta = worst_geo = 0.0
    for _ in range(200):
        s = random_physical_state(rng)
        rho = to_density_matrix(s)
        report = full_report(s)
        worst_delta = max(worst_delta, abs(original_discord(rho).value - report.D))
        worst_geo = max(worst_geo, abs(geometric_discord_bruteforce(rho).value - report.D_g))
    assert worst_delta < 1e-4
    assert worst_geo < 1e-6


def test_optimal_axis_is_dominant_coordinate_axis():
    rng = np.random.default_rng(99)
    checked = 0
    while checked < 40:
        s = random_physical_state(rng)
        mags = sorted(abs(x) for x in s)
        if mags[2] - mags[1] < 0.05:
            continue
        k = full_report(s).dominant_index
        rho = to_density_matrix(s)
        for res in (original_discord(rho), geometric_discord_bruteforce(rho)):
            angle = math.acos(min(1.0, abs(res.argmin.axis[k - 1])))
            assert angle < 0.02
        checked += 1


def test_measurement_never_beats_closed_form_minimum(rng):
    for _ in range(50):
        s = random_physical_state(rng)
        rho = to_density_matrix(s)
        dg = full_report(s).D_g
        for _ in range(10):
            m = Measurement(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
            assert hs_distance_sq(rho, measure_A(rho, m)) >= dg - 1e-12


def test_coarse_grid_still_refines_to_minimum():
    res = geometric_discord_bruteforce(to_density_matrix(REB_FREEZE), GridSpec(7, 13))
    assert res.value == pytest.approx(0.18, abs=1e-9)


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(1, 10)


def test_product_distance_examples():
    s = REB_FREEZE
    assert product_distance(s, np.zeros(3), np.zeros(3)) == pytest.approx(s.norm_sq / 4)
    x = np.array([1.0, 0, 0])
    assert product_distance(s, x, x) == pytest.approx(0.68, abs=1e-15)
    assert product_distance_matrix(s, x, x) == pytest.approx(0.68, abs=1e-12)
    a, b = np.array([0.1, 0.2, -0.3]), np.array([0.5, 0, 0.5])
    a2, b2 = a @ a, b @ b
    assert product_distance(BellDiagonalState(0, 0, 0), a, b) == pytest.approx((a2 + b2 + a2 * b2) / 4)


@settings(max_examples=200)
@given(physical_states(), bloch_vectors, bloch_vectors)
def test_product_distance_formula_matches_matrices(s, a, b):
    assert product_distance(s, a, b) == pytest.approx(product_distance_matrix(s, a, b), abs=1e-12)


@pytest.mark.parametrize("s", [BellDiagonalState(0, 0, 0), REB_FREEZE, GEO_FREEZE])
def test_minimize_product_distance_examples(s):
    res = minimize_product_distance(s)
    a, b = res.argmin
    assert np.linalg.norm(a) < 1e-6 and np.linalg.norm(b) < 1e-6
    assert res.value == pytest.approx(s.norm_sq / 4, abs=1e-9)
    assert res.info["border_min"] > s.norm_sq / 4
    assert len(res.info["starts"]) == 20
    for value, size in res.info["starts"]:
        assert value == pytest.approx(s.norm_sq / 4, abs=1e-9) and size < 1e-6


def test_minimize_product_distance_on_random_states():
    rng = np.random.default_rng(5)
    for _ in range(100):
        s = random_physical_state(rng)
        res = minimize_product_distance(s, rng=rng)
        a, b = res.argmin
        assert max(np.linalg.norm(a), np.linalg.norm(b)) < 1e-6
        assert res.value == pytest.approx(s.norm_sq / 4, abs=1e-9)


def test_pure_fixed_point_map_stalls_when_a_coefficient_is_one():
    # without the Newton correction the iterate shrinks like 1/sqrt(n) along c_i = 1
    c = np.array([1.0, 0.0, 0.0])
    x = np.array([0.5, 0, 0, 0.5, 0, 0])
    for _ in range(10_000):
        x = oracles._stationarity_map(c, x)
    assert np.max(np.abs(x)) > 1e-3
    fixed, iters, ok = oracles.solve_stationarity(c, np.array([0.5, 0, 0, 0.5, 0, 0]))
    # the root is a cubic zero along c_i = 1, so Newton is only linear there
    assert ok and np.max(np.abs(fixed)) < 1e-6 and iters < 200


def test_lower_bound_violation_raised(monkeypatch):
    monkeypatch.setattr(oracles, "product_distance", lambda s, a, b: -1.0)
    with pytest.raises(AppendixViolation):
        minimize_product_distance(REB_FREEZE)


def test_not_converged_raised(monkeypatch):
    monkeypatch.setattr(oracles, "solve_stationarity", lambda c, x0: (x0, 10_000, False))
    with pytest.raises(NotConverged):
        minimize_product_distance(REB_FREEZE)


def test_refinement_not_converged(monkeypatch):
    values = iter(np.arange(10_000, 0, -1.0))

    def drifting(theta, phi):
        n = np.size(theta)
        return np.array([next(values) for _ in range(n)]) if n < 10 else np.full(n, 1e6)

    with pytest.raises(NotConverged):
        oracles._grid_then_refine(drifting, GridSpec(3, 3))

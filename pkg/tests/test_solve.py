import math

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from sector_jh.cubic import ComplexPair, FlowType, RealTriple
from sector_jh.errors import DomainError, NoSolutionError, UnsupportedRegionError
from sector_jh.integrals import I_minus, I_plus, I_type, J_plus, J_type
from sector_jh.solve import (
    SectorProblem,
    alpha_star_21,
    classify,
    e1_star,
    e2_star,
    gamma_star,
    half_plane_leading_order,
    periodic_roots,
    phi_max,
    solve_e2_on_level,
    solve_pure_outflow,
    solve_type_mm,
    trace_level_curve,
)
from sector_jh.solve.levels import fold_exists
from sector_jh.special import ellip_K

HALF_PI = math.pi / 2
ANGLE_LIMIT = 3.211351542112846797951466577542935452859
# mpmath root of I+(e1, 0) = pi/4 and the resulting maximum flux at alpha = 1
E1_STAR_QUARTER_PI = 12.39736384167070105541667839196340354137
E1_STAR_ONE = 6.022016484487371173561721829891459141291
PHI_MAX_10_ONE = 5.716996433871218325492631163427779312167
ALPHA_BAR = 1.406136603088469217232692892395817735858  # I+(1, 0)


def _assert_valid(s):
    assert s.residual_angle <= 1e-9
    assert s.residual_flux <= 1e-8 * max(1.0, abs(s.phi))
    assert abs(I_type(s.roots, s.flow_type) - s.alpha) <= 1e-9


# critical roots


def test_e1_star_values():
    assert e1_star(0.7854) > 0
    assert abs(I_plus(RealTriple(e1_star(0.7854), 0.0)) - 0.7854) <= 1e-11
    assert e1_star(math.pi / 4) == pytest.approx(E1_STAR_QUARTER_PI, rel=1e-12)
    assert e1_star(1.0) == pytest.approx(E1_STAR_ONE, rel=1e-12)


def test_e1_star_limits():
    assert e1_star(HALF_PI - 1e-6) < 1e-4
    a = 1e-3
    assert math.sqrt(e1_star(a)) * a == pytest.approx(ANGLE_LIMIT, rel=1e-4)
    with pytest.raises(DomainError):
        e1_star(HALF_PI)


def test_gamma_star():
    assert gamma_star(HALF_PI).gamma == 0.0
    g = gamma_star(2.0).gamma
    assert abs((g * g + 1) * ellip_K(g) ** 2 - 4.0) <= 1e-11
    assert gamma_star(math.pi - 1e-9).gamma < 1.0
    with pytest.raises(DomainError):
        gamma_star(1.0)


def test_e2_star():
    assert e2_star(HALF_PI) == pytest.approx(0.0, abs=1e-15)
    e2 = e2_star(2.0)
    assert -3.0 < e2 < 0.0
    assert abs(I_minus(RealTriple(0.0, e2)) - 2.0) <= 1e-9
    assert e2_star(2.5) < e2
    with pytest.raises(DomainError):
        e2_star(1.0)


def test_middle_root_decreases_with_modulus():
    e2s = [periodic_roots(1.3, g).e2 for g in np.linspace(0.0, 0.99, 200)]
    assert np.all(np.diff(e2s) < 0)


# level sets


def test_rising_level_set_start():
    t = FlowType(1, 2)
    assert solve_e2_on_level(0.9 * e1_star(1.0), 1.0, t) == []
    (e2,) = solve_e2_on_level(1.0 + 1e-6, ALPHA_BAR, t)
    assert -1e-4 < e2 < 0.0
    (e2,) = solve_e2_on_level(20.0, 1.0, t)
    assert abs(I_type(RealTriple(20.0, e2), t) - 1.0) <= 1e-9


def test_folded_level_set_two_roots():
    t = FlowType(2, 1)
    alpha = 1.0
    e1 = 0.95 * e1_star(alpha / 2)
    left, right = solve_e2_on_level(e1, alpha, t)
    assert left < right
    for e2 in (left, right):
        assert abs(I_type(RealTriple(e1, e2), t) - alpha) <= 1e-9
    mid = 0.5 * (left + right)
    assert I_type(RealTriple(e1, mid), t) < alpha
    assert solve_e2_on_level(0.5 * e1_star(alpha / 2), alpha, t) == []


def test_level_set_rejects():
    with pytest.raises(DomainError):
        solve_e2_on_level(-1.0, 1.0, FlowType(1, 2))
    with pytest.raises(DomainError):
        solve_e2_on_level(1.0, 1.0, FlowType(1, 1))


def test_trace_folded_curve():
    t = FlowType(2, 1)
    alpha = 1.0
    start = e1_star(alpha / 2)
    pts = trace_level_curve(t, alpha, 10 * start)
    assert len(pts) >= 100
    e1, e2, half = pts[0]
    assert e1 == pytest.approx(start, rel=1e-12) and e2 == 0.0
    assert half == pytest.approx(2 * J_plus(RealTriple(start, 0.0)), rel=1e-12)
    for e1, e2, _ in pts:
        assert abs(I_type(RealTriple(e1, e2), t) - alpha) <= 1e-9
    tail = [p for p in pts if p[0] >= 10 * start * 0.999]
    assert tail and tail[-1][2] < half


def test_trace_rising_curve():
    pts = trace_level_curve(FlowType(1, 2), 1.0, 200.0, n_min=50)
    assert len(pts) == 50
    for e1, e2, half in pts:
        assert abs(I_type(RealTriple(e1, e2), FlowType(1, 2)) - 1.0) <= 1e-9


# maximum fluxes


def test_phi_max_frozen_and_limits():
    assert phi_max(FlowType(1, 0), 1.0).value == pytest.approx(PHI_MAX_10_ONE, rel=1e-12)
    assert 0.01 * phi_max(FlowType(1, 0), 0.01).value == pytest.approx(3 * math.pi, rel=0.02)
    d = 0.01
    assert phi_max(FlowType(1, 0), HALF_PI - d).value / d == pytest.approx(8.0, rel=0.02)
    assert abs(phi_max(FlowType(1, 1), HALF_PI).value) <= 1e-8


def test_phi_max_domains():
    with pytest.raises(DomainError):
        phi_max(FlowType(1, 0), HALF_PI)
    with pytest.raises(DomainError):
        phi_max(FlowType(2, 0), math.pi)
    r = phi_max(FlowType(0, 1), 1.0)
    assert r.value == 0.0 and r.attained is False


def test_inflow_max_matches_periodic_above_right_angle():
    for a in (1.8, 2.4):
        assert phi_max(FlowType(0, 1), a).value == pytest.approx(
            phi_max(FlowType(1, 1), a).value, rel=1e-10)
        assert phi_max(FlowType(0, 1), a).attained is True


def test_periodic_max_below_right_angle_matches_outflow():
    for a in (0.4, 1.0, 1.5):
        assert phi_max(FlowType(1, 1), a).value == pytest.approx(
            phi_max(FlowType(1, 0), a).value, rel=1e-12)


def test_scaling_law():
    for m in (2, 3, 4):
        for a in (0.5, 1.0, 2.0):
            lhs = phi_max(FlowType(m, m), a).value
            assert abs(lhs - m * phi_max(FlowType(1, 0), a / m).value) <= 1e-8


def test_rising_max_beats_periodic_at_alpha_bar():
    assert phi_max(FlowType(1, 2), ALPHA_BAR).value > phi_max(FlowType(1, 1), ALPHA_BAR).value
    assert phi_max(FlowType(1, 2), ALPHA_BAR).value > 2 * J_type(RealTriple(1.0, 0.0), FlowType(1, 2))


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_ordering_chain(alpha):
    slack = 1e-10
    for m in (1, 2):
        mm = phi_max(FlowType(m, m), alpha).value
        up = phi_max(FlowType(m, m + 1), alpha).value
        nxt = phi_max(FlowType(m + 1, m + 1), alpha).value
        down = phi_max(FlowType(m + 1, m), alpha).value
        assert mm < up - 1e-8
        assert up <= m / (m + 1) * nxt * (1 + slack)
        assert m / (m + 1) * nxt < nxt - 1e-8
        assert nxt <= down * (1 + slack)


def test_periodic_max_decreasing_and_bounded():
    alphas = np.linspace(0.05, math.pi - 0.05, 60)
    vals = [phi_max(FlowType(1, 1), a).value for a in alphas]
    assert np.all(np.diff(vals) < 0)
    for a, v in zip(alphas, vals):
        assert v < math.pi ** 2 / a - 4 * a


@pytest.mark.parametrize("t,alpha", [((1, 0), 1.0), ((0, 1), 2.0), ((1, 2), 1.0), ((2, 1), 1.0),
                                     ((2, 3), 0.7), ((3, 2), 0.7), ((2, 0), 1.2)])
def test_argmax_on_level_set(t, alpha):
    t = FlowType(*t)
    r = phi_max(t, alpha)
    assert abs(I_type(r.argmax, t) - alpha) <= 1e-9
    assert r.value == pytest.approx(2 * J_type(r.argmax, t), rel=1e-12)


def test_attainability_flags():
    assert phi_max(FlowType(1, 2), 1.0).attained is True
    assert phi_max(FlowType(1, 2), 2.0).attained is None
    assert phi_max(FlowType(2, 2), 1.0).attained is False


# classification


def test_classify_examples():
    assert not classify(SectorProblem(2.0, 0.1, FlowType(1, 0))).exists
    assert classify(SectorProblem(HALF_PI, 0.02, FlowType(1, 2))).exists
    assert classify(SectorProblem(HALF_PI, -0.02, FlowType(0, 1))).exists
    assert not classify(SectorProblem(1.0, -1.0, FlowType(1, 0))).exists
    assert not classify(SectorProblem(1.0, 0.5, FlowType(0, 1))).exists
    assert not classify(SectorProblem(1.0, 1e3, FlowType(1, 1))).exists


def test_problem_validation():
    with pytest.raises(DomainError):
        SectorProblem(0.0, 1.0, FlowType(1, 0))
    with pytest.raises(DomainError):
        SectorProblem(math.pi, 1.0, FlowType(1, 0))
    with pytest.raises(DomainError):
        SectorProblem(1.0, math.nan, FlowType(1, 0))


def test_non_uniqueness_straddles_argmax():
    lo = phi_max(FlowType(1, 1), ALPHA_BAR).value
    top = phi_max(FlowType(1, 2), ALPHA_BAR)
    ex = classify(SectorProblem(ALPHA_BAR, 0.5 * (lo + top.value), FlowType(1, 2)))
    assert ex.count_lower_bound == len(ex.solutions) == 2
    a, b = sorted(s.e1 for s in ex.solutions)
    assert a < top.argmax.e1 < b and b - a > 1e-4
    for s in ex.solutions:
        _assert_valid(s)


def test_single_branch_below_periodic_max():
    lo = phi_max(FlowType(1, 1), 1.0).value
    ex = classify(SectorProblem(1.0, lo - 1.0, FlowType(1, 2)))
    assert ex.count_lower_bound == 1


def test_wide_rising_type_reports_one_branch():
    ex = classify(SectorProblem(2.0, phi_max(FlowType(1, 2), 2.0).value - 0.5, FlowType(1, 2)))
    assert ex.count_lower_bound == 1 and ex.notes


def test_boundary_case_returns_limiting_solution():
    pm = phi_max(FlowType(2, 2), 1.0).value
    ex = classify(SectorProblem(1.0, pm, FlowType(2, 2)))
    assert ex.boundary_case and ex.exists
    (s,) = ex.solutions
    assert s.flow_type == FlowType(2, 0)
    assert s.roots.e2 == 0.0
    _assert_valid(s)
    ex = classify(SectorProblem(1.0, phi_max(FlowType(1, 0), 1.0).value, FlowType(1, 0)))
    assert ex.boundary_case and ex.solutions[0].roots.e2 == 0.0


def test_two_zero_only_at_boundary():
    ex = classify(SectorProblem(1.0, 1.0, FlowType(2, 0)))
    assert not ex.exists


def test_unsupported_region():
    with pytest.raises(UnsupportedRegionError):
        classify(SectorProblem(2.5, 1.0, FlowType(2, 1)))


def test_complex_pair_outflow():
    ex = classify(SectorProblem(0.5, 0.5, FlowType(1, 0)))
    (s,) = ex.solutions
    assert isinstance(s.roots, ComplexPair)
    _assert_valid(s)


def test_outflow_unique_from_two_starts():
    alpha, phi = 0.9, 3.0
    top = e1_star(alpha)
    a = solve_pure_outflow(alpha, phi, bracket=(1e-6 * top, top)).e1
    mid = solve_pure_outflow(alpha, phi).e1
    b = solve_pure_outflow(alpha, phi, bracket=(0.5 * mid, top)).e1
    assert abs(a - b) <= 1e-9 * mid


def test_solve_type_mm_examples():
    s = solve_type_mm(1.0, -5.0, 1)
    assert s.e1 > 0 and s.roots.e2 < 0
    _assert_valid(s)
    s3 = solve_type_mm(2.4, -6.0, 3)
    s1 = solve_type_mm(0.8, -2.0, 1)
    assert s3.roots.e1 == pytest.approx(s1.roots.e1, rel=1e-12)
    assert s3.roots.e2 == pytest.approx(s1.roots.e2, rel=1e-12)
    with pytest.raises((NoSolutionError, DomainError)):
        solve_type_mm(HALF_PI, 0.0, 1)


_TYPES = [(1, 0), (0, 1), (1, 1), (2, 2), (1, 2), (2, 1), (2, 3), (3, 2), (3, 3)]


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(_TYPES), st.floats(0.2, 1.5), st.floats(0.02, 0.98))
def test_roundtrip_property(t, alpha, frac):
    t = FlowType(*t)
    top = phi_max(t, alpha).value
    phi = frac * top if t == FlowType(1, 0) else top - 30.0 * frac
    for s in classify(SectorProblem(alpha, phi, t)).solutions:
        _assert_valid(s)


# critical angle and half plane


def test_alpha_star():
    a = alpha_star_21()
    assert a >= HALF_PI and a >= 2.232 - 0.01 and a < math.pi
    assert fold_exists(a - 1e-6)
    assert not fold_exists(a + 1e-6)
    assert alpha_star_21() == a


def test_half_plane():
    pos = half_plane_leading_order(0.02)
    assert (pos.upstream, pos.downstream) == (FlowType(0, 1), FlowType(1, 2))
    assert (pos.left, pos.right) == (FlowType(0, 1), FlowType(1, 2))
    neg = half_plane_leading_order(-0.02)
    assert (neg.left, neg.right) == (FlowType(1, 2), FlowType(0, 1))
    for s in (pos.left_solution, pos.right_solution):
        _assert_valid(s)
        assert s.alpha == HALF_PI


@pytest.mark.parametrize("phi", [0.0, 1 / 36, -0.05])
def test_half_plane_domain(phi):
    with pytest.raises(DomainError):
        half_plane_leading_order(phi)

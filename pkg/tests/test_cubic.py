import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sector_jh.cubic import (
    ComplexPair,
    CubicCoeffs,
    FlowType,
    RealTriple,
    admissible,
    coeffs,
    eval_Q,
    make_real_triple,
    make_roots,
    modulus,
)
from sector_jh.errors import DegenerateError, InvalidFlowTypeError, OrderingError
from sector_jh.solve import periodic_roots
from sector_jh.special import ellip_K


@st.composite
def real_triples(draw):
    e1 = draw(st.floats(0.0, 1e3))
    u = draw(st.floats(0.0, 1.0))
    return make_real_triple(e1, -u * (3.0 + 0.5 * e1))


def test_sum_constraint_examples():
    assert make_real_triple(1.0, 0.0).roots == (1.0, 0.0, -7.0)
    assert make_real_triple(0.0, -3.0).roots == (0.0, -3.0, -3.0)


@pytest.mark.parametrize("e1,e2", [(2.0, -5.0), (0.0, 1.0), (1.0, 2.0)])
def test_ordering_violations(e1, e2):
    with pytest.raises(OrderingError):
        make_real_triple(e1, e2)


def test_eval_q_examples():
    r = make_real_triple(1.0, 0.0)
    assert eval_Q(r, 1.0) == 0.0
    assert eval_Q(r, 0.5) == pytest.approx(1.25, rel=1e-15)
    assert eval_Q(ComplexPair(1.0, 2.0), 1.0) == 0.0


def test_complex_pair_validation():
    with pytest.raises(OrderingError):
        ComplexPair(1.0, 0.0)
    assert ComplexPair(2.0, 1.0).real_part == -4.0


def test_small_c_collapses_to_double_root():
    r = make_roots(2.0, 1e-13)
    assert isinstance(r, RealTriple)
    assert r.e2 == r.e3 == -4.0
    assert isinstance(make_roots(2.0, 1e-3), ComplexPair)


@settings(max_examples=300, deadline=None)
@given(real_triples(), st.floats(0.0, 1.0))
def test_factored_matches_expanded(roots, s):
    c = coeffs(roots)
    f = roots.e2 - 1.0 + s * (roots.e1 - roots.e2 + 2.0)
    expanded = -2 / 3 * f ** 3 - 4 * f ** 2 + 2 * c.b * f + 2 * c.E0
    scale = 2 / 3 * abs(f) ** 3 + 4 * f * f + 2 * abs(c.b * f) + 2 * abs(c.E0)
    assert abs(eval_Q(roots, f) - expanded) <= 1e-12 * max(scale, 1e-300)


def test_quadratic_coefficient_is_minus_four():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        e1 = float(rng.uniform(0.0, 100.0))
        r = make_real_triple(e1, -float(rng.uniform(0.0, 1.0)) * (3.0 + 0.5 * e1))
        # -2/3 (f - e1)(f - e2)(f - e3) has f^2 coefficient 2/3 (e1 + e2 + e3);
        # e3 is derived from the other two, so the sum is off by rounding only
        size = sum(abs(e) for e in r.roots)
        assert abs(2 / 3 * sum(r.roots) + 4.0) <= 4 * np.finfo(float).eps * size


def test_coeffs_reproduce_polynomial():
    r = make_real_triple(1.0, -0.5)
    c = CubicCoeffs.from_roots(r)
    e1, e2, e3 = r.roots
    assert c.b == pytest.approx(-(e1 * e2 + e2 * e3 + e1 * e3) / 3)
    assert c.E0 == pytest.approx(e1 * e2 * e3 / 3)


def test_complex_pair_coefficients_are_real():
    r = ComplexPair(2.0, 1.5)
    c = coeffs(r)
    for f in (0.0, 0.7, 2.0):
        expanded = -2 / 3 * f ** 3 - 4 * f ** 2 + 2 * c.b * f + 2 * c.E0
        assert eval_Q(r, f) == pytest.approx(expanded, abs=1e-12)


def test_modulus_examples():
    assert modulus(make_real_triple(1.0, 0.0)).gamma == pytest.approx(math.sqrt(1 / 8), rel=1e-15)
    assert modulus(make_real_triple(2.0, 2.0)).gamma == 0.0
    with pytest.raises(DegenerateError):
        modulus(make_real_triple(0.0, -3.0))


@settings(max_examples=100, deadline=None)
@given(st.floats(0.2, 3.0), st.floats(1e-3, 0.99))
def test_modulus_roundtrip_through_periodic_roots(beta, g):
    # below ~1e-3 the gap e1 - e2 ~ g^2 drowns in the rounding of e1
    r = periodic_roots(beta, g)
    assert modulus(r).gamma == pytest.approx(g, rel=1e-12, abs=1e-12)


def test_periodic_roots_formula():
    beta, g = 1.2, 0.4
    k = ellip_K(g)
    r = periodic_roots(beta, g)
    assert r.e1 == pytest.approx(-2 + 2 / beta ** 2 * (g * g + 1) * k * k, rel=1e-14)
    assert r.e2 == pytest.approx(-2 - 2 / beta ** 2 * (2 * g * g - 1) * k * k, rel=1e-14)


def test_admissible_examples():
    assert admissible(ComplexPair(2.0, 1.0), FlowType(1, 0))
    assert not admissible(ComplexPair(2.0, 1.0), FlowType(1, 1))
    assert not admissible(RealTriple(-1.0, -2.0), FlowType(1, 0))
    assert admissible(RealTriple(1.0, 0.0), FlowType(1, 0))
    assert admissible(RealTriple(1.0, -0.5), FlowType(1, 2))
    assert not admissible(RealTriple(1.0, 0.5), FlowType(1, 1))


@pytest.mark.parametrize("mp,mm", [(0, 0), (3, 1), (1, 3), (-1, 0), (0, 2)])
def test_invalid_flow_types(mp, mm):
    with pytest.raises(InvalidFlowTypeError):
        FlowType(mp, mm)


def test_flow_type_parse_and_kind():
    assert FlowType.parse("(1,2)") == FlowType(1, 2)
    assert str(FlowType(2, 1)) == "(2,1)"
    assert FlowType(2, 2).kind == "mm"
    assert FlowType(1, 2).kind == "m_m1"
    assert FlowType(2, 1).kind == "m1_m"
    assert FlowType(1, 0).kind == "m1_m"
    assert FlowType(3, 0).kind == "m0"
    with pytest.raises(InvalidFlowTypeError):
        FlowType.parse("1;2")

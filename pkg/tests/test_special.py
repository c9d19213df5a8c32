import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sector_jh.acceptance import lanczos_gamma
from sector_jh.errors import DomainError, QuadratureError
from sector_jh.special import GAMMA_MAX, H, Modulus, dK_dgamma, ellip_E, ellip_K, quad_singular

# 40-digit mpmath values (ellipk/ellipe with parameter gamma^2), frozen
K_REF = {
    0.1: 1.574745561517355952669030688659860091647,
    0.3: 1.608048619930512801267207222238687157112,
    0.5: 1.685750354812596042871203657799076989501,
    0.7: 1.845693998374723517586528654884219835318,
    0.9: 2.280549138422770204613751944555530438743,
    0.99: 3.356600523361192376033470428314297327511,
}
E_REF = {
    0.1: 1.566861942021668291220474975834679707221,
    0.3: 1.534833464923249041645303537475267117197,
    0.5: 1.467462209339427155459795266990916136025,
    0.7: 1.355661135571955464314692544978484727509,
    0.9: 1.171697052781614141185913957957410257425,
    0.99: 1.028475809028804000983887138518021736657,
}
K_EIGHTH = 1.623666692621027323464926297218007730743  # K(sqrt(1/8))
H_HALF = 2.448254867390157715129941694438995996804
ANGLE_LIMIT = 3.211351542112846797951466577542935452859  # sqrt(6 pi) G(5/4)/G(3/4)
FLUX_LIMIT = 1.467416107700331192416547425809929148241  # sqrt(2 pi/3) G(7/4)/G(5/4)


@pytest.mark.parametrize("g", sorted(K_REF))
def test_agm_matches_reference(g):
    assert ellip_K(g) == pytest.approx(K_REF[g], rel=1e-13)
    assert ellip_E(g) == pytest.approx(E_REF[g], rel=1e-13)


def test_values_at_zero():
    assert ellip_K(0.0) == math.pi / 2
    assert ellip_E(0.0) == math.pi / 2
    assert H(0.0) == pytest.approx(math.pi ** 2 / 4, abs=1e-15)


def test_k_at_root_eighth():
    assert ellip_K(math.sqrt(1 / 8)) == pytest.approx(K_EIGHTH, rel=1e-14)


def test_k_grows_toward_one():
    assert ellip_K(0.99) > ellip_K(0.9)
    assert math.isfinite(ellip_K(GAMMA_MAX))


def test_e_limit_at_one():
    assert ellip_E(1.0) == 1.0
    assert ellip_E(1.0 - 1e-12) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("bad", [-0.1, 1.0, 1.5, math.nan])
def test_modulus_rejects(bad):
    with pytest.raises(DomainError):
        Modulus(bad)
    with pytest.raises(DomainError):
        ellip_K(bad)


def test_modulus_cutoff():
    Modulus(GAMMA_MAX)
    with pytest.raises(DomainError):
        Modulus(1.0 - 1e-11)


@pytest.mark.parametrize("g", sorted(K_REF))
def test_agm_against_defining_integral(g):
    # K = int_0^1 dt / sqrt((1 - t^2)(1 - g^2 t^2)), singular at t = 1
    def integrand(t, _, one_minus_t):
        return 1.0 / np.sqrt(one_minus_t * (1.0 + t) * (1.0 - g * g * t * t))

    k = quad_singular(integrand, 0.0, 1.0, (False, True), with_gaps=True)
    assert k == pytest.approx(ellip_K(g), rel=1e-10)


def test_e_against_defining_integral():
    g = 0.5

    def integrand(t, _, one_minus_t):
        return np.sqrt(1.0 - g * g * t * t) / np.sqrt(one_minus_t * (1.0 + t))

    val = quad_singular(integrand, 0.0, 1.0, (False, True), with_gaps=True)
    assert val == pytest.approx(ellip_E(g), rel=1e-11)


def test_dk_formula_at_half():
    g = 0.5
    expected = ellip_E(g) / (g * (1 - g * g)) - ellip_K(g) / g
    assert dK_dgamma(g) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("g", [0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
def test_dk_finite_difference(g):
    h = 1e-6
    fd = (ellip_K(g + h) - ellip_K(g - h)) / (2 * h)
    assert dK_dgamma(g) == pytest.approx(fd, rel=1e-6)


def test_dk_small_gamma_series():
    assert dK_dgamma(0.0) == 0.0
    assert dK_dgamma(1e-9) == pytest.approx(math.pi / 4 * 1e-9, rel=1e-6)
    # the series and the closed form meet smoothly
    assert dK_dgamma(1.0001e-3) == pytest.approx(dK_dgamma(0.9999e-3), rel=1e-3)


def test_h_examples():
    assert H(0.5) == pytest.approx(H_HALF, rel=1e-13)
    assert H(0.5) < H(0.4)
    assert H(0.999) < -6.0


def test_h_strictly_decreasing_on_grid():
    hs = np.array([H(g) for g in np.linspace(0.0, 0.999, 1000)])
    assert np.all(np.diff(hs) < 0)


def test_ratio_bounds():
    for g in np.linspace(0.001, 0.999, 300):
        r = ellip_E(g) / ellip_K(g)
        assert 1 - g * g < r < 1 - g * g / 2


@settings(max_examples=200, deadline=None)
@given(st.floats(0.0, 0.9999), st.floats(0.0, 0.9999))
def test_monotone_pairs(a, b):
    lo, hi = sorted((a, b))
    if hi - lo < 1e-4:
        return
    assert ellip_K(lo) < ellip_K(hi)
    assert ellip_E(lo) > ellip_E(hi)
    assert H(lo) > H(hi)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-4, 0.999))
def test_legendre_relation(g):
    # E K' + E' K - K K' = pi/2 with primes at the complementary modulus
    gc = math.sqrt((1 - g) * (1 + g))
    k, e, kc, ec = ellip_K(g), ellip_E(g), ellip_K(gc), ellip_E(gc)
    assert e * kc + ec * k - k * kc == pytest.approx(math.pi / 2, rel=1e-12)


def test_quad_arcsine():
    val = quad_singular(lambda g, da, db: 1 / np.sqrt(4 * da * db), 0.0, 1.0, with_gaps=True)
    assert val == pytest.approx(math.pi / 2, rel=1e-12)


def test_quad_without_gaps_is_coarser():
    # 1 - x loses digits next to the singular end, costing about sqrt(eps)
    val = quad_singular(lambda g: 1 / np.sqrt(4 * (1 - g) * g), 0.0, 1.0)
    assert val == pytest.approx(math.pi / 2, rel=1e-7)


def test_quad_gamma_ratio_integrals():
    def angle(g, _, one_minus_g):
        return 1 / np.sqrt(2 / 3 * one_minus_g * g * (g + 1))

    def flux(g, _, one_minus_g):
        return g / np.sqrt(2 / 3 * one_minus_g * g * (g + 1))

    assert quad_singular(angle, 0.0, 1.0, with_gaps=True) == pytest.approx(ANGLE_LIMIT, rel=1e-11)
    assert quad_singular(flux, 0.0, 1.0, with_gaps=True) == pytest.approx(FLUX_LIMIT, rel=1e-11)


def test_quad_is_deterministic():
    f = lambda x: 1 / np.sqrt(x)  # noqa: E731
    assert quad_singular(f, 0.0, 2.0, (True, False)) == quad_singular(f, 0.0, 2.0, (True, False))


def test_quad_reports_failure():
    with pytest.raises(QuadratureError):
        quad_singular(lambda x: np.sign(np.sin(400 * x)) / np.sqrt(x), 0.0, 1.0, max_level=3)


def test_lanczos_oracle():
    assert lanczos_gamma(5.0) == pytest.approx(24.0, rel=1e-14)
    assert lanczos_gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert lanczos_gamma(0.75) * lanczos_gamma(0.25) == pytest.approx(math.pi * math.sqrt(2), rel=1e-13)


def test_gamma_limit_product():
    g = lanczos_gamma
    a = math.sqrt(6 * math.pi) * g(1.25) / g(0.75)
    b = math.sqrt(2 * math.pi / 3) * g(1.75) / g(1.25)
    assert a == pytest.approx(ANGLE_LIMIT, rel=1e-13)
    assert b == pytest.approx(FLUX_LIMIT, rel=1e-13)
    assert 2 * a * b == pytest.approx(3 * math.pi, rel=1e-10)

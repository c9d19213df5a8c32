"""Maximum fluxes per flow type."""

from __future__ import annotations

import math
from functools import lru_cache

from ..cubic import FlowType, RealTriple
from ..errors import DomainError
from ..integrals import J_minus, J_plus
from .critical import HALF_PI, e1_star, e2_star, gamma_edge, periodic_flux
from .levels import folded_curve, rising_curve
from .types import PhiMaxResult


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 < alpha < math.pi):
        raise DomainError(f"alpha must lie in (0, pi), got {alpha!r}")
    return alpha


def phi_max_periodic(alpha: float, m: int) -> PhiMaxResult:
    """Supremum of the flux over type (m, m) flows, from the closed form.

    Fluxes of whole-period flows decrease with the modulus, so the supremum
    sits at the smallest admissible modulus: ``e2 = 0`` below ``beta = pi/2``
    and ``e1 = 0`` above.  Neither limit is itself a type (m, m) flow.
    """
    beta = alpha / m
    edge = gamma_edge(beta)
    value = m * periodic_flux(beta, edge)
    if beta < HALF_PI:
        return PhiMaxResult(value, RealTriple(e1_star(beta), 0.0), False, FlowType(m, 0))
    if edge.gamma == 0.0:
        # beta = pi/2: the limit is the trivial flow
        return PhiMaxResult(0.0, None, False, None)
    return PhiMaxResult(value, RealTriple(0.0, e2_star(beta)), False, FlowType(0, 1))


@lru_cache(maxsize=1024)
def phi_max(t: FlowType, alpha: float) -> PhiMaxResult:
    """Maximum flux of type ``t`` at half-angle ``alpha`` with its argmax.

    Raises :class:`DomainError` where the type cannot fill the sector and
    :class:`UnsupportedRegionError` for (2,1) above the critical angle.
    """
    alpha = _check_alpha(alpha)
    mp, mm = t.m_plus, t.m_minus
    if (mp, mm) == (1, 0):
        if alpha >= HALF_PI:
            raise DomainError("pure outflow needs alpha < pi/2")
        e1 = e1_star(alpha)
        roots = RealTriple(e1, 0.0)
        return PhiMaxResult(2.0 * J_plus(roots), roots, True, t)
    if (mp, mm) == (0, 1):
        if alpha <= HALF_PI:
            return PhiMaxResult(0.0, None, False, None)
        roots = RealTriple(0.0, e2_star(alpha))
        return PhiMaxResult(2.0 * J_minus(roots), roots, True, t)
    if mp == mm:
        return phi_max_periodic(alpha, mp)
    if mm == 0:
        beta = alpha / mp
        if beta >= HALF_PI:
            raise DomainError(f"type {t} needs alpha < {mp}*pi/2")
        roots = RealTriple(e1_star(beta), 0.0)
        return PhiMaxResult(2.0 * mp * J_plus(roots), roots, True, t)
    if mm == mp + 1:
        curve = rising_curve(t, alpha)
        top = curve.maximum()
        attained = None if (mp == 1 and alpha > HALF_PI) else True
        return PhiMaxResult(2.0 * top.half_flux, RealTriple(top.e1, top.e2), attained, t)
    curve = folded_curve(t, alpha)
    top = curve.maximum()
    return PhiMaxResult(2.0 * top.half_flux, RealTriple(top.e1, top.e2), True, t)

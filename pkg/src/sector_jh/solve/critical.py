"""Critical roots and the closed-form periodic family.

``e1_star(alpha)`` is where a single outflow arc with ``e2 = 0`` spans the
whole sector, ``gamma_star``/``e2_star`` play the same role for an inflow
arc with ``e1 = 0`` once ``alpha >= pi/2``.  Flows made of whole periods are
parametrised by the modulus: given ``beta`` (the angle of one period) and
``gamma``, the three roots follow in closed form.
"""

from __future__ import annotations

import math
from functools import lru_cache

from scipy.optimize import brentq

from ..cubic import RealTriple
from ..errors import DegenerateError, DomainError, NoSolutionError
from ..integrals import I_plus
from ..special import GAMMA_MAX, H, Modulus, complete_elliptic

HALF_PI = 0.5 * math.pi
# rtol floor accepted by brentq; xtol is effectively disabled
XTOL = 1e-300
RTOL = 4.0 * 2.220446049250313e-16

# rough large-e1 limit of sqrt(e1) I+(e1, 0), only used to seed the bracket
_LARGE_E1_CONST = 3.2


def find_root(fn, lo: float, hi: float) -> float:
    return brentq(fn, lo, hi, xtol=XTOL, rtol=RTOL, maxiter=400)


@lru_cache(maxsize=4096)
def e1_star(alpha: float) -> float:
    """The ``e1`` with ``I_plus(e1, 0) = alpha``, for ``0 < alpha < pi/2``."""
    alpha = float(alpha)
    if not (0.0 < alpha < HALF_PI):
        raise DomainError(f"e1_star needs 0 < alpha < pi/2, got {alpha!r}")

    def residual(log_e1: float) -> float:
        return I_plus(RealTriple(math.exp(log_e1), 0.0)) - alpha

    # initial guess from the two asymptotic regimes
    guess = max((_LARGE_E1_CONST / alpha) ** 2, 16.0 * (HALF_PI - alpha) / math.pi)
    lo = hi = math.log(guess)
    while residual(lo) <= 0.0:
        lo -= 2.0
    while residual(hi) >= 0.0:
        hi += 2.0
    return math.exp(find_root(residual, lo, hi))


def _period_angle_sq(gamma: float) -> float:
    k = complete_elliptic(gamma)[0]
    return (gamma * gamma + 1.0) * k * k


@lru_cache(maxsize=4096)
def gamma_star(alpha: float) -> Modulus:
    """Modulus with ``(gamma^2 + 1) K(gamma)^2 = alpha^2``, for ``alpha >= pi/2``."""
    alpha = float(alpha)
    if not (HALF_PI <= alpha < math.inf):
        raise DomainError(f"gamma_star needs alpha >= pi/2, got {alpha!r}")
    target = alpha * alpha
    if _period_angle_sq(GAMMA_MAX) < target:
        raise DegenerateError(f"gamma_star({alpha!r}) exceeds the modulus cap")
    if _period_angle_sq(0.0) >= target:
        return Modulus(0.0)
    return Modulus(find_root(lambda g: _period_angle_sq(g) - target, 0.0, GAMMA_MAX))


def e2_star(alpha: float) -> float:
    """Middle root of the pure-inflow triple ``(0, e2, -6 - e2)`` spanning ``alpha``."""
    mod = gamma_star(alpha)
    k = complete_elliptic(mod)[0]
    g2 = mod.gamma * mod.gamma
    return -2.0 - (2.0 / (alpha * alpha)) * (2.0 * g2 - 1.0) * k * k


def periodic_roots(beta: float, gamma: Modulus | float) -> RealTriple:
    """Roots of the flow whose full period spans ``beta`` with modulus ``gamma``."""
    mod = gamma if isinstance(gamma, Modulus) else Modulus(gamma)
    k = complete_elliptic(mod)[0]
    g2 = mod.gamma * mod.gamma
    scale = 2.0 * k * k / (beta * beta)
    e1 = -2.0 + scale * (g2 + 1.0)
    e2 = -2.0 - scale * (2.0 * g2 - 1.0)
    return RealTriple(e1, e2)


def periodic_flux(beta: float, gamma: Modulus | float) -> float:
    """Flux of one period from ``beta^2 + beta Phi/4 = H(gamma)``."""
    return 4.0 * (H(gamma) - beta * beta) / beta


def _middle_root_zero_sq(gamma: float) -> float:
    k = complete_elliptic(gamma)[0]
    return (1.0 - 2.0 * gamma * gamma) * k * k


@lru_cache(maxsize=4096)
def gamma_edge(beta: float) -> Modulus:
    """Smallest admissible modulus of a period spanning ``beta``.

    Below pi/2 the limit is ``e2 = 0``, i.e. ``(1 - 2 g^2) K^2 = beta^2``;
    from pi/2 on it is ``e1 = 0``, which is ``gamma_star``.
    """
    if beta >= HALF_PI:
        return gamma_star(beta)
    target = beta * beta
    # (1 - 2 g^2) K^2 decreases from pi^2/4 through 0 at g^2 = 1/2
    return Modulus(find_root(lambda g: _middle_root_zero_sq(g) - target, 0.0, math.sqrt(0.5)))


def solve_periodic(beta: float, phi: float) -> Modulus:
    """Modulus of the single period spanning ``beta`` with flux ``phi``."""
    target = beta * beta + 0.25 * beta * phi
    edge = gamma_edge(beta)
    if H(edge) <= target:
        raise NoSolutionError(
            f"flux {phi!r} is not below the periodic maximum at angle {beta!r}"
        )
    if H(GAMMA_MAX) >= target:
        raise DegenerateError(f"flux {phi!r} needs a modulus beyond the cap")
    return Modulus(find_root(lambda g: H(g) - target, edge.gamma, GAMMA_MAX))

"""Single-arc flows: pure outflow (1,0) and pure inflow (0,1)."""

from __future__ import annotations

import math

from ..cubic import RealTriple, RootTriple, make_roots
from ..errors import NoSolutionError
from ..integrals import I_minus, I_plus, J_minus, J_plus
from .critical import HALF_PI, e1_star, e2_star, find_root


def outflow_roots(e1: float, alpha: float) -> RootTriple | None:
    """Roots with the given ``e1`` whose outflow arc spans ``alpha``.

    ``I_plus`` increases with ``e2`` on the real branch and decreases with
    the imaginary part ``c`` of a complex pair, so the two branches together
    cover every angle below ``I_plus(e1, 0)``.
    """
    edge = I_plus(RealTriple(e1, 0.0))
    if edge < alpha * (1.0 - 1e-13):
        return None
    if edge <= alpha:
        # within rounding of e1_star: the arc is the e2 = 0 edge itself
        return RealTriple(e1, 0.0)
    e2_low = -3.0 - 0.5 * e1
    if I_plus(RealTriple(e1, e2_low)) <= alpha:
        u_max = math.sqrt(-e2_low)
        u = find_root(lambda u: I_plus(RealTriple(e1, max(-u * u, e2_low))) - alpha,
                      0.0, u_max)
        return RealTriple(e1, max(-u * u, e2_low))

    def gap(x: float) -> float:
        return I_plus(make_roots(e1, math.exp(x))) - alpha

    x_lo = math.log(1e-12)
    if gap(x_lo) <= 0.0:
        return RealTriple(e1, e2_low)
    x_hi = math.log(2.0 * math.sqrt(1.5 * e1) / alpha + 1.0)
    while gap(x_hi) > 0.0:
        x_hi += 1.0
    return make_roots(e1, math.exp(find_root(gap, x_lo, x_hi)))


def outflow_half_flux(e1: float, alpha: float) -> tuple[RootTriple, float]:
    roots = outflow_roots(e1, alpha)
    if roots is None:
        raise NoSolutionError(f"no outflow arc with e1 = {e1!r} spans {alpha!r}")
    return roots, J_plus(roots)


def solve_pure_outflow(alpha: float, phi: float, bracket: tuple[float, float] | None = None) -> RootTriple:
    """Roots of the (1,0) flow, ``0 < phi < phi_max``.

    The half-flux grows monotonically with ``e1`` along the level set, so the
    flux condition is solved by bracketing ``log e1`` in ``(0, e1_star]``.
    ``bracket`` overrides the search interval in ``e1``.
    """
    target = 0.5 * phi
    top = e1_star(alpha)

    def gap(x: float) -> float:
        return outflow_half_flux(math.exp(x), alpha)[1] - target

    if bracket is None:
        x_hi = math.log(top)
        x_lo = x_hi - 3.0
        while gap(x_lo) >= 0.0:
            x_lo -= 3.0
            if x_lo < math.log(top) - 700.0:
                raise NoSolutionError("flux too small to resolve")
    else:
        x_lo, x_hi = math.log(bracket[0]), math.log(bracket[1])
    if gap(x_hi) < 0.0:
        raise NoSolutionError(f"flux {phi!r} is above the pure-outflow maximum")
    x = find_root(gap, x_lo, x_hi)
    return outflow_half_flux(math.exp(x), alpha)[0]


def inflow_e1(e2: float, alpha: float) -> float | None:
    """``e1`` such that the inflow arc with middle root ``e2`` spans ``alpha``."""
    e1_min = max(0.0, -6.0 - 2.0 * e2)

    def gap(x: float) -> float:
        return I_minus(RealTriple(e1_min + math.exp(x), e2)) - alpha

    if e1_min == 0.0:
        if I_minus(RealTriple(0.0, e2)) <= alpha:
            return None
        x_lo = math.log(1e-30)
        if gap(x_lo) <= 0.0:
            return 0.0
    else:
        x_lo = math.log(1e-8 * e1_min)
        while gap(x_lo) <= 0.0:
            x_lo -= 5.0
            if x_lo < -690.0:
                return None
    x_hi = math.log(-e2 + e1_min + 1.0)
    while gap(x_hi) >= 0.0:
        x_hi += 1.0
    return e1_min + math.exp(find_root(gap, x_lo, x_hi))


def solve_pure_inflow(alpha: float, phi: float) -> RealTriple:
    """Roots of the (0,1) flow with flux ``phi`` below its maximum.

    The half-flux increases with ``e2``; the search runs in ``log(-e2)`` up to
    ``e2 = 0`` (``alpha <= pi/2``) or ``e2_star(alpha)``.
    """
    target = 0.5 * phi

    def triple(y: float) -> RealTriple:
        e2 = -math.exp(y)
        e1 = inflow_e1(e2, alpha)
        if e1 is None:
            raise NoSolutionError("lost the inflow level set")
        return RealTriple(e1, e2)

    def gap(y: float) -> float:
        return J_minus(triple(y)) - target

    if alpha > HALF_PI:
        # e2 must not pass e2_star, i.e. y >= y_top; e1 = 0 exactly is the boundary
        y_top = math.log(-e2_star(alpha))
        y_near = y_top + 1e-12 * max(1.0, abs(y_top))
        while inflow_e1(-math.exp(y_near), alpha) is None:
            y_near = y_top + 2.0 * (y_near - y_top)
    else:
        y_near = math.log(1e-2 * abs(phi))
        while gap(y_near) <= 0.0:
            y_near -= 10.0
            if y_near < -690.0:
                raise NoSolutionError("flux too small to resolve")
    if gap(y_near) <= 0.0:
        raise NoSolutionError(f"flux {phi!r} is above the pure-inflow maximum")
    y_far = y_near + 1.0
    while gap(y_far) >= 0.0:
        y_far += 1.0
    return triple(find_root(gap, y_near, y_far))

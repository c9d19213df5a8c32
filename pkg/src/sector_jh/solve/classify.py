"""Existence classification and solution enumeration."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..cubic import FlowType, RealTriple
from ..errors import DomainError, NoSolutionError, UnsupportedRegionError
from .arcs import solve_pure_inflow, solve_pure_outflow
from .critical import HALF_PI, periodic_roots, solve_periodic
from .levels import alpha_star_21, folded_curve, rising_curve
from .maxflux import phi_max
from .types import BOUNDARY_TOL, Existence, SectorProblem, Solution, make_solution


def solve_type_mm(alpha: float, phi: float, m: int) -> Solution:
    """The type (m, m) flow, made of ``m`` identical periods of angle ``alpha/m``."""
    t = FlowType(m, m)
    beta = alpha / m
    mod = solve_periodic(beta, phi / m)
    roots = periodic_roots(beta, mod)
    if roots.e1 < 0.0 or roots.e2 > 0.0:
        raise NoSolutionError(f"flux {phi!r} is not below the type {t} maximum")
    return make_solution(roots, t, alpha, phi)


def _none(pm: float | None = None, *notes: str) -> Existence:
    return Existence(False, 0, (), False, pm, tuple(notes))


def _found(solutions: list[Solution], pm: float | None, boundary: bool = False,
           *notes: str) -> Existence:
    return Existence(True, len(solutions), tuple(solutions), boundary, pm, tuple(notes))


def classify(p: SectorProblem) -> Existence:
    """Decide existence for ``p`` and list the solutions found.

    Fluxes within 1e-8 of the maximum are reported as the boundary case with
    the limiting solution (which for (m, m) is of type (m, 0) or (0, 1)).
    """
    t, alpha, phi = p.flow_type, p.alpha, p.phi
    mp, mm = t.m_plus, t.m_minus

    if (mp, mm) == (1, 0):
        if alpha >= HALF_PI:
            return _none(None, "no pure outflow for alpha >= pi/2")
        if phi <= 0.0:
            return _none(None, "pure outflow needs a positive flux")
    if (mp, mm) == (0, 1) and alpha <= HALF_PI and phi >= 0.0:
        return _none(0.0, "pure inflow needs a negative flux for alpha <= pi/2")
    if t.kind == "m0" and alpha / mp >= HALF_PI:
        return _none(None, f"type {t} needs alpha < {mp}*pi/2")
    if (mp, mm) == (2, 1) and alpha > HALF_PI:
        star = alpha_star_21()
        if alpha > star:
            raise UnsupportedRegionError(
                f"type (2,1) at alpha = {alpha!r} lies above the critical angle {star:.6f}")

    pm = phi_max(t, alpha)
    if phi > pm.value + BOUNDARY_TOL:
        return _none(pm.value)
    if abs(phi - pm.value) <= BOUNDARY_TOL and (
            pm.argmax is not None or t.kind == "m0"):
        return _boundary(p, pm)
    if t.kind == "m0":
        return _none(pm.value, f"type {t} exists only at the maximum flux")

    if (mp, mm) == (1, 0):
        return _found([make_solution(solve_pure_outflow(alpha, phi), t, alpha, phi)], pm.value)
    if (mp, mm) == (0, 1):
        return _found([make_solution(solve_pure_inflow(alpha, phi), t, alpha, phi)], pm.value)
    if mp == mm:
        return _found([solve_type_mm(alpha, phi, mp)], pm.value)
    if mm == mp + 1:
        return _classify_rising(p, pm.value)
    return _classify_folded(p, pm.value)


def _boundary(p: SectorProblem, pm) -> Existence:
    t = p.flow_type
    limit_type = pm.argmax_type or t
    sol = make_solution(pm.argmax, limit_type, p.alpha, pm.value)
    notes = ()
    if limit_type != t:
        notes = (f"limiting solution of type {limit_type}",)
    return _found([sol], pm.value, True, *notes)


def _classify_rising(p: SectorProblem, pm_value: float) -> Existence:
    t, alpha, phi = p.flow_type, p.alpha, p.phi
    curve = rising_curve(t, alpha)
    left, right = curve.crossings(0.5 * phi)
    notes = []
    if left is not None and t.m_plus == 1 and alpha > HALF_PI:
        # the two-branch statement is only established up to pi/2
        left = None
        notes.append("second branch not covered for alpha > pi/2; reporting one solution")
    points = [q for q in (left, right) if q is not None]
    sols = [make_solution(RealTriple(q.e1, q.e2), t, alpha, phi) for q in points]
    return _found(sols, pm_value, False, *notes)


def _classify_folded(p: SectorProblem, pm_value: float) -> Existence:
    t, alpha, phi = p.flow_type, p.alpha, p.phi
    curve = folded_curve(t, alpha)
    points = curve.crossings(0.5 * phi)
    sols = [make_solution(RealTriple(q.e1, q.e2), t, alpha, phi) for q in points]
    if not sols:
        return _none(pm_value)
    return _found(sols, pm_value)


# ---------------------------------------------------------------------------
# half-plane


@dataclass(frozen=True)
class HalfPlaneLeadingOrder:
    """Leading-order self-similar flows far from a small aperture in a wall.

    ``left`` and ``right`` are the half-planes on either side of the wall
    (the side ``x1 < 0`` and ``x1 > 0``).  Fluid enters through the
    ``upstream`` side, which always carries the (0,1) flow.
    """

    phi: float
    left: FlowType
    right: FlowType
    left_solution: Solution
    right_solution: Solution

    @property
    def upstream(self) -> FlowType:
        return FlowType(0, 1)

    @property
    def downstream(self) -> FlowType:
        return FlowType(1, 2)


def half_plane_leading_order(phi: float) -> HalfPlaneLeadingOrder:
    """Types and profiles at ``alpha = pi/2`` for a small aperture flux.

    The outflow side carries flux ``|phi|`` with the type (1,2) solution of
    small amplitude (the branch nearer the origin); the inflow side carries
    ``-|phi|`` with type (0,1).  For ``phi < 0`` the two sides swap.
    """
    phi = float(phi)
    if phi == 0.0 or not abs(phi) < 1.0 / 36.0:
        raise DomainError(f"need 0 < |phi| < 1/36, got {phi!r}")
    alpha = HALF_PI
    size = abs(phi)
    t_out, t_in = FlowType(1, 2), FlowType(0, 1)
    left_pt, _ = rising_curve(t_out, alpha).crossings(0.5 * size)
    if left_pt is None:
        raise NoSolutionError("small-amplitude (1,2) branch not found")
    outflow = make_solution(RealTriple(left_pt.e1, left_pt.e2), t_out, alpha, size)
    inflow = make_solution(solve_pure_inflow(alpha, -size), t_in, alpha, -size)
    if phi > 0.0:
        return HalfPlaneLeadingOrder(phi, t_in, t_out, inflow, outflow)
    return HalfPlaneLeadingOrder(phi, t_out, t_in, outflow, inflow)

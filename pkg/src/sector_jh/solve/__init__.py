"""Inversions, maximum fluxes and existence classification."""

from .arcs import solve_pure_inflow, solve_pure_outflow
from .classify import (
    HalfPlaneLeadingOrder,
    classify,
    half_plane_leading_order,
    solve_type_mm,
)
from .critical import e1_star, e2_star, gamma_star, periodic_flux, periodic_roots
from .levels import alpha_star_21, solve_e2_on_level, trace_level_curve
from .maxflux import phi_max
from .types import Existence, PhiMaxResult, SectorProblem, Solution, make_solution

__all__ = [
    "Existence",
    "HalfPlaneLeadingOrder",
    "PhiMaxResult",
    "SectorProblem",
    "Solution",
    "alpha_star_21",
    "classify",
    "e1_star",
    "e2_star",
    "gamma_star",
    "half_plane_leading_order",
    "make_solution",
    "periodic_flux",
    "periodic_roots",
    "phi_max",
    "solve_e2_on_level",
    "solve_pure_inflow",
    "solve_pure_outflow",
    "solve_type_mm",
    "trace_level_curve",
]

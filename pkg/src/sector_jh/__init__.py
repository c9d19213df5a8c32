"""Self-similar radial Navier-Stokes flows in a sector with no-slip walls.

The flows have the Jeffery-Hamel form ``u = f(theta)/r e_r`` and are
parametrized by the three roots of the cubic ``Q`` with ``f'^2 = Q(f)``.
"""

from .cubic import ComplexPair, CubicCoeffs, FlowType, RealTriple, coeffs, make_roots, modulus
from .errors import (
    ArcAssemblyError,
    DomainError,
    NoSolutionError,
    QuadratureError,
    SectorError,
    UnsupportedRegionError,
)
from .integrals import I_full, I_minus, I_plus, I_type, J_full, J_minus, J_plus, J_type
from .profile import Profile, fields, reconstruct, validate
from .solve import (
    Existence,
    SectorProblem,
    Solution,
    alpha_star_21,
    classify,
    half_plane_leading_order,
    phi_max,
)
from .special import H, Modulus, dK_dgamma, ellip_E, ellip_K, quad_singular

__version__ = "0.1.0"

__all__ = [
    "ArcAssemblyError",
    "ComplexPair",
    "CubicCoeffs",
    "DomainError",
    "Existence",
    "FlowType",
    "H",
    "I_full",
    "I_minus",
    "I_plus",
    "I_type",
    "J_full",
    "J_minus",
    "J_plus",
    "J_type",
    "Modulus",
    "NoSolutionError",
    "Profile",
    "QuadratureError",
    "RealTriple",
    "SectorError",
    "SectorProblem",
    "Solution",
    "UnsupportedRegionError",
    "alpha_star_21",
    "classify",
    "coeffs",
    "dK_dgamma",
    "ellip_E",
    "ellip_K",
    "fields",
    "half_plane_leading_order",
    "make_roots",
    "modulus",
    "phi_max",
    "quad_singular",
    "reconstruct",
    "validate",
]

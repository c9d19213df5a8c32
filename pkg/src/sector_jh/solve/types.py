"""Value types returned by the solvers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..cubic import CubicCoeffs, FlowType, RealTriple, RootTriple, coeffs, modulus
from ..errors import DomainError
from ..integrals import I_type, J_type
from ..special import Modulus

ANGLE_TOL = 1e-9
FLUX_TOL = 1e-8
#: Fluxes within this distance of the maximum are treated as the boundary case.
BOUNDARY_TOL = 1e-8


@dataclass(frozen=True)
class SectorProblem:
    """Half-opening ``alpha`` in (0, pi), total flux ``phi`` and the flow type."""

    alpha: float
    phi: float
    flow_type: FlowType

    def __post_init__(self) -> None:
        a, p = float(self.alpha), float(self.phi)
        if not (0.0 < a < math.pi):
            raise DomainError(f"alpha must lie in (0, pi), got {a!r}")
        if not math.isfinite(p):
            raise DomainError(f"flux must be finite, got {p!r}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "phi", p)


@dataclass(frozen=True)
class Solution:
    """A root triple solving the angle and flux conditions for ``flow_type``.

    ``gamma`` is ``None`` for a complex pair.  The residuals are
    ``|I_type - alpha|`` and ``|2 J_type - phi|``.
    """

    roots: RootTriple
    coeffs: CubicCoeffs
    gamma: Modulus | None
    residual_angle: float
    residual_flux: float
    flow_type: FlowType
    alpha: float
    phi: float

    @property
    def e1(self) -> float:
        return self.roots.e1

    @property
    def b(self) -> float:
        return self.coeffs.b

    def within_tolerance(self) -> bool:
        return (self.residual_angle <= ANGLE_TOL
                and self.residual_flux <= FLUX_TOL * max(1.0, abs(self.phi)))


def make_solution(roots: RootTriple, t: FlowType, alpha: float, phi: float) -> Solution:
    """Wrap ``roots`` as a :class:`Solution`, recomputing both residuals."""
    gamma = None
    if isinstance(roots, RealTriple):
        try:
            gamma = modulus(roots)
        except DomainError:
            gamma = None
    angle = I_type(roots, t)
    half_flux = J_type(roots, t)
    return Solution(
        roots=roots,
        coeffs=coeffs(roots),
        gamma=gamma,
        residual_angle=abs(angle - alpha),
        residual_flux=abs(2.0 * half_flux - phi),
        flow_type=t,
        alpha=alpha,
        phi=phi,
    )


@dataclass(frozen=True)
class PhiMaxResult:
    """Maximum flux for a type at a given angle.

    ``attained`` is ``None`` where the theory leaves attainability open.
    ``argmax`` is ``None`` when the supremum is only approached by the
    trivial flow.
    """

    value: float
    argmax: RootTriple | None
    attained: bool | None
    argmax_type: FlowType | None = None


@dataclass(frozen=True)
class Existence:
    exists: bool
    count_lower_bound: int
    solutions: tuple[Solution, ...] = ()
    boundary_case: bool = False
    phi_max: float | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

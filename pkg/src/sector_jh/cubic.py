"""Roots of the first-integral cubic and the flow-type bookkeeping.

Every solution satisfies ``(f')^2 = Q(f)`` with

    Q(f) = -2/3 f^3 - 4 f^2 + 2 b f + 2 E0 = -2/3 (f - e1)(f - e2)(f - e3)

and the roots always sum to -6, so a triple is fixed by ``e1`` and either the
middle root ``e2`` or, for a complex-conjugate pair, its imaginary part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    DegenerateError,
    IncompatibleTypeError,
    InvalidFlowTypeError,
    OrderingError,
)
from .special import GAMMA_MAX, Modulus

#: Imaginary parts below this collapse onto the real double root.
COMPLEX_COLLAPSE = 1e-12

_ORDER_SLACK = 4.0 * np.finfo(float).eps


@dataclass(frozen=True)
class RealTriple:
    """Three real roots ``e3 <= e2 <= e1`` with ``e3 = -6 - e1 - e2``."""

    e1: float
    e2: float

    def __post_init__(self) -> None:
        e1, e2 = float(self.e1), float(self.e2)
        object.__setattr__(self, "e1", e1)
        object.__setattr__(self, "e2", e2)
        if not (math.isfinite(e1) and math.isfinite(e2)):
            raise OrderingError(f"non-finite roots ({e1!r}, {e2!r})")
        slack = _ORDER_SLACK * (6.0 + abs(e1) + abs(e2))
        if e2 > e1 + slack or self.e3 > e2 + slack:
            raise OrderingError(
                f"roots must satisfy e3 <= e2 <= e1, got ({e1!r}, {e2!r}, {self.e3!r})"
            )

    @property
    def e3(self) -> float:
        return -6.0 - self.e1 - self.e2

    @property
    def roots(self) -> tuple[float, float, float]:
        return (self.e1, self.e2, self.e3)

    @property
    def e2_minus_e3(self) -> float:
        """``e2 - e3`` evaluated as ``2 e2 + e1 + 6``."""
        return max(2.0 * self.e2 + self.e1 + 6.0, 0.0)


@dataclass(frozen=True)
class ComplexPair:
    """One real root ``e1`` and the pair ``-3 - e1/2 +- i c`` with ``c > 0``."""

    e1: float
    c: float

    def __post_init__(self) -> None:
        e1, c = float(self.e1), float(self.c)
        object.__setattr__(self, "e1", e1)
        object.__setattr__(self, "c", c)
        if not (math.isfinite(e1) and math.isfinite(c)) or c <= 0.0:
            raise OrderingError(f"complex pair needs finite e1 and c > 0, got ({e1!r}, {c!r})")

    @property
    def real_part(self) -> float:
        return -3.0 - 0.5 * self.e1


RootTriple = Union[RealTriple, ComplexPair]


def make_real_triple(e1: float, e2: float) -> RealTriple:
    """Validate and build a real root triple."""
    return RealTriple(e1, e2)


def make_roots(e1: float, c: float) -> RootTriple:
    """Complex-pair constructor; ``c`` below 1e-12 gives the real double root."""
    if abs(c) < COMPLEX_COLLAPSE:
        return RealTriple(e1, -3.0 - 0.5 * e1)
    return ComplexPair(e1, abs(c))


@dataclass(frozen=True)
class CubicCoeffs:
    """Coefficients ``b`` and ``E0`` of ``Q``."""

    b: float
    E0: float

    @classmethod
    def from_roots(cls, roots: RootTriple) -> "CubicCoeffs":
        if isinstance(roots, RealTriple):
            e1, e2, e3 = roots.roots
            return cls(-(e1 * e2 + e2 * e3 + e1 * e3) / 3.0, e1 * e2 * e3 / 3.0)
        # (f - e2)(f - e3) = f^2 - 2 r f + (r^2 + c^2) with r the real part
        r, c = roots.real_part, roots.c
        s2 = r * r + c * c
        return cls(-(2.0 * r * roots.e1 + s2) / 3.0, roots.e1 * s2 / 3.0)


def coeffs(roots: RootTriple) -> CubicCoeffs:
    return CubicCoeffs.from_roots(roots)


def eval_Q(roots: RootTriple, f):
    """Evaluate ``Q(f)`` in factored form (scalar or array ``f``)."""
    f = np.asarray(f, dtype=float) if not np.isscalar(f) else float(f)
    if isinstance(roots, RealTriple):
        return (2.0 / 3.0) * (roots.e1 - f) * (f - roots.e2) * (f - roots.e3)
    shifted = f - roots.real_part
    return (2.0 / 3.0) * (roots.e1 - f) * (shifted * shifted + roots.c * roots.c)


def modulus(roots: RealTriple) -> Modulus:
    """``gamma = sqrt((e1 - e2)/(e1 - e3))`` with its complement from ``e2 - e3``."""
    if not isinstance(roots, RealTriple):
        raise IncompatibleTypeError("the modulus needs three real roots")
    span = roots.e1 - roots.e3
    if span <= 0.0:
        raise OrderingError("all three roots coincide")
    m = (roots.e1 - roots.e2) / span
    m1 = roots.e2_minus_e3 / span
    g = math.sqrt(m)
    if m1 <= 0.0 or g > GAMMA_MAX:
        raise DegenerateError(f"modulus {g!r} too close to 1 (e2 = e3)")
    return Modulus(g, math.sqrt(m1))


@dataclass(frozen=True, order=True)
class FlowType:
    """Numbers of outflow (``m_plus``) and inflow (``m_minus``) arcs."""

    m_plus: int
    m_minus: int

    def __post_init__(self) -> None:
        mp, mm = self.m_plus, self.m_minus
        if isinstance(mp, bool) or isinstance(mm, bool):
            raise InvalidFlowTypeError("arc counts must be integers")
        mp, mm = int(mp), int(mm)
        object.__setattr__(self, "m_plus", mp)
        object.__setattr__(self, "m_minus", mm)
        ok = mp >= 0 and mm >= 0 and (mp, mm) != (0, 0) and (
            abs(mp - mm) <= 1 or (mm == 0 and mp >= 2)
        )
        if not ok:
            raise InvalidFlowTypeError(f"({mp},{mm}) is not an admissible flow type")

    @classmethod
    def parse(cls, text: str) -> "FlowType":
        """Parse ``"m,n"`` (parentheses optional)."""
        parts = text.strip().strip("()").split(",")
        if len(parts) != 2:
            raise InvalidFlowTypeError(f"cannot parse flow type {text!r}")
        try:
            return cls(int(parts[0]), int(parts[1]))
        except ValueError as exc:
            raise InvalidFlowTypeError(f"cannot parse flow type {text!r}") from exc

    def __str__(self) -> str:
        return f"({self.m_plus},{self.m_minus})"

    @property
    def kind(self) -> str:
        """One of ``"mm"``, ``"m_m1"`` (one more inflow arc), ``"m1_m"`` (one more outflow arc) or
        ``"m0"`` (two or more outflow arcs and no inflow arc)."""
        mp, mm = self.m_plus, self.m_minus
        if mp == mm:
            return "mm"
        if mm == mp + 1:
            return "m_m1"
        if mm == 0 and mp >= 2:
            return "m0"
        return "m1_m"


def admissible(roots: RootTriple, t: FlowType) -> bool:
    """Whether a root triple can carry flow type ``t``.

    (1,0) accepts a complex pair with ``e1 > 0`` or real roots with
    ``e1 > 0 >= e2 >= e3`` and ``e3 < 0``.  Every other type needs real roots
    with ``e1 >= 0``, ``e2 <= 0`` and ``e3 < e2``.
    """
    if (t.m_plus, t.m_minus) == (1, 0):
        if isinstance(roots, ComplexPair):
            return roots.e1 > 0.0
        return roots.e1 > 0.0 and roots.e2 <= 0.0 and roots.e3 < 0.0
    if isinstance(roots, ComplexPair):
        return False
    return roots.e1 >= 0.0 and roots.e2 <= 0.0 and roots.e2_minus_e3 > 0.0

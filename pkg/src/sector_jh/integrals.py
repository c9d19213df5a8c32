"""Angle and flux integrals over the outflow and inflow arcs.

``I_plus``/``J_plus`` integrate ``1/sqrt(Q)`` and ``f/sqrt(Q)`` over
``[0, e1]``, ``I_minus``/``J_minus`` over ``[e2, 0]`` and ``I_full``/``J_full``
over the whole period ``[e2, e1]``.  The arc integrals are computed by
tanh-sinh quadrature after scaling the arc to ``[0, 1]``; the full-period
ones use closed forms in the complete elliptic integrals.

A divergent integral (``e2`` merging with ``e3``) is reported as
``math.inf`` for the angle and ``-math.inf`` for the flux, never as a large
finite float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cubic import ComplexPair, FlowType, RealTriple, RootTriple, admissible
from .errors import DegenerateError, IncompatibleTypeError
from .special import GAMMA_MAX, Modulus, complete_elliptic, quad_singular

_TWO_THIRDS = 2.0 / 3.0
_SQRT6 = math.sqrt(6.0)
# (e2 - e3)/(e1 - e3) below this means the modulus exceeds GAMMA_MAX
_MERGE_RATIO = (1.0 - GAMMA_MAX) * (1.0 + GAMMA_MAX)


def is_divergent(value: float) -> bool:
    return math.isinf(value)


def _merged(roots: RealTriple) -> bool:
    span = roots.e1 - roots.e3
    return roots.e2_minus_e3 <= _MERGE_RATIO * span


# ---------------------------------------------------------------------------
# outflow arc, g = f/e1


def _plus_integral(roots: RootTriple, weighted: bool) -> float:
    e1 = roots.e1
    if not e1 > 0.0:
        raise DegenerateError(f"outflow arc needs e1 > 0, got {e1!r}")
    if isinstance(roots, ComplexPair):
        shift = 3.0 + 0.5 * e1
        c2 = roots.c * roots.c

        def rest(g):
            s = e1 * g + shift
            return s * s + c2

        near_zero = False
    else:
        neg_e2 = -roots.e2
        if neg_e2 < 0.0:
            raise DegenerateError(f"outflow arc needs e2 <= 0, got {roots.e2!r}")
        neg_e3 = -roots.e3

        def rest(g):
            return (e1 * g + neg_e2) * (e1 * g + neg_e3)

        near_zero = neg_e2 <= e1

    if weighted:
        def integrand(g, _, one_minus_g):
            return g / np.sqrt(_TWO_THIRDS * one_minus_g * rest(g))
    else:
        def integrand(g, _, one_minus_g):
            return 1.0 / np.sqrt(_TWO_THIRDS * one_minus_g * rest(g))

    value = quad_singular(integrand, 0.0, 1.0, (near_zero, True), with_gaps=True)
    return value * e1 * math.sqrt(e1) if weighted else value * math.sqrt(e1)


def I_plus(roots: RootTriple) -> float:
    """Angle subtended by one outflow arc, ``int_0^e1 df/sqrt(Q)``."""
    return _plus_integral(roots, False)


def J_plus(roots: RootTriple) -> float:
    """Half-flux carried by one outflow arc, ``int_0^e1 f df/sqrt(Q)``."""
    return _plus_integral(roots, True)


# ---------------------------------------------------------------------------
# inflow arc, g = f/e2


def _minus_integral(roots: RootTriple, weighted: bool) -> float:
    if not isinstance(roots, RealTriple):
        raise DegenerateError("the inflow arc needs three real roots")
    e1, e2 = roots.e1, roots.e2
    if not e2 < 0.0:
        raise DegenerateError(f"inflow arc needs e2 < 0, got {e2!r}")
    if e1 < 0.0:
        raise DegenerateError(f"inflow arc needs e1 >= 0, got {e1!r}")
    if _merged(roots):
        return -math.inf if weighted else math.inf
    a = -e2
    d23 = roots.e2_minus_e3

    # f - e2 = a (1 - g), e1 - f = e1 + a g, f - e3 = d23 + a (1 - g)
    if weighted:
        def integrand(g, _, one_minus_g):
            return g / np.sqrt(_TWO_THIRDS * (e1 + a * g) * one_minus_g * (d23 + a * one_minus_g))
    else:
        def integrand(g, _, one_minus_g):
            return 1.0 / np.sqrt(_TWO_THIRDS * (e1 + a * g) * one_minus_g * (d23 + a * one_minus_g))

    value = quad_singular(integrand, 0.0, 1.0, (e1 <= a, True), with_gaps=True)
    return -value * a * math.sqrt(a) if weighted else value * math.sqrt(a)


def I_minus(roots: RootTriple) -> float:
    """Angle subtended by one inflow arc, ``int_e2^0 df/sqrt(Q)``."""
    return _minus_integral(roots, False)


def J_minus(roots: RootTriple) -> float:
    """Half-flux (negative) carried by one inflow arc."""
    return _minus_integral(roots, True)


# ---------------------------------------------------------------------------
# full period, closed forms


def _full_period(roots: RootTriple) -> tuple[float, float, float, float] | None:
    if not isinstance(roots, RealTriple):
        raise DegenerateError("the full period needs three real roots")
    if roots.e2 > 0.0 or roots.e1 < 0.0:
        raise DegenerateError(f"full period needs e2 <= 0 <= e1, got {roots.roots!r}")
    if _merged(roots):
        return None
    span = roots.e1 - roots.e3
    mod = Modulus.from_squares((roots.e1 - roots.e2) / span, roots.e2_minus_e3 / span)
    k, e, k_minus_e = complete_elliptic(mod)
    return span, k, e, k_minus_e


def I_full(roots: RootTriple) -> float:
    """``sqrt(6) K(gamma) / sqrt(e1 - e3)``, the angle of one full period."""
    parts = _full_period(roots)
    if parts is None:
        return math.inf
    span, k, _, _ = parts
    return _SQRT6 * k / math.sqrt(span)


def J_full(roots: RootTriple) -> float:
    """Half-flux of one full period, ``sqrt(6) (e3 K + (e1 - e3) E) / sqrt(e1 - e3)``."""
    parts = _full_period(roots)
    if parts is None:
        return -math.inf
    span, _, e, k_minus_e = parts
    # e3 K + (e1 - e3) E regrouped so that K - E enters directly
    return _SQRT6 * (roots.e1 * e + roots.e3 * k_minus_e) / math.sqrt(span)


# ---------------------------------------------------------------------------
# composites


@dataclass(frozen=True)
class ArcIntegrals:
    """Angle and half-flux of each arc kind for one root triple.

    Entries that do not apply (the inflow arc of a complex pair) are NaN.
    """

    i_plus: float
    i_minus: float
    i_full: float
    j_plus: float
    j_minus: float
    j_full: float


def arc_integrals(roots: RootTriple) -> ArcIntegrals:
    if isinstance(roots, ComplexPair):
        nan = math.nan
        return ArcIntegrals(I_plus(roots), nan, nan, J_plus(roots), nan, nan)
    ip = I_plus(roots) if roots.e1 > 0.0 else 0.0
    jp = J_plus(roots) if roots.e1 > 0.0 else 0.0
    im = I_minus(roots) if roots.e2 < 0.0 else 0.0
    jm = J_minus(roots) if roots.e2 < 0.0 else 0.0
    return ArcIntegrals(ip, im, I_full(roots), jp, jm, J_full(roots))


def _check(roots: RootTriple, t: FlowType) -> None:
    if not admissible(roots, t):
        raise IncompatibleTypeError(f"roots {roots!r} cannot carry flow type {t}")
    if t.kind == "m0" and roots.e2 != 0.0:
        raise IncompatibleTypeError(f"flow type {t} needs e2 = 0")


def _composite(roots: RootTriple, t: FlowType, weighted: bool) -> float:
    _check(roots, t)
    full = J_full if weighted else I_full
    plus = J_plus if weighted else I_plus
    mp, mm = t.m_plus, t.m_minus
    if (mp, mm) == (0, 1):
        return J_minus(roots) if weighted else I_minus(roots)
    if mm == 0:
        return mp * plus(roots)
    if mp == mm:
        return mp * full(roots)
    outflow = plus(roots) if roots.e1 > 0.0 else 0.0
    if mm == mp + 1:
        # m I+ + (m+1) I-  ==  (m+1) I - I+
        return mm * full(roots) - outflow
    # (m+1) I+ + m I-  ==  m I + I+
    return mm * full(roots) + outflow


def I_type(roots: RootTriple, t: FlowType) -> float:
    """Half-opening ``alpha`` of the sector filled by a type ``t`` flow with these roots."""
    return _composite(roots, t, False)


def J_type(roots: RootTriple, t: FlowType) -> float:
    """Half of the total flux ``Phi`` of a type ``t`` flow with these roots."""
    return _composite(roots, t, True)

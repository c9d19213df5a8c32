"""Complete elliptic integrals, the H(gamma) relation and tanh-sinh quadrature.

The elliptic integrals use the arithmetic-geometric mean, with the
complementary modulus carried separately so that moduli close to 1 keep
their precision.  ``K - E`` is accumulated directly from the AGM series,
which keeps small-modulus differences free of cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import DomainError, QuadratureError

#: Largest modulus accepted; beyond it K is treated as divergent.
GAMMA_MAX = 1.0 - 1e-10

_HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class Modulus:
    """Elliptic modulus ``gamma`` in ``[0, GAMMA_MAX]``.

    ``complement`` is ``sqrt(1 - gamma**2)``.  Pass it explicitly when it is
    known more accurately than the subtraction would give (for example from
    root differences).
    """

    gamma: float
    complement: float = float("nan")

    def __post_init__(self) -> None:
        g = float(self.gamma)
        if not (0.0 <= g <= GAMMA_MAX):
            raise DomainError(f"modulus {g!r} outside [0, 1 - 1e-10]")
        comp = float(self.complement)
        if math.isnan(comp):
            comp = math.sqrt((1.0 - g) * (1.0 + g))
        elif not (0.0 < comp <= 1.0):
            raise DomainError(f"complementary modulus {comp!r} outside (0, 1]")
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "complement", comp)

    @classmethod
    def from_squares(cls, m: float, m1: float) -> "Modulus":
        """Build from ``gamma**2`` and ``1 - gamma**2`` given separately."""
        if m < 0.0 or m1 <= 0.0:
            raise DomainError(f"invalid squared moduli ({m!r}, {m1!r})")
        g = math.sqrt(m)
        if g > GAMMA_MAX:
            raise DomainError(f"modulus {g!r} outside [0, 1 - 1e-10]")
        return cls(g, math.sqrt(m1))


def _as_modulus(gamma: Modulus | float) -> Modulus:
    return gamma if isinstance(gamma, Modulus) else Modulus(float(gamma))


def _agm(gamma: float, complement: float) -> tuple[float, float]:
    """Return ``(K, K - E)`` for the given modulus pair."""
    a, b, c = 1.0, complement, gamma
    power = 0.5
    series = power * c * c
    for _ in range(60):
        a_next = 0.5 * (a + b)
        # (a - b)/2 rewritten to avoid cancellation once a and b agree
        c = c * c / (4.0 * a_next)
        b = math.sqrt(a * b)
        a = a_next
        power *= 2.0
        series += power * c * c
        if c <= 1e-17 * a:
            break
    k = _HALF_PI / a
    return k, k * series


def complete_elliptic(gamma: Modulus | float) -> tuple[float, float, float]:
    """Return ``(K, E, K - E)`` for the modulus ``gamma``."""
    mod = _as_modulus(gamma)
    if mod.gamma == 0.0:
        return _HALF_PI, _HALF_PI, 0.0
    k, k_minus_e = _agm(mod.gamma, mod.complement)
    return k, k - k_minus_e, k_minus_e


def ellip_K(gamma: Modulus | float) -> float:
    """Complete elliptic integral of the first kind, modulus convention."""
    return complete_elliptic(gamma)[0]


def ellip_E(gamma: Modulus | float) -> float:
    """Complete elliptic integral of the second kind.

    Unlike K, E stays finite up to ``gamma = 1`` where it equals 1.
    """
    if isinstance(gamma, Modulus):
        return complete_elliptic(gamma)[1]
    g = float(gamma)
    if not (0.0 <= g <= 1.0):
        raise DomainError(f"modulus {g!r} outside [0, 1]")
    if g == 1.0:
        return 1.0
    if g > GAMMA_MAX:
        k, k_minus_e = _agm(g, math.sqrt((1.0 - g) * (1.0 + g)))
        return k - k_minus_e
    return complete_elliptic(g)[1]


def dK_dgamma(gamma: Modulus | float) -> float:
    """Derivative of K with respect to the modulus.

    Uses ``dK/dg = E/(g (1 - g^2)) - K/g`` rearranged around ``K - E``;
    below ``g = 1e-3`` the Maclaurin series is used instead, with limit 0.
    """
    mod = _as_modulus(gamma)
    g = mod.gamma
    if g < 1e-3:
        g2 = g * g
        return _HALF_PI * g * (0.5 + g2 * (9.0 / 16.0 + g2 * 75.0 / 128.0))
    k, _, k_minus_e = complete_elliptic(mod)
    m1 = mod.complement * mod.complement
    return (g * g * k - k_minus_e) / (g * m1)


def H(gamma: Modulus | float) -> float:
    """``H(g) = ((g^2 - 2) K + 3 E) K``, strictly decreasing from pi^2/4."""
    mod = _as_modulus(gamma)
    k, e, k_minus_e = complete_elliptic(mod)
    g2 = mod.gamma * mod.gamma
    return (e + g2 * k - 2.0 * k_minus_e) * k


# ---------------------------------------------------------------------------
# tanh-sinh quadrature

MAX_LEVEL = 12
_T_SINGULAR = 4.0
_T_REGULAR = 3.2


@lru_cache(maxsize=None)
def _level_nodes(level: int, t_lo: float, t_hi: float):
    """Abscissa fractions and weights of the nodes first used at ``level``.

    Returns arrays ``(frac_a, frac_b, weight)`` for the map
    ``x = a + L frac_a = b - L frac_b`` on an interval of length ``L = 1``.
    """
    h = 2.0 ** -level
    if level == 0:
        j = np.arange(-math.floor(t_lo), math.floor(t_hi) + 1, dtype=float)
    else:
        j = np.arange(-math.floor(t_lo / h), math.floor(t_hi / h) + 1, dtype=float)
        j = j[(j.astype(np.int64) % 2) != 0]
    t = j * h
    u = _HALF_PI * np.sinh(t)
    frac_a = 1.0 / (1.0 + np.exp(-2.0 * u))
    frac_b = 1.0 / (1.0 + np.exp(2.0 * u))
    weight = 0.5 * _HALF_PI * np.cosh(t) / np.cosh(u) ** 2
    for arr in (frac_a, frac_b, weight):
        arr.setflags(write=False)
    return frac_a, frac_b, weight


def quad_singular(
    integrand: Callable[..., np.ndarray],
    a: float,
    b: float,
    singular_ends: tuple[bool, bool] = (True, True),
    *,
    with_gaps: bool = False,
    rtol: float = 1e-12,
    max_level: int = MAX_LEVEL,
) -> float:
    """Integrate ``integrand`` over ``[a, b]`` by tanh-sinh quadrature.

    Parameters
    ----------
    integrand
        Vectorised callable.  With ``with_gaps=True`` it is called as
        ``integrand(x, x - a, b - x)`` where the two distances are computed
        without cancellation, which is what integrable endpoint
        singularities need.  Without them a ``1/sqrt(b - x)`` end is only
        resolved to about ``sqrt(eps)``.
    singular_ends
        Whether each endpoint carries an (integrable) singularity.  Singular
        ends get a longer node tail.
    rtol
        Convergence threshold on the change between successive levels,
        relative to the integral of ``|integrand|``.

    Raises
    ------
    QuadratureError
        If successive levels still differ by more than 1e-9 (relative) at
        ``max_level``, or the integrand produced non-finite values.
    """
    a = float(a)
    b = float(b)
    if b < a:
        return -quad_singular(integrand, b, a, singular_ends[::-1],
                              with_gaps=with_gaps, rtol=rtol, max_level=max_level)
    length = b - a
    if length == 0.0:
        return 0.0
    t_lo = _T_SINGULAR if singular_ends[0] else _T_REGULAR
    t_hi = _T_SINGULAR if singular_ends[1] else _T_REGULAR

    def level_sums(level: int) -> tuple[float, float]:
        frac_a, frac_b, weight = _level_nodes(level, t_lo, t_hi)
        da = length * frac_a
        db = length * frac_b
        x = np.where(frac_a <= 0.5, a + da, b - db)
        if with_gaps:
            y = integrand(x, da, db)
        else:
            # tail nodes can round onto an endpoint; their weights are negligible
            inside = (x > a) & (x < b)
            y = np.zeros_like(x)
            y[inside] = integrand(x[inside])
        wy = weight * y
        return float(np.sum(wy)), float(np.sum(np.abs(wy)))

    total = 0.0
    total_abs = 0.0
    for level in range(4):
        s, s_abs = level_sums(level)
        total += s
        total_abs += s_abs
    previous = total * 0.125
    diff = math.inf
    for level in range(4, max_level + 1):
        s, s_abs = level_sums(level)
        total += s
        total_abs += s_abs
        h = 2.0 ** -level
        current = total * h
        scale = total_abs * h
        if not math.isfinite(current):
            raise QuadratureError("integrand produced non-finite values")
        diff = abs(current - previous)
        if diff <= rtol * scale or scale == 0.0:
            return current * length
        previous = current
    if diff <= 1e-9 * total_abs * 2.0 ** -max_level:
        return previous * length
    raise QuadratureError(
        f"tanh-sinh did not converge: level difference {diff:.3e} at level {max_level}"
    )

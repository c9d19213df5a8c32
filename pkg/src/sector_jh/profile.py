"""Angular profiles f(theta) rebuilt from a solved root triple.

Each arc is inverted piecewise: between consecutive Chebyshev nodes in
``f`` the angle increment ``int df/sqrt(Q)`` is integrated by tanh-sinh,
and the increments are accumulated from the arc's turning value outward.
The slope at every node is ``+-sqrt(Q(f))``, signed by the half-arc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

from .cubic import ComplexPair, FlowType, RealTriple, RootTriple, coeffs, eval_Q
from .errors import ArcAssemblyError, DomainError
from .solve.types import Solution
from .special import quad_singular

_TWO_THIRDS = 2.0 / 3.0
ARC_TOL = 1e-8


@dataclass(frozen=True)
class Arc:
    sign: int
    theta_start: float
    theta_end: float


@dataclass(frozen=True)
class Residuals:
    bc: float
    flux: float
    ode: float


@dataclass(frozen=True)
class Profile:
    """Samples of ``f`` and ``f'`` on ``[-alpha, alpha]`` plus the arc layout."""

    alpha: float
    phi: float
    b: float
    roots: RootTriple
    flow_type: FlowType
    theta: np.ndarray
    f: np.ndarray
    fprime: np.ndarray
    arcs: tuple[Arc, ...]
    residuals: Residuals

    @property
    def samples(self) -> list[tuple[float, float, float]]:
        return list(zip(self.theta.tolist(), self.f.tolist(), self.fprime.tolist()))

    def interpolant(self) -> PchipInterpolator:
        return PchipInterpolator(self.theta, self.f, extrapolate=True)

    def __call__(self, theta):
        return self.interpolant()(theta)


# ---------------------------------------------------------------------------
# per-arc inversion


def _outflow_half(roots: RootTriple, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Chebyshev nodes ``f_k`` on ``[0, e1]`` and ``int_{f_k}^{e1} df/sqrt(Q)``."""
    e1 = roots.e1
    k = np.arange(n + 1)
    f_nodes = 0.5 * e1 * (1.0 - np.cos(math.pi * k / n))
    f_nodes[0], f_nodes[-1] = 0.0, e1
    neg_e2 = -roots.e2 if isinstance(roots, RealTriple) else None

    def piece(lo: float, hi: float) -> float:
        if isinstance(roots, ComplexPair):
            r, c2 = roots.real_part, roots.c * roots.c

            def integrand(g, _, up):
                below = (e1 - hi) + up
                s = g - r
                return 1.0 / np.sqrt(_TWO_THIRDS * below * (s * s + c2))
        else:
            e3 = roots.e3

            def integrand(g, da, up):
                below = (e1 - hi) + up
                above_e2 = (lo + neg_e2) + da
                return 1.0 / np.sqrt(_TWO_THIRDS * below * above_e2 * (g - e3))

        near_root = neg_e2 is not None and neg_e2 <= hi - lo
        singular = (lo == 0.0 and near_root, hi == e1)
        return quad_singular(integrand, lo, hi, singular, with_gaps=True)

    pieces = np.array([piece(f_nodes[i], f_nodes[i + 1]) for i in range(n)])
    from_peak = np.concatenate([np.cumsum(pieces[::-1])[::-1], [0.0]])
    return f_nodes, from_peak


def _inflow_half(roots: RealTriple, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Chebyshev nodes on ``[e2, 0]`` and ``int_{e2}^{f_k} df/sqrt(Q)``."""
    e1, e2 = roots.e1, roots.e2
    d23 = roots.e2_minus_e3
    k = np.arange(n + 1)
    # distance of each node above e2, formed without subtracting e2
    lift = -e2 * 0.5 * (1.0 - np.cos(math.pi * k / n))
    lift[0], lift[-1] = 0.0, -e2
    f_nodes = e2 + lift
    f_nodes[0], f_nodes[-1] = e2, 0.0

    def piece(i: int) -> float:
        lo, hi, base = f_nodes[i], f_nodes[i + 1], lift[i]

        def integrand(g, da, db):
            above_e2 = base + da
            return 1.0 / np.sqrt(_TWO_THIRDS * ((e1 - hi) + db) * above_e2 * (d23 + above_e2))

        singular = (i == 0, i == n - 1 and e1 <= hi - lo)
        return quad_singular(integrand, lo, hi, singular, with_gaps=True)

    pieces = np.array([piece(i) for i in range(n)])
    from_trough = np.concatenate([[0.0], np.cumsum(pieces)])
    return f_nodes, from_trough


def _arc_sequence(t: FlowType) -> list[int]:
    mp, mm = t.m_plus, t.m_minus
    if mm == 0:
        return [1] * mp
    if mp == 0:
        return [-1] * mm
    first = 1 if mp >= mm else -1
    seq = [first * (-1) ** i for i in range(mp + mm)]
    assert seq.count(1) == mp and seq.count(-1) == mm
    return seq


def reconstruct(s: Solution, t: FlowType | None = None, n_per_arc: int = 128,
                mirror: bool = False) -> Profile:
    """Rebuild ``f`` on ``[-alpha, alpha]`` from a solution.

    ``n_per_arc`` is the number of sample intervals per arc (split evenly
    between its rising and falling halves).  ``mirror`` returns the reflected
    flow ``theta -> -theta``, which solves the same problem.
    """
    t = t or s.flow_type
    if n_per_arc < 8:
        raise DomainError("n_per_arc must be at least 8")
    roots = s.roots
    alpha = s.alpha
    n_half = (n_per_arc + 1) // 2
    seq = _arc_sequence(t)

    if 1 in seq:
        f_up, from_peak = _outflow_half(roots, n_half)
        half_plus = from_peak[0]
        # rising half: theta - start = half - from_peak, then mirrored
        rise_t = half_plus - from_peak
        out_t = np.concatenate([rise_t, 2.0 * half_plus - rise_t[-2::-1]])
        out_f = np.concatenate([f_up, f_up[-2::-1]])
        out_s = np.concatenate([np.ones(n_half + 1), -np.ones(n_half)])
        out_s[n_half] = 0.0
    if -1 in seq:
        f_dn, from_trough = _inflow_half(roots, n_half)
        half_minus = from_trough[-1]
        fall_t = half_minus - from_trough[::-1]
        in_t = np.concatenate([fall_t, 2.0 * half_minus - fall_t[-2::-1]])
        in_f = np.concatenate([f_dn[::-1], f_dn[1:]])
        in_s = np.concatenate([-np.ones(n_half + 1), np.ones(n_half)])
        in_s[n_half] = 0.0

    thetas, fs, signs, arcs = [], [], [], []
    start = -alpha
    for i, sign in enumerate(seq):
        at, af, asg = (out_t, out_f, out_s) if sign > 0 else (in_t, in_f, in_s)
        skip = 1 if i > 0 else 0
        thetas.append(start + at[skip:])
        fs.append(af[skip:])
        signs.append(asg[skip:])
        arcs.append(Arc(sign, start, start + at[-1]))
        start = start + at[-1]
    total = start + alpha
    if abs(total - 2.0 * alpha) > ARC_TOL:
        raise ArcAssemblyError(
            f"arc angles add up to {total!r}, expected {2.0 * alpha!r}")

    # stretch out the rounding-level mismatch so the samples end exactly at alpha
    theta = -alpha + (np.concatenate(thetas) + alpha) * (2.0 * alpha / total)
    theta[-1] = alpha
    f = np.concatenate(fs)
    slope_sign = np.concatenate(signs)
    q = np.maximum(eval_Q(roots, f), 0.0)
    fprime = slope_sign * np.sqrt(q)
    if mirror:
        theta = -theta[::-1]
        f = f[::-1].copy()
        fprime = -fprime[::-1]
        arcs = [Arc(a.sign, -a.theta_end, -a.theta_start) for a in reversed(arcs)]

    b = coeffs(roots).b
    # + 0.0 turns signed zeros into plain zeros
    prof = Profile(alpha, s.phi, b, roots, t, theta, f, fprime + 0.0,
                   tuple(arcs), Residuals(0.0, 0.0, 0.0))
    return _with_residuals(prof)


def _hermite_integral(theta: np.ndarray, f: np.ndarray, fp: np.ndarray, b: float) -> float:
    """Quintic Hermite rule; ``f'' = Q'(f)/2 = b - 4f - f^2`` comes from the ODE."""
    h = np.diff(theta)
    fpp = b - 4.0 * f - f * f
    return float(np.sum(0.5 * h * (f[:-1] + f[1:])
                        + h * h / 10.0 * (fp[:-1] - fp[1:])
                        + h ** 3 / 120.0 * (fpp[:-1] + fpp[1:])))


def validate(p: Profile, s: Solution | None = None) -> Residuals:
    """Boundary, flux and first-integral residuals of a profile.

    ``bc`` is the larger ``|f|`` at the two walls, the right wall value being
    extrapolated with the end slope across any gap between the last sample
    and ``alpha``.  ``flux`` uses a quintic Hermite rule with the sampled
    slopes and the curvature implied by the ODE.  ``ode`` is the largest ``|f'^2 - Q(f)|``.
    """
    phi = p.phi if s is None else s.phi
    roots = p.roots if s is None else s.roots
    left = abs(p.f[0] + p.fprime[0] * (-p.alpha - p.theta[0]))
    right = abs(p.f[-1] + p.fprime[-1] * (p.alpha - p.theta[-1]))
    flux = abs(_hermite_integral(p.theta, p.f, p.fprime, coeffs(roots).b) - phi)
    interior = slice(1, -1)
    ode = float(np.max(np.abs(p.fprime[interior] ** 2 - eval_Q(roots, p.f[interior]))))
    return Residuals(float(max(left, right)), float(flux), ode)


def _with_residuals(p: Profile) -> Profile:
    res = validate(p)
    return Profile(p.alpha, p.phi, p.b, p.roots, p.flow_type, p.theta, p.f, p.fprime,
                   p.arcs, res)


def fields(p: Profile, r: float, theta: float) -> tuple[float, float, float]:
    """Velocity ``(u_r, u_theta)`` and pressure at polar point ``(r, theta)``.

    ``u_r = f/r``, ``u_theta = 0`` and ``pressure = (2 f - b/2)/r^2``.
    """
    if not r > 0.0:
        raise DomainError(f"r must be positive, got {r!r}")
    if not (-p.alpha - 1e-12 <= theta <= p.alpha + 1e-12):
        raise DomainError(f"theta {theta!r} outside [-alpha, alpha]")
    f = float(p.interpolant()(theta))
    return f / r, 0.0, (2.0 * f - 0.5 * p.b) / (r * r)

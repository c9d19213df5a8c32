"""Level sets ``I_type(e1, e2) = alpha`` for the mixed types.

For one more inflow arc than outflow arcs, ``(m, m+1)``, the angle is strictly
decreasing in ``e2`` and the level set is a graph ``e2(e1)`` over
``e1 > e1_star(alpha/m)``.  For one more outflow arc, ``(m+1, m)``, the angle
is convex in ``e2`` and the level set folds back at ``e1_fold``: a right
branch runs from ``(e1_star(alpha/(m+1)), 0)`` down to the fold and a left
branch returns from the fold toward ``e1 -> inf``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar

from ..cubic import FlowType, RealTriple
from ..errors import DomainError, NoSolutionError, TracingError, UnsupportedRegionError
from ..integrals import I_full, I_plus, J_full, J_plus
from .critical import HALF_PI, e1_star, find_root

# closest approach of e2 to e3, relative to e1 - e3; keeps I finite
_MERGE_FLOOR = 1e-9


# ---------------------------------------------------------------------------
# angle along a vertical line e1 = const


class _Slice:
    """The segment ``e1 = const``, ``-3 - e1/2 < e2 <= 0`` with helpers to solve on it.

    Near ``e2 = 0`` the angle behaves like ``sqrt(-e2)`` and near the merge
    with ``e3`` like ``log(e2 - e3)``, so roots are sought in ``sqrt(-e2)``
    on the upper half and in ``log(e2 - e3)`` on the lower half.
    """

    def __init__(self, e1: float, t: FlowType):
        self.e1 = e1
        self.t = t
        self.m = min(t.m_plus, t.m_minus)
        self.outflow_heavy = t.m_plus > t.m_minus
        # e2 - e3 = 2 e2 + e1 + 6
        self.d_top = e1 + 6.0
        self.d_min = _MERGE_FLOOR * (1.5 * e1 + 3.0)
        self.e2_min = 0.5 * (self.d_min - e1 - 6.0)
        self.e2_mid = -0.25 * (e1 + 6.0)

    def triple(self, e2: float) -> RealTriple:
        return RealTriple(self.e1, e2)

    def angle(self, e2: float) -> float:
        roots = self.triple(e2)
        full = I_full(roots)
        outflow = I_plus(roots) if self.e1 > 0.0 else 0.0
        if self.outflow_heavy:
            return self.m * full + outflow
        return (self.m + 1) * full - outflow

    def half_flux(self, e2: float) -> float:
        roots = self.triple(e2)
        full = J_full(roots)
        outflow = J_plus(roots) if self.e1 > 0.0 else 0.0
        if self.outflow_heavy:
            return self.m * full + outflow
        return (self.m + 1) * full - outflow

    def _e2_from_log_gap(self, x: float) -> float:
        return min(0.5 * (math.exp(x) - self.e1 - 6.0), 0.0)

    def root_upper(self, target: float, e2_lo: float, e2_hi: float = 0.0) -> float:
        """Root of ``angle - target`` in ``[e2_lo, e2_hi]``, solved in ``sqrt(-e2)``."""
        u_lo, u_hi = math.sqrt(-e2_hi), math.sqrt(-e2_lo)
        u = find_root(lambda u: self.angle(-u * u) - target, u_lo, u_hi)
        return -u * u

    def root_lower(self, target: float, e2_lo: float, e2_hi: float) -> float:
        """Root of ``angle - target`` in ``[e2_lo, e2_hi]``, solved in ``log(e2 - e3)``."""
        x_lo = math.log(2.0 * e2_lo + self.e1 + 6.0)
        x_hi = math.log(2.0 * e2_hi + self.e1 + 6.0)
        if self.angle(self._e2_from_log_gap(x_lo)) < target:
            raise NoSolutionError("level set passes below the e2/e3 merge floor")
        x = find_root(lambda x: self.angle(self._e2_from_log_gap(x)) - target, x_lo, x_hi)
        return self._e2_from_log_gap(x)

    def root(self, target: float, e2_lo: float, e2_hi: float) -> float:
        """Root on a bracket where ``angle - target`` changes sign; picks the variable."""
        if e2_hi >= self.e2_mid and e2_lo <= self.e2_mid:
            if (self.angle(self.e2_mid) - target) * (self.angle(e2_hi) - target) <= 0.0:
                return self.root_upper(target, self.e2_mid, e2_hi)
            return self.root_lower(target, e2_lo, self.e2_mid)
        if e2_lo >= self.e2_mid:
            return self.root_upper(target, e2_lo, e2_hi)
        return self.root_lower(target, e2_lo, e2_hi)

    def minimum(self) -> tuple[float, float]:
        """Minimiser and minimum of the (convex) angle over the slice."""
        lo, hi = self.e2_min, 0.0
        res = minimize_scalar(self.angle, bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-12 * (1.0 + abs(lo))})
        x, fx = float(res.x), float(res.fun)
        at_top = self.angle(hi)
        if at_top < fx:
            x, fx = hi, at_top
        return x, fx


def solve_e2_on_level(e1: float, alpha: float, t: FlowType) -> list[float]:
    """All ``e2`` in ``(-3 - e1/2, 0]`` with ``I_type(e1, e2) = alpha``.

    Returns zero or one root for ``(m, m+1)`` types and up to two (left root
    first) for ``(m+1, m)`` types with ``m >= 1``.
    """
    if not e1 > 0.0:
        raise DomainError(f"e1 must be positive, got {e1!r}")
    kind = t.kind
    if kind not in ("m_m1", "m1_m") or min(t.m_plus, t.m_minus) == 0:
        raise DomainError(f"type {t} has no two-parameter level set")
    sl = _Slice(float(e1), t)
    top = sl.angle(0.0)
    bottom = sl.angle(sl.e2_min)
    if kind == "m_m1":
        if top > alpha or bottom < alpha:
            return []
        if top == alpha:
            return [0.0]
        return [sl.root(alpha, sl.e2_min, 0.0)]
    x_min, f_min = sl.minimum()
    if f_min > alpha:
        return []
    roots = []
    if bottom >= alpha:
        roots.append(sl.root(alpha, sl.e2_min, x_min) if f_min < alpha else x_min)
    if top >= alpha and x_min < 0.0:
        right = sl.root(alpha, x_min, 0.0) if f_min < alpha else x_min
        if not roots or right != roots[-1]:
            roots.append(right)
    return roots


# ---------------------------------------------------------------------------
# (m, m+1): a single graph over e1


@dataclass(frozen=True)
class CurvePoint:
    e1: float
    e2: float
    half_flux: float
    param: float


class RisingCurve:
    """Level curve of a ``(m, m+1)`` type, parametrised by ``log e1``.

    It starts at ``e1_star(alpha/m)`` with ``e2 = 0`` (or at the origin when
    ``alpha/m >= pi/2``) and ``e2 -> -inf`` along the tail.
    """

    def __init__(self, t: FlowType, alpha: float):
        if t.kind != "m_m1" or t.m_plus == 0:
            raise DomainError(f"{t} is not an (m, m+1) type with m >= 1")
        self.t = t
        self.alpha = alpha
        beta = alpha / t.m_plus
        self.from_origin = beta >= HALF_PI
        self.e1_start = 0.0 if self.from_origin else e1_star(beta)
        self.start_half_flux = 0.0 if self.from_origin else t.m_plus * J_plus(
            RealTriple(self.e1_start, 0.0))
        self._grid: list[CurvePoint] = []
        self._max: CurvePoint | None = None

    def point(self, x: float) -> CurvePoint | None:
        e1 = math.exp(x)
        roots = solve_e2_on_level(e1, self.alpha, self.t)
        if not roots:
            return None
        sl = _Slice(e1, self.t)
        return CurvePoint(e1, roots[0], sl.half_flux(roots[0]), x)

    def _x_first(self) -> float:
        if self.from_origin:
            return math.log(1e-4)
        return math.log(self.e1_start) + 1e-6

    def grid(self) -> list[CurvePoint]:
        """Geometric samples (ratio 1.1) until the flux has fallen by 10 from its peak."""
        if self._grid:
            return self._grid
        step = math.log(1.1)
        x = self._x_first()
        pts: list[CurvePoint] = []
        best = -math.inf
        while True:
            p = self.point(x)
            if p is None:
                if not pts:
                    raise TracingError("level curve not found above its start")
                break
            pts.append(p)
            best = max(best, p.half_flux)
            if p.half_flux < best - 10.0 and len(pts) > 3:
                break
            x += step
            if len(pts) > 2000:
                raise TracingError("level curve did not turn down", (p.e1, p.e2))
        self._grid = pts
        return pts

    def maximum(self) -> CurvePoint:
        if self._max is not None:
            return self._max
        pts = self.grid()
        k = int(np.argmax([p.half_flux for p in pts]))
        lo = pts[k - 1].param if k > 0 else (
            math.log(self.e1_start) if not self.from_origin else pts[0].param - 8.0)
        hi = pts[k + 1].param if k + 1 < len(pts) else pts[k].param + math.log(1.1)

        def neg(x: float) -> float:
            p = self.point(x)
            return math.inf if p is None else -p.half_flux

        res = minimize_scalar(neg, bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-10})
        best = self.point(float(res.x))
        if best is None or best.half_flux < pts[k].half_flux:
            best = pts[k]
        self._max = best
        return best

    def crossings(self, half_flux: float) -> tuple[CurvePoint | None, CurvePoint]:
        """Points left and right of the maximum where the curve carries ``half_flux``.

        The left point is ``None`` when ``half_flux`` does not exceed the
        value at the curve start.
        """
        top = self.maximum()
        if half_flux > top.half_flux:
            raise NoSolutionError("flux above the maximum along the curve")

        def gap(x: float) -> float:
            p = self.point(x)
            if p is None:
                raise TracingError("lost the level curve", None)
            return p.half_flux - half_flux

        left = None
        if half_flux > self.start_half_flux:
            if self.from_origin:
                lo = top.param - 2.0
                while gap(lo) > 0.0:
                    lo -= 2.0
            else:
                lo = math.log(self.e1_start) + 1e-12
            left = self._solve(gap, lo, top.param)
        hi = top.param + math.log(1.1)
        while gap(hi) > 0.0:
            hi += math.log(1.1)
        right = self._solve(gap, top.param, hi)
        return left, right

    def _solve(self, gap, lo: float, hi: float) -> CurvePoint:
        g_lo, g_hi = gap(lo), gap(hi)
        if g_lo == 0.0:
            x = lo
        elif g_hi == 0.0:
            x = hi
        else:
            x = find_root(gap, lo, hi)
        p = self.point(x)
        assert p is not None
        return p


# ---------------------------------------------------------------------------
# (m+1, m): folded curve


def fold_function(e1: float, t: FlowType) -> float:
    """Minimum over ``e2`` of the convex angle map at fixed ``e1``."""
    return _Slice(e1, t).minimum()[1]


class FoldedCurve:
    """Level curve of a ``(m+1, m)`` type.

    The parameter ``s`` runs over ``[-1, 0]`` on the right branch (from the
    start at ``s = -1`` to the fold at ``s = 0``), over ``[0, 1]`` back up the
    left branch to ``e1_start`` and beyond 1 geometrically in ``e1``.
    Between start and fold, ``e1 = e1_fold + (e1_start - e1_fold) s^2``,
    which keeps the arclength per unit ``s`` bounded at the fold.
    """

    def __init__(self, t: FlowType, alpha: float):
        if t.kind != "m1_m" or t.m_minus == 0:
            raise DomainError(f"{t} is not an (m+1, m) type with m >= 1")
        m = t.m_minus
        if alpha / (m + 1) >= HALF_PI:
            raise DomainError(f"no {t} flow for alpha = {alpha!r}")
        self.t = t
        self.alpha = alpha
        self.e1_start = e1_star(alpha / (m + 1))
        self.start_half_flux = (m + 1) * J_plus(RealTriple(self.e1_start, 0.0))
        self.e1_fold, self.e2_fold = self._locate_fold()
        self._grid: list[CurvePoint] = []
        self._max: CurvePoint | None = None

    def _locate_fold(self) -> tuple[float, float]:
        t, alpha = self.t, self.alpha
        m = t.m_minus
        if alpha / m < HALF_PI:
            inside = e1_star(alpha / m)
        else:
            inside = _peak_of_fold_function(t, self.e1_start)[0]
            if fold_function(inside, t) < alpha:
                raise UnsupportedRegionError(
                    f"type {t} at alpha = {alpha!r} lies above the critical angle")
        e1 = find_root(lambda x: fold_function(math.exp(x), t) - alpha,
                       math.log(inside), math.log(self.e1_start))
        e1 = math.exp(e1)
        return e1, _Slice(e1, t).minimum()[0]

    def e1_of(self, s: float) -> float:
        if s <= 1.0:
            return self.e1_fold + (self.e1_start - self.e1_fold) * s * s
        return self.e1_start * math.exp(s - 1.0)

    def point(self, s: float) -> CurvePoint:
        e1 = self.e1_of(s)
        sl = _Slice(e1, self.t)
        if s == 0.0:
            e2 = self.e2_fold
        else:
            x_min, f_min = sl.minimum()
            if f_min >= self.alpha:
                # numerically at the fold
                e2 = x_min
            elif s < 0.0:
                e2 = 0.0 if s == -1.0 else sl.root(self.alpha, x_min, 0.0)
            else:
                e2 = sl.root(self.alpha, sl.e2_min, x_min)
        return CurvePoint(e1, e2, sl.half_flux(e2), s)

    def grid(self, until_half_flux: float = math.inf) -> list[CurvePoint]:
        if not self._grid:
            ss = list(np.linspace(-1.0, 1.0, 41))
            self._grid = [self.point(float(s)) for s in ss]
        pts = self._grid
        best = max(p.half_flux for p in pts)
        step = 0.1
        while pts[-1].half_flux > min(best - 10.0, until_half_flux):
            pts.append(self.point(pts[-1].param + step))
            if pts[-1].e1 > 1e12:
                raise TracingError("level curve did not turn down",
                                   (pts[-1].e1, pts[-1].e2))
        return pts

    def maximum(self) -> CurvePoint:
        if self._max is not None:
            return self._max
        pts = self.grid()
        k = int(np.argmax([p.half_flux for p in pts]))
        lo = pts[max(k - 1, 0)].param
        hi = pts[min(k + 1, len(pts) - 1)].param
        best = pts[k]
        if hi > lo:
            res = minimize_scalar(lambda s: -self.point(s).half_flux, bounds=(lo, hi),
                                  method="bounded", options={"xatol": 1e-11})
            cand = self.point(float(res.x))
            if cand.half_flux > best.half_flux:
                best = cand
        self._max = best
        return best

    def crossings(self, half_flux: float) -> list[CurvePoint]:
        """Every curve point with the given half-flux, in curve order."""
        pts = self.grid(until_half_flux=half_flux)
        top = self.maximum()
        # splice the refined maximum into the samples so no crossing pair is missed
        samples = sorted(pts + [top], key=lambda p: p.param)
        out = []
        for a, b in zip(samples, samples[1:]):
            ga, gb = a.half_flux - half_flux, b.half_flux - half_flux
            if ga == 0.0:
                out.append(a)
            elif ga * gb < 0.0:
                s = find_root(lambda s: self.point(s).half_flux - half_flux, a.param, b.param)
                out.append(self.point(s))
        if samples[-1].half_flux == half_flux:
            out.append(samples[-1])
        return out

    def trace(self, e1_max: float, n_min: int = 100) -> list[CurvePoint]:
        """Samples from the start through the fold out to ``e1_max``."""
        n_branch = max(n_min // 2, 8)
        ss = list(np.linspace(-1.0, 1.0, 2 * n_branch + 1))
        pts = [self.point(float(s)) for s in ss]
        s = 1.0
        while self.e1_of(s) < e1_max:
            s += 0.1
            pts.append(self.point(min(s, 1.0 + math.log(e1_max / self.e1_start))))
        return pts


def _peak_of_fold_function(t: FlowType, e1_hi: float) -> tuple[float, float]:
    """Maximiser of ``fold_function`` over ``(0, e1_hi)`` by a log grid plus refinement."""
    xs = np.linspace(math.log(e1_hi) - 14.0, math.log(e1_hi), 57)
    vals = [fold_function(math.exp(x), t) for x in xs]
    k = int(np.argmax(vals))
    lo = xs[max(k - 1, 0)]
    hi = xs[min(k + 1, len(xs) - 1)]
    res = minimize_scalar(lambda x: -fold_function(math.exp(x), t), bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-9})
    x_best, v_best = float(res.x), -float(res.fun)
    if vals[k] > v_best:
        x_best, v_best = float(xs[k]), vals[k]
    return math.exp(x_best), v_best


# ---------------------------------------------------------------------------
# critical angle for (2,1)

_ALPHA_STAR_LOCK = threading.Lock()
_ALPHA_STAR: float | None = None


def fold_exists(alpha: float) -> bool:
    """Whether the (2,1) level curve at ``alpha`` folds at a positive ``e1``."""
    t = FlowType(2, 1)
    if alpha < HALF_PI:
        return True
    e1_hi = e1_star(alpha / 2.0)
    return _peak_of_fold_function(t, e1_hi)[1] > alpha


def alpha_star_21() -> float:
    """Largest angle for which the (2,1) level curve has a positive fold.

    Found by bisection on :func:`fold_exists` over ``[pi/2, pi)``; the value
    is computed once per process.
    """
    global _ALPHA_STAR
    with _ALPHA_STAR_LOCK:
        if _ALPHA_STAR is None:
            lo, hi = HALF_PI, math.pi - 1e-6
            if fold_exists(hi):
                _ALPHA_STAR = hi
            else:
                while hi - lo > 1e-10:
                    mid = 0.5 * (lo + hi)
                    if fold_exists(mid):
                        lo = mid
                    else:
                        hi = mid
                _ALPHA_STAR = lo
        return _ALPHA_STAR


@lru_cache(maxsize=256)
def rising_curve(t: FlowType, alpha: float) -> RisingCurve:
    return RisingCurve(t, alpha)


@lru_cache(maxsize=256)
def folded_curve(t: FlowType, alpha: float) -> FoldedCurve:
    if t == FlowType(2, 1) and alpha >= HALF_PI and alpha > alpha_star_21():
        raise UnsupportedRegionError(
            f"type (2,1) at alpha = {alpha!r} lies above the critical angle "
            f"{alpha_star_21():.6f}")
    return FoldedCurve(t, alpha)


def trace_level_curve(t: FlowType, alpha: float, e1_max: float,
                      n_min: int = 100) -> list[tuple[float, float, float]]:
    """Samples ``(e1, e2, half_flux)`` along the level curve out to ``e1_max``.

    (m+1, m) curves are followed through their fold; (m, m+1) curves are a
    graph in ``e1`` and are sampled geometrically.
    """
    if t.kind == "m1_m" and t.m_minus >= 1:
        pts = folded_curve(t, alpha).trace(e1_max, n_min)
    elif t.kind == "m_m1" and t.m_plus >= 1:
        curve = rising_curve(t, alpha)
        x0 = curve._x_first()
        xs = np.linspace(x0, max(math.log(e1_max), x0 + 1.0), n_min)
        pts = []
        for x in xs:
            p = curve.point(float(x))
            if p is None:
                last = (pts[-1].e1, pts[-1].e2) if pts else None
                raise TracingError("lost the level curve", last)
            pts.append(p)
    else:
        raise DomainError(f"type {t} has no two-parameter level curve")
    return [(p.e1, p.e2, p.half_flux) for p in pts]

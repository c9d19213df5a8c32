"""``sector-jh`` command-line front end.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 unsupported region.
JSON documents carry ``"schema": "sector-jh/1"`` and never contain NaN or
infinities; CSV uses LF line endings and 17 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Sequence

import numpy as np

from . import __version__
from .cubic import ComplexPair, FlowType
from .errors import QuadratureError, SectorError, UnsupportedRegionError
from .profile import Profile, reconstruct
from .solve import Existence, SectorProblem, Solution, classify, phi_max

SCHEMA = "sector-jh/1"
MAX_CELLS = 1_000_000

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_UNSUPPORTED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Domain(SectorError):
    """Bad command-line values that parse but lie outside the domain."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the contract here reserves 2 for domain errors
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# formatting


def fmt(x: float) -> str:
    """17 significant digits, with ``-0`` folded into ``0``."""
    return format(float(x) + 0.0, ".17g")


def json_number(x: float | None) -> Any:
    """A finite float, ``None`` for NaN, or a status string for a divergence."""
    if x is None:
        return None
    x = float(x)
    if math.isnan(x):
        return None
    if math.isinf(x):
        return "divergent+" if x > 0 else "divergent-"
    return x + 0.0


def dump_json(obj: dict) -> str:
    return json.dumps({"schema": SCHEMA, **obj}, indent=2, allow_nan=False) + "\n"


def roots_json(roots) -> dict:
    if isinstance(roots, ComplexPair):
        return {"e1": json_number(roots.e1), "c": json_number(roots.c)}
    e1, e2, e3 = roots.roots
    return {"e1": json_number(e1), "e2": json_number(e2), "e3": json_number(e3)}


def solution_json(s: Solution) -> dict:
    return {
        "type": str(s.flow_type),
        "roots": roots_json(s.roots),
        "gamma": None if s.gamma is None else json_number(s.gamma.gamma),
        "b": json_number(s.b),
        "residuals": {"angle": json_number(s.residual_angle),
                      "flux": json_number(s.residual_flux)},
    }


def existence_json(alpha: float, phi: float, t: FlowType, ex: Existence) -> dict:
    return {
        "alpha": json_number(alpha),
        "flux": json_number(phi),
        "type": str(t),
        "exists": ex.exists,
        "count_lower_bound": ex.count_lower_bound,
        "boundary_case": ex.boundary_case,
        "phi_max": json_number(ex.phi_max),
        "solutions": [solution_json(s) for s in ex.solutions],
        "notes": list(ex.notes),
    }


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# argument types


def _flow_type(text: str) -> tuple[int, int]:
    parts = text.strip().strip("()").split(",")
    try:
        mp, mm = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected m+,m- (e.g. 1,2), got {text!r}") from None
    return mp, mm


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    try:
        lo, hi = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo,hi, got {text!r}") from None
    return lo, hi


def _grid(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    try:
        n, m = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NxM, got {text!r}") from None
    if n < 1 or m < 1:
        raise argparse.ArgumentTypeError("grid dimensions must be positive")
    return n, m


def _angle(args, value: float) -> float:
    return math.radians(value) if getattr(args, "degrees", False) else value


def _problem(args) -> tuple[SectorProblem, FlowType]:
    t = FlowType(*args.type)
    return SectorProblem(_angle(args, args.alpha), args.flux, t), t


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args) -> int:
    p, t = _problem(args)
    ex = classify(p)
    if args.json:
        sys.stdout.write(dump_json(existence_json(p.alpha, p.phi, t, ex)))
        return EXIT_OK
    verdict = "exists" if ex.exists else "does not exist"
    lines = [f"type {t} at alpha={fmt(p.alpha)} flux={fmt(p.phi)}: {verdict}"]
    if ex.phi_max is not None:
        lines.append(f"  phi_max = {fmt(ex.phi_max)}")
    for i, s in enumerate(ex.solutions, 1):
        r = s.roots
        desc = (f"e1={fmt(r.e1)} c={fmt(r.c)}" if isinstance(r, ComplexPair)
                else f"e1={fmt(r.e1)} e2={fmt(r.e2)} e3={fmt(r.e3)}")
        lines.append(f"  solution {i} [{s.flow_type}]: {desc} b={fmt(s.b)}")
    for note in ex.notes:
        lines.append(f"  note: {note}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def maxflux_rows(t: FlowType, alphas: Sequence[float]) -> list[str]:
    rows = ["alpha,phi_max,e1,e2,e3,attained"]
    for a in alphas:
        try:
            pm = phi_max(t, a)
        except UnsupportedRegionError:
            rows.append(f"{fmt(a)},,,,,unsupported")
            continue
        except SectorError:
            rows.append(f"{fmt(a)},,,,,none")
            continue
        cols = ["", "", ""]
        if pm.argmax is not None and not isinstance(pm.argmax, ComplexPair):
            cols = [fmt(v) for v in pm.argmax.roots]
        attained = {True: "true", False: "false", None: "unknown"}[pm.attained]
        rows.append(",".join([fmt(a), fmt(pm.value), *cols, attained]))
    return rows


def cmd_maxflux(args) -> int:
    t = FlowType(*args.type)
    lo, hi = _angle(args, args.alpha_min), _angle(args, args.alpha_max)
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if not (0.0 < lo <= hi < math.pi):
        raise _Domain(f"need 0 < alpha-min <= alpha-max < pi, got {lo!r}, {hi!r}")
    alphas = [lo] if args.n == 1 else np.linspace(lo, hi, args.n).tolist()
    _write("\n".join(maxflux_rows(t, alphas)) + "\n", args.out)
    return EXIT_OK


def pick_solution(ex: Existence, branch: str | None) -> Solution:
    sols = sorted(ex.solutions, key=lambda s: s.e1)
    if branch is not None and len(sols) < 2:
        print(f"warning: --branch {branch} ignored, the solution is unique", file=sys.stderr)
    if branch == "high":
        return sols[-1]
    return sols[0]


def profile_csv(p: Profile) -> str:
    lines = ["theta,f,fprime"]
    lines += [f"{fmt(t)},{fmt(f)},{fmt(d)}" for t, f, d in p.samples]
    return "\n".join(lines) + "\n"


def profile_svg(p: Profile, width: int = 640, height: int = 360) -> str:
    """Line plot of ``f(theta)`` with the zero axis, written by hand."""
    pad = 40
    lo, hi = float(np.min(p.f)), float(np.max(p.f))
    lo, hi = min(lo, 0.0), max(hi, 0.0)
    if hi - lo == 0.0:
        hi = lo + 1.0

    def x(t):
        return pad + (t + p.alpha) / (2.0 * p.alpha) * (width - 2 * pad)

    def y(v):
        return height - pad - (v - lo) / (hi - lo) * (height - 2 * pad)

    pts = " ".join(f"{x(t):.3f},{y(v):.3f}" for t, v in zip(p.theta, p.f))
    y0 = f"{y(0.0):.3f}"
    return "\n".join([
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad}" y1="{y0}" x2="{width - pad}" y2="{y0}" stroke="#888" '
        f'stroke-dasharray="4 3"/>',
        f'<polyline fill="none" stroke="#1f4e9c" stroke-width="1.5" points="{pts}"/>',
        f'<text x="{pad}" y="{height - 12}" font-size="12">theta = {fmt(-p.alpha)}</text>',
        f'<text x="{width - pad}" y="{height - 12}" font-size="12" text-anchor="end">'
        f'theta = {fmt(p.alpha)}</text>',
        f'<text x="{pad}" y="20" font-size="12">type {p.flow_type}, flux {fmt(p.phi)}, '
        f'max f = {fmt(float(np.max(p.f)))}</text>',
        "</svg>",
    ]) + "\n"


def cmd_profile(args) -> int:
    p, t = _problem(args)
    ex = classify(p)
    if not ex.solutions:
        print(f"error: no type {t} flow at alpha={fmt(p.alpha)} flux={fmt(p.phi)}",
              file=sys.stderr)
        return EXIT_DOMAIN
    s = pick_solution(ex, args.branch)
    prof = reconstruct(s, n_per_arc=args.samples, mirror=args.mirror)
    _write(profile_csv(prof), args.out)
    if args.svg:
        _write(profile_svg(prof), args.svg)
    return EXIT_OK


def phase_cell(job: tuple[int, int, float, float]) -> dict:
    """One phase-diagram cell; module level so worker processes can pickle it."""
    mp, mm, alpha, phi = job
    try:
        ex = classify(SectorProblem(alpha, phi, FlowType(mp, mm)))
    except UnsupportedRegionError:
        return {"status": "unsupported"}
    except (SectorError, QuadratureError) as exc:
        return {"status": "error", "message": str(exc)}
    return {"exists": ex.exists, "count": ex.count_lower_bound, "boundary": ex.boundary_case}


def phase_polyline(t: FlowType, alphas: Sequence[float]) -> list[list[float]]:
    line = []
    for a in alphas:
        try:
            v = phi_max(t, a).value
        except SectorError:
            continue
        if math.isfinite(v):
            line.append([a, v])
    return line


def build_phase(types: Sequence[FlowType], alpha_range, phi_range, grid, workers: int = 1) -> dict:
    n, m = grid
    if n * m > MAX_CELLS:
        raise _Domain(f"grid of {n * m} cells exceeds the limit of {MAX_CELLS}")
    if not (0.0 < alpha_range[0] <= alpha_range[1] < math.pi):
        raise _Domain(f"alpha range must lie in (0, pi), got {alpha_range!r}")
    alphas = np.linspace(*alpha_range, n).tolist()
    phis = np.linspace(*phi_range, m).tolist()
    jobs = [(t.m_plus, t.m_minus, a, f) for t in types for a in alphas for f in phis]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            flat = list(pool.map(phase_cell, jobs, chunksize=max(1, m)))
    else:
        flat = [phase_cell(j) for j in jobs]
    cells, polylines = {}, {}
    for k, t in enumerate(types):
        block = flat[k * n * m:(k + 1) * n * m]
        cells[str(t)] = [block[i * m:(i + 1) * m] for i in range(n)]
        polylines[str(t)] = phase_polyline(t, alphas)
    return {"alpha_grid": alphas, "phi_grid": phis, "types": [str(t) for t in types],
            "cells": cells, "phi_max": polylines}


def cmd_phase(args) -> int:
    types = [FlowType(*t) for t in args.types]
    a_lo, a_hi = (_angle(args, v) for v in args.alpha_range)
    doc = build_phase(types, (a_lo, a_hi), tuple(args.phi_range), args.grid, args.workers)
    _write(dump_json(doc), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .acceptance import run_all

    results = run_all(args.filter)
    for r in results:
        head = f"{'PASS' if r.passed else 'FAIL'} [{r.number:2d}] {r.name}"
        if args.timings:
            head += f" ({r.runtime:.2f} s, limit {r.limit:g} s)"
        print(head)
        for c in r.checks:
            mark = "ok " if c.ok else "BAD"
            print(f"    {mark} {c.label}: measured {fmt(c.measured)}, "
                  f"expected {c.expected}, tolerance {c.tolerance}")
        if r.error:
            print(f"    error: {r.error}")
    summary = {
        "passed": sum(r.passed for r in results),
        "failed": sum(not r.passed for r in results),
        "criteria": [{"number": r.number, "name": r.name, "passed": r.passed} for r in results],
    }
    sys.stdout.write(dump_json(summary))
    return EXIT_OK if all(r.passed for r in results) else EXIT_DOMAIN


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sector-jh", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def query(p):
        p.add_argument("--alpha", type=float, required=True, help="half-angle in radians")
        p.add_argument("--flux", type=float, required=True)
        p.add_argument("--type", type=_flow_type, required=True, help="m+,m-")
        p.add_argument("--degrees", action="store_true", help="read angles in degrees")

    p = sub.add_parser("classify", help="existence and solutions for one query")
    query(p)
    p.add_argument("--json", action="store_true", help="emit the JSON document")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("maxflux", help="table of maximum fluxes over alpha")
    p.add_argument("--type", type=_flow_type, required=True)
    p.add_argument("--alpha-min", type=float, required=True)
    p.add_argument("--alpha-max", type=float, required=True)
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--out")
    p.add_argument("--degrees", action="store_true")
    p.set_defaults(func=cmd_maxflux)

    p = sub.add_parser("profile", help="sampled f(theta) as CSV")
    query(p)
    p.add_argument("--samples", type=int, default=128, help="sample intervals per arc")
    p.add_argument("--branch", choices=("low", "high"))
    p.add_argument("--mirror", action="store_true")
    p.add_argument("--out")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("phase", help="existence grid over (alpha, flux)")
    p.add_argument("--types", type=_flow_type, nargs="+", required=True)
    p.add_argument("--alpha-range", type=_pair, required=True)
    p.add_argument("--phi-range", type=_pair, required=True)
    p.add_argument("--grid", type=_grid, required=True, help="NxM (alpha x flux)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--degrees", action="store_true")
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--filter", help="criterion number, name fragment or tag")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


_VALUE_FLAGS = ("--alpha", "--flux", "--alpha-range", "--phi-range", "--alpha-min", "--alpha-max")


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--flux -3`` into ``--flux=-3`` so argparse does not read a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        # --help and --version exit 0; parse errors carry EXIT_USAGE
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"sector-jh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedRegionError as exc:
        print(f"sector-jh: unsupported region: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (SectorError, QuadratureError) as exc:
        print(f"sector-jh: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 pass, 1 verification failed, 2 usage or parse error,
3 class violation (map not normalized / not in the required class), 4 I/O error.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

import numpy as np

from . import catalog, mapspec
from .classes import (
    hc_membership,
    hs_membership,
    max_convex_order,
    max_starlike_order,
)
from .convolution import convolution_scan_convex, convolution_scan_starlike
from .core import PolyharmonicMap
from .errors import MapSpecError, NotNormalizedError, PolyharmonicError
from .geometry import PolarGrid, boundary_curve, verify_convex, verify_starlike
from .radii import Family, RadiusProblem, build_radius_polynomial, radius_vs_order_table, smallest_root

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_CLASS, EXIT_IO = 0, 1, 2, 3, 4
CLASSIFY_ORDER = 64
RENDER_ORDER = 256
VERIFY_ORDER = 256


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _num(x: float) -> str:
    return f"{x:.7g}"


def _load_map(args, default_order: int) -> PolyharmonicMap:
    if args.map is not None:
        if args.C is not None or args.J is not None:
            raise _Exit(EXIT_USAGE, "--C/--J apply to --builtin maps only")
        try:
            return mapspec.load(args.map, default_order)
        except OSError as exc:
            raise _Exit(EXIT_IO, f"cannot read {args.map}: {exc.strerror or exc}") from None
        except MapSpecError as exc:
            raise _Exit(EXIT_USAGE, f"{args.map}: {exc}") from None
    doc = {"builtin": args.builtin, "J": args.J if args.J is not None else default_order}
    if args.C is not None:
        doc["C"] = args.C
    try:
        return mapspec.from_document(doc, default_order)
    except MapSpecError as exc:
        raise _Exit(EXIT_USAGE, str(exc)) from None


def _order_text(value: float | None) -> str:
    return "none" if value is None else f"{value:.6f}"


def cmd_classify(args) -> int:
    F = _load_map(args, CLASSIFY_ORDER)
    try:
        hs = hs_membership(F)
        hc = hc_membership(F)
    except NotNormalizedError as exc:
        raise _Exit(EXIT_CLASS, str(exc)) from None
    alpha = max_starlike_order(F)
    beta = max_convex_order(F)
    name = F.label or "map"
    print(f"map {name} p={F.p} J={F.order}")
    for tag, rep in (("HS", hs), ("HC", hc)):
        verdict = "member" if rep.member else "not a member"
        print(f"{tag} sum {rep.sum_value:.6f} budget {rep.budget:g} margin {rep.margin:.6f} ({verdict})")
    print(
        f"HS margin {hs.margin:.6f}; HC margin {hc.margin:.6f}; "
        f"max starlike order {_order_text(alpha)}; max convex order {_order_text(beta)}"
    )
    return EXIT_PASS


def _parse_orders(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise _Exit(EXIT_USAGE, f"--orders: cannot parse {text!r}") from None


def cmd_radius(args) -> int:
    try:
        family = Family.parse(args.family)
        if args.orders:
            rows = radius_vs_order_table(family, args.p, args.C, _parse_orders(args.orders))
            print("order,radius")
            for order, r in rows:
                print(f"{order:.7g},{r:.12f}")
            return EXIT_PASS
        prob = RadiusProblem(family, args.order, args.p, args.C)
    except ValueError as exc:
        raise _Exit(EXIT_USAGE, str(exc)) from None
    bracket = smallest_root(build_radius_polynomial(prob))
    if args.format == "csv":
        print("family,order,p,C,radius,lo,hi")
        print(
            f"{family.value},{prob.order:.7g},{prob.p},{prob.C:.7g},"
            f"{bracket.root:.12f},{bracket.lo:.15f},{bracket.hi:.15f}"
        )
    else:
        print(f"family {family.value} order {prob.order:.7g} p {prob.p} C {prob.C:.7g}")
        print(f"radius {bracket.root:.12f}")
        print(f"bracket [{bracket.lo:.15f}, {bracket.hi:.15f}]")
    return EXIT_PASS


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        n_r, n_t = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise _Exit(EXIT_USAGE, f"--grid: expected <nr>x<ntheta>, got {text!r}") from None
    if n_r < 1 or n_t < 16:
        raise _Exit(EXIT_USAGE, "--grid: need nr >= 1 and ntheta >= 16")
    return n_r, n_t


def cmd_verify(args) -> int:
    if not 0.0 < args.r < 1.0:
        raise _Exit(EXIT_USAGE, f"--r must lie in (0, 1), got {args.r}")
    if not 0.0 <= args.order < 1.0:
        raise _Exit(EXIT_USAGE, f"--order must lie in [0, 1), got {args.order}")
    n_r, n_t = _parse_grid(args.grid)
    F = _load_map(args, VERIFY_ORDER)
    grid = PolarGrid.clustered(args.r, n_r, n_t)
    try:
        if args.method == "geometric":
            check = verify_starlike if args.mode == "starlike" else verify_convex
            report = check(F, args.r, args.order, grid)
        else:
            scan = convolution_scan_starlike if args.mode == "starlike" else convolution_scan_convex
            report = scan(F, args.order, grid, xi_count=args.xi)
    except NotNormalizedError as exc:
        raise _Exit(EXIT_CLASS, str(exc)) from None
    r_w, t_w = report.witness
    print(f"mode {args.mode} method {args.method} order {_num(args.order)} r {_num(args.r)} grid {n_r}x{n_t}")
    if args.method == "geometric":
        print(f"min margin {_num(report.min_value)} at r={_num(r_w)} theta={_num(t_w)}")
    else:
        print(f"min modulus {_num(report.min_value)} enclosed {report.enclosed}")
        print(f"min margin {_num(report.critical_value)} at r={_num(r_w)} theta={_num(t_w)}")
    print("PASS" if report.passed else "FAIL")
    return EXIT_PASS if report.passed else EXIT_FAIL


def render_csv(curve: np.ndarray) -> str:
    theta = 2 * np.pi * np.arange(curve.size) / curve.size
    lines = ["theta,re,im"]
    lines += [f"{_num(t)},{_num(c.real)},{_num(c.imag)}" for t, c in zip(theta, curve)]
    return "\n".join(lines) + "\n"


def render_svg(curve: np.ndarray, reference_circle: bool, size: int = 512) -> str:
    xs = curve.real
    ys = -curve.imag
    lo_x, hi_x = float(xs.min()), float(xs.max())
    lo_y, hi_y = float(ys.min()), float(ys.max())
    if reference_circle:
        lo_x, lo_y = min(lo_x, -0.5), min(lo_y, -0.5)
        hi_x, hi_y = max(hi_x, 0.5), max(hi_y, 0.5)
    pad = 0.05 * max(hi_x - lo_x, hi_y - lo_y, 1e-12)
    vb = (lo_x - pad, lo_y - pad, hi_x - lo_x + 2 * pad, hi_y - lo_y + 2 * pad)
    stroke = _num(vb[2] / 400)
    pts = " L ".join(f"{_num(x)},{_num(y)}" for x, y in zip(xs, ys))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{" ".join(_num(v) for v in vb)}">',
    ]
    if reference_circle:
        out.append(
            f'<circle cx="0" cy="0" r="0.5" fill="none" stroke="#888888" '
            f'stroke-width="{stroke}" stroke-dasharray="{_num(vb[2] / 100)}"/>'
        )
    out.append(f'<path d="M {pts} Z" fill="none" stroke="#000000" stroke-width="{stroke}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_render(args) -> int:
    if not 0.0 < args.r < 1.0:
        raise _Exit(EXIT_USAGE, f"--r must lie in (0, 1), got {args.r}")
    if args.n < 16:
        raise _Exit(EXIT_USAGE, f"--n must be at least 16, got {args.n}")
    F = _load_map(args, RENDER_ORDER)
    curve = boundary_curve(F, args.r, args.n)
    if args.format == "csv":
        text = render_csv(curve)
    else:
        in_hc = F.normalized and hc_membership(F).member
        text = render_svg(curve, in_hc)
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot write {args.out}: {exc.strerror or exc}") from None
    print(f"wrote {args.n} points to {args.out}")
    return EXIT_PASS


def _add_map_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--map", help="path to a JSON map document")
    src.add_argument(
        "--builtin", type=str.upper, choices=[m.value for m in catalog.MapName], help="named map"
    )
    p.add_argument("--C", type=float, default=None, help="coefficient bound for F2/F3")
    p.add_argument("--J", type=int, default=None, help="truncation order")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyharmonic", description="Starlikeness and convexity of polyharmonic maps."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="HS/HC membership and maximal orders")
    _add_map_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("radius", help="radius of starlikeness/convexity")
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--order", type=float, default=0.0)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--orders", help="comma-separated increasing orders (table mode, CSV output)")
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("verify", help="grid verification of starlikeness/convexity")
    _add_map_args(p)
    p.add_argument("--mode", choices=["starlike", "convex"], required=True)
    p.add_argument("--order", type=float, default=0.0)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--grid", default="64x512")
    p.add_argument("--method", choices=["geometric", "convolution"], default="geometric")
    p.add_argument("--xi", type=int, default=64, help="number of xi samples (convolution)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="boundary curve as CSV or SVG")
    _add_map_args(p)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["csv", "svg"], default="csv")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except PolyharmonicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

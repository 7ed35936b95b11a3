"""Command-line front end.

Exit status: 0 success, 1 a verification check failed, 2 invalid input,
3 numerical fault.  Numbers are printed with 12 significant digits, except
in tables, which use full-precision scientific notation.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from typing import Optional, Sequence

from . import bounds, metric, verify
from .errors import DomainError, NumericalFault

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_FAULT = 0, 1, 2, 3
TOL_ENV = "CONIMETRIC_TOL"
MONOTONE_RADII = (0.5, 1.0, 2.0)
MONOTONE_SAMPLES = 64


def fmt(x) -> str:
    if x is bounds.INFINITY:
        return "unbounded"
    if isinstance(x, complex):
        return f"{x.real:.12g}{x.imag:+.12g}j"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def parse_order(text: str) -> bounds.Order:
    t = text.strip().lower()
    if t in ("inf", "infinity", "∞"):
        return bounds.INFINITY
    try:
        return int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"signature entries are integers or inf, got {text!r}") from None


def parse_signature(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated entries, got {text!r}")
    return tuple(parse_order(p) for p in parts)


def parse_orders(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated orders, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"orders must be decimals, got {text!r}") from None


def parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(",")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except (ValueError, IndexError):
        raise argparse.ArgumentTypeError(f"expected lo,hi,count, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("count must be positive")
    return lo, hi, n


def resolve_orders(args) -> metric.SingularOrders:
    if getattr(args, "sig", None) is not None:
        return bounds.TriangleSignature(*args.sig).orders()
    if getattr(args, "orders", None) is None:
        raise DomainError("give --orders or --sig")
    return metric.SingularOrders(*args.orders)


def tolerance_override() -> Optional[float]:
    raw = os.environ.get(TOL_ENV)
    if raw is None or raw == "":
        return None
    try:
        tol = float(raw)
    except ValueError:
        raise DomainError(f"{TOL_ENV}={raw!r} is not a number") from None
    if not (tol > 0 and math.isfinite(tol)):
        raise DomainError(f"{TOL_ENV} must be a positive real, got {raw!r}")
    return tol


def emit(rows: list[dict], form: str, out) -> None:
    if form == "csv":
        keys = list(rows[0])
        out.write(",".join(keys) + "\n")
        for row in rows:
            out.write(",".join(str(row.get(k, "")) for k in keys) + "\n")
    elif form == "records":
        out.write("\n".join("\n".join(f"{k}={v}" for k, v in row.items()) for row in rows) + "\n")
    else:
        for row in rows:
            if len(row) == 1:
                out.write(f"{next(iter(row.values()))}\n")
            else:
                out.write("\n".join(f"{k}: {v}" for k, v in row.items()) + "\n")


def cmd_eval(args, out) -> int:
    o = resolve_orders(args)
    value = metric.density(o, args.z)
    if args.format == "plain":
        emit([{"value": fmt(value)}], "plain", out)
    else:
        emit([{"re": fmt(args.z.real), "im": fmt(args.z.imag), "value": fmt(value)}], args.format, out)
    return EXIT_OK


def cmd_constants(args, out) -> int:
    o = resolve_orders(args)
    ctx = metric.context(o)
    lb = bounds.lower_bound_constants(o)
    k = ctx.constants
    row = {"K1": k.k1, "K2": k.k2, "K3": k.k3, "c0": k.c0,
           "C1": lb.c1, "C3": lb.c3, "lambda(-1)": lb.lambda_minus_one}
    emit([{key: fmt(v) for key, v in row.items()}], args.format, out)
    return EXIT_OK


def cmd_bound(args, out) -> int:
    kind = args.kind
    if kind == "landau":
        row = {"a0": fmt(args.a0), "landau": fmt(bounds.landau_bound(_need_sig(args), args.a0))}
    elif kind == "schottky":
        sig = bounds.TriangleSignature(*_need_sig(args))
        if sig.l is bounds.INFINITY:
            # no poles at all: the bound holds on the whole disk
            value = bounds.schottky_zero_free_bound(sig.j, sig.k, args.f0, args.r)
        else:
            value = bounds.schottky_bound(sig, args.f0, args.r)
        row = {"r": fmt(args.r), "schottky": fmt(value)}
    elif kind == "radius":
        row = {"radius": fmt(bounds.pole_free_radius(_need_sig(args), args.f0))}
    elif kind == "lower":
        o = resolve_orders(args)
        row = {"z": fmt(args.z), "lower": fmt(bounds.lower_bound(o, args.z)),
               "density": fmt(metric.density(o, args.z))}
    else:
        row = {"Lk": fmt(bounds.schottky_Lk(args.k))}
    if args.format == "plain":
        row = {k: v for k, v in row.items() if k in ("landau", "schottky", "radius", "lower", "Lk")}
    emit([row], args.format, out)
    return EXIT_OK


def _need_sig(args):
    if args.sig is None:
        raise DomainError("this bound needs --sig j,k,l")
    return args.sig


def _table_value(what: str, o, z: complex) -> float:
    if what == "density":
        return metric.density(o, z)
    if what == "lowerbound":
        return bounds.lower_bound(o, z)
    return metric.density(o, z) - bounds.lower_bound(o, z)


def cmd_table(args, out) -> int:
    o = resolve_orders(args)
    x0, x1, nx = args.re
    y0, y1, ny = args.im
    grid = verify.GridSpec.rect(x0, x1, y0, y1, nx, ny, args.exclusion)
    a, b, c, d = grid.bounds
    lines = ["re,im,value"]
    nodes = iter(grid.all_points())
    for i in range(ny):
        for j in range(nx):
            z = complex(verify._lin(a, b, nx, j), verify._lin(c, d, ny, i))
            keep = next(nodes)
            value = math.nan if keep is None else _table_value(args.what, o, z)
            lines.append(f"{z.real:.17e},{z.imag:.17e},{'nan' if math.isnan(value) else f'{value:.17e}'}")
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def run_suite(o, suite: str, tol: Optional[float]) -> list[verify.VerificationReport]:
    grid = verify.acceptance_grid()
    reps = []

    def t(default):
        return default if tol is None else tol

    if suite in ("curvature", "all"):
        order, scans = verify.scan_convergence(o, grid, "curvature")
        scans[-1].tolerance = t(verify.CURVATURE_TOL)
        reps += [scans[-1], order]
    if suite in ("schwarzian", "all"):
        order, scans = verify.scan_convergence(o, grid, "schwarzian")
        scans[-1].tolerance = t(verify.SCHWARZIAN_TOL)
        reps += [scans[-1], order]
    if suite in ("symmetry", "all"):
        reps.append(verify.scan_symmetries(o, verify.symmetry_grid(), t(verify.SYMMETRY_TOL)))
    if suite in ("monotone", "all"):
        reps += [verify.scan_monotonicity(o, r, MONOTONE_SAMPLES) for r in MONOTONE_RADII]
    if suite in ("bounds", "all"):
        reps.append(verify.audit_lower_bound(o, verify.bound_grid(), t(verify.EQUALITY_TOL)))
    return reps


def cmd_verify(args, out) -> int:
    o = resolve_orders(args)
    tol = tolerance_override()
    reps = run_suite(o, args.suite, tol)
    failed = [r for r in reps if not r.passed]
    if args.format == "plain":
        for r in reps:
            out.write(r.summary() + "\n")
            out.write("  " + " ".join(f"{k}={v}" for k, v in r.records().items()) + "\n")
        out.write(f"{len(reps) - len(failed)}/{len(reps)} checks passed\n")
    elif args.format == "csv":
        keys = ["check", "orders", "points", "max_abs", "max_rel", "tolerance", "passed"]
        out.write(",".join(keys) + "\n")
        for r in reps:
            rec = r.records()
            out.write(",".join(f'"{rec[k]}"' if "," in str(rec[k]) else str(rec[k]) for k in keys) + "\n")
    else:
        emit([r.records() for r in reps], "records", out)
    return EXIT_FAIL if failed else EXIT_OK


def _add_common(p, orders=True, sig=True):
    p.add_argument("--format", choices=("plain", "csv", "records"), default="plain")
    if orders or sig:
        g = p.add_mutually_exclusive_group()
        if orders:
            g.add_argument("--orders", type=parse_orders, help="alpha1,alpha2,alpha3 in (0, 1]")
        if sig:
            g.add_argument("--sig", type=parse_signature, help="j,k,l (integers >= 2 or inf)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conimetric",
        description="Generalized hyperbolic density on the twice-punctured plane, "
                    "its sharp lower bound and Landau/Schottky bounds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="density at a point")
    _add_common(p)
    p.add_argument("--z", type=parse_complex, required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("constants", help="K1, K2, K3, c0, C1, C3 and lambda(-1)")
    _add_common(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("bound", help="Landau, Schottky, lower bound, pole-free radius, L_k")
    p.add_argument("kind", choices=("landau", "schottky", "lower", "radius", "Lk"))
    _add_common(p)
    p.add_argument("--a0", type=parse_complex, default=None, help="f(0) for the Landau bound")
    p.add_argument("--f0", type=float, default=1.0, help="|f(0)| for Schottky bounds")
    p.add_argument("--r", type=float, default=0.0, help="|z| for the Schottky bound")
    p.add_argument("--z", type=parse_complex, default=None, help="point for the lower bound")
    p.add_argument("--k", type=parse_order, default=None, help="order k for L_k")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("table", help="CSV table over a rectangular grid")
    _add_common(p)
    p.add_argument("--what", choices=("density", "lowerbound", "gap"), default="density")
    p.add_argument("--re", type=parse_range, required=True, help="x0,x1,nx")
    p.add_argument("--im", type=parse_range, required=True, help="y0,y1,ny")
    p.add_argument("--exclusion", type=float, default=metric.PUNCTURE_RADIUS,
                   help="cells this close to 0 or 1 are written as nan")
    p.add_argument("--output", default=None, help="file to write instead of standard output")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="numerical checks of the density")
    p.add_argument("suite", choices=("curvature", "schwarzian", "symmetry", "monotone", "bounds", "all"))
    _add_common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def _check_bound_args(args) -> None:
    if args.command != "bound":
        return
    need = {"landau": "a0", "lower": "z", "Lk": "k"}.get(args.kind)
    if need and getattr(args, need) is None:
        raise DomainError(f"bound {args.kind} needs --{need}")


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        _check_bound_args(args)
        return args.func(args, out)
    except DomainError as exc:
        print(f"conimetric: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalFault as exc:
        print(f"conimetric: numerical fault: {exc}", file=sys.stderr)
        return EXIT_FAULT


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()

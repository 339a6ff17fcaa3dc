"""Command-line entry point: ``ratlength <subcommand> ...``.

Every subcommand prints CSV (full double precision via ``repr``) to stdout.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import descriptor
from .core import CircleGrid
from .crofton import ArcSet, CroftonSampler, crofton_estimate, image_polyline
from .experiments import (
    GammaFit,
    default_schedule,
    estimate_beta,
    fit_gamma,
    records_from_csv,
    records_to_csv,
    run_growth_family,
)
from .factory import (
    KayumovConfig,
    PolePrescription,
    RungeConfig,
    construct_from_poles,
    kayumov_truncate,
    runge_approximate,
)
from .quadrature import BoundReport, boundary_length, sup_norm_circle, verify_bounds
from .univalence import boundary_simple, certify_re_derivative


def _grid(args):
    return CircleGrid(nodes=args.nodes, rtol=args.rtol)


def _emit(out, header, row, with_header):
    if with_header:
        out.write(header + "\n")
    out.write(row + "\n")


def cmd_length(args, out):
    fn = descriptor.load(args.input)
    grid = _grid(args)
    length = boundary_length(fn, grid)
    sup = sup_norm_circle(fn, grid)
    row = f"{fn.degree},{length!r},{sup!r},,,,,"
    _emit(out, BoundReport.CSV_HEADER, row, args.header)


def _certificate(fn, method, resolution=None):
    if method == "re":
        return certify_re_derivative(fn)
    if method == "boundary":
        return boundary_simple(fn, resolution)
    return None


def cmd_bounds(args, out):
    fn = descriptor.load(args.input)
    grid = _grid(args)
    if args.normalize:
        fn = fn.scaled(1.0 / sup_norm_circle(fn, grid))
    report = verify_bounds(fn, _certificate(fn, args.certify), grid)
    _emit(out, BoundReport.CSV_HEADER, report.csv_row(), args.header)


def cmd_crofton(args, out):
    fn = descriptor.load(args.input)
    poly = image_polyline(fn, ArcSet.full(), args.points)
    bmax = args.bmax if args.bmax is not None else float(np.max(np.abs(poly.vertices)))
    sampler = CroftonSampler(
        theta_count=args.theta,
        b_count=args.offsets,
        b_max=bmax,
        mode="monte-carlo" if args.mc else "grid",
        seed=args.seed,
    )
    est = crofton_estimate(poly, sampler)
    _emit(out, est.CSV_HEADER, est.csv_row(), args.header)


def cmd_construct(args, out):
    if args.kind == "poles":
        spec = json.loads(Path(args.spec).read_text())
        p = PolePrescription(
            tuple(descriptor.decode_complex(b) for b in spec["poles"]),
            spec.get("policy", "equal-split"),
            spec.get("budget_fraction", 0.9),
        )
        fn = construct_from_poles(p)
    elif args.kind == "kayumov":
        coeffs = descriptor.load_coefficients(args.coeffs, args.n)
        fn = kayumov_truncate(coeffs, KayumovConfig(args.n, args.r), normalize=args.normalize)
    else:
        target = descriptor.load(args.target)
        cfg = RungeConfig(
            delta=args.delta,
            order=args.order,
            arcs=None if args.auto_n else args.arcs,
            epsilon=args.eps,
        )
        fn = runge_approximate(target, cfg)
    descriptor.dump(fn, args.out)
    out.write(f"{fn.form},{fn.degree}\n")


def cmd_certify(args, out):
    fn = descriptor.load(args.input)
    cert = _certificate(fn, args.method, args.resolution)
    _emit(out, cert.CSV_HEADER, cert.csv_row(), True)


def cmd_gamma(args, out):
    family = json.loads(Path(args.family).read_text())
    records = run_growth_family(family, _grid(args))
    text = records_to_csv(records)
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)


def cmd_gamma_fit(args, out):
    fit = fit_gamma(records_from_csv(Path(args.input).read_text()))
    _emit(out, GammaFit.CSV_HEADER, fit.csv_row(), True)


def cmd_spectrum(args, out):
    if args.coeffs:
        data = json.loads(Path(args.coeffs).read_text())
        if isinstance(data, dict) and data.get("kind") == "koebe":
            fn = descriptor.from_dict(data)
        else:
            coeffs = descriptor.load_coefficients(args.coeffs)
            fn = descriptor.from_dict(
                {"kind": "taylor", "coefficients": [[0.0, 0.0]] + [descriptor.encode_complex(c) for c in coeffs]}
            )
    else:
        fn = descriptor.load(args.input)
    if args.schedule == "default":
        schedule = default_schedule()
    else:
        schedule = [float(x) for x in args.schedule.split(",")]
    est = estimate_beta(fn, args.t, schedule, _grid(args))
    out.write("t,beta,radii,r_min,r_max\n")
    out.write(f"{est.t!r},{est.beta!r},{len(est.schedule)},{est.schedule[0]!r},{est.schedule[-1]!r}\n")


def build_parser():
    parser = argparse.ArgumentParser(prog="ratlength", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def quad_opts(p):
        p.add_argument("--nodes", type=int, default=64, help="initial circle nodes (power of two)")
        p.add_argument("--rtol", type=float, default=1e-10)

    p = sub.add_parser("length", help="boundary length of a function")
    p.add_argument("--input", required=True)
    p.add_argument("--header", action="store_true")
    quad_opts(p)
    p.set_defaults(func=cmd_length)

    p = sub.add_parser("bounds", help="full bound report")
    p.add_argument("--input", required=True)
    p.add_argument("--certify", choices=["re", "boundary", "none"], default="boundary")
    p.add_argument("--normalize", action="store_true", help="divide by the sup norm first")
    p.add_argument("--header", action="store_true")
    quad_opts(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("crofton", help="Crofton length of the boundary image")
    p.add_argument("--input", required=True)
    p.add_argument("--points", type=int, default=8192)
    p.add_argument("--theta", type=int, default=720)
    p.add_argument("--offsets", type=int, default=720)
    p.add_argument("--bmax", type=float)
    p.add_argument("--mc", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--header", action="store_true")
    p.set_defaults(func=cmd_crofton)

    p = sub.add_parser("construct", help="build a univalent rational function")
    csub = p.add_subparsers(dest="kind", required=True)
    c = csub.add_parser("poles")
    c.add_argument("--spec", required=True)
    c.add_argument("--out", required=True)
    c = csub.add_parser("kayumov")
    c.add_argument("--coeffs", required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--r", type=float)
    c.add_argument("--normalize", action="store_true")
    c.add_argument("--out", required=True)
    c = csub.add_parser("runge")
    c.add_argument("--target", required=True)
    c.add_argument("--delta", type=float, required=True)
    c.add_argument("--order", type=int, required=True)
    group = c.add_mutually_exclusive_group(required=True)
    group.add_argument("--arcs", type=int)
    group.add_argument("--auto-n", action="store_true")
    c.add_argument("--eps", type=float)
    c.add_argument("--out", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="univalence certificate")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=["re", "boundary"], default="boundary")
    p.add_argument("--resolution", type=int)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("gamma", help="run a growth family")
    p.add_argument("--family", required=True)
    p.add_argument("--out")
    quad_opts(p)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("gamma-fit", help="fit the family exponent of a records file")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_gamma_fit)

    p = sub.add_parser("spectrum", help="integral-means exponent estimate")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--coeffs")
    src.add_argument("--input")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--schedule", default="default")
    quad_opts(p)
    p.set_defaults(func=cmd_spectrum)
    return parser


def main(argv=None, out=None):
    args = build_parser().parse_args(argv)
    args.func(args, out or sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())

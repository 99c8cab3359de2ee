"""Command-line pipeline: generate fields, decompose them, report momenta.

Exit codes: 0 success, 1 usage error, 2 numeric range/domain error,
3 I/O or file-format error.  All outputs are deterministic data files;
angles are radians unless --degrees is given.
"""

import argparse
import json
import math
import re
import sys

import numpy as np

from . import fieldio, momenta, spectral, waves
from .errors import (
    DomainError,
    FormatError,
    NumericalError,
    RangeError,
    UndefinedMeanError,
    UsageError,
)
from .specfun import mathieu_eigen

EXIT_USAGE = 1
EXIT_RANGE = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let values like "-12,12" or "-1.25,-0.5" (charge ranges, origins)
        # pass as argument values rather than being mistaken for flags
        self._negative_number_matcher = re.compile(
            r"^-\d+(\.\d+)?(,-?\d+(\.\d+)?)*$")

    def error(self, message):
        raise UsageError(message)


def _pair(text, kind, flag):
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"{flag} expects two comma-separated values, got {text!r}")
    try:
        return kind(parts[0]), kind(parts[1])
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from exc


def build_parser():
    parser = _Parser(prog="wavemom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="sample a wave family member onto a field file")
    gen.add_argument("--family", required=True,
                     choices=["plane", "bessel", "mathieu-even", "mathieu-odd"])
    gen.add_argument("--k", type=float, required=True, help="wavenumber (rad/length)")
    gen.add_argument("--theta", type=float, required=True, help="cone angle in (0, pi)")
    gen.add_argument("--phi", type=float, default=0.0, help="plane-wave azimuth")
    gen.add_argument("--n", type=int, default=0, help="charge / order")
    gen.add_argument("--f", type=float, default=None, help="semi-focal distance")
    gen.add_argument("--grid", default="128,128", metavar="NX,NY")
    gen.add_argument("--dx", type=float, default=None)
    gen.add_argument("--dy", type=float, default=None)
    gen.add_argument("--origin", default=None, metavar="X0,Y0",
                     help="lower-left sample (default: grid centred on 0)")
    gen.add_argument("--z", type=float, default=0.0, help="slice plane")
    gen.add_argument("--degrees", action="store_true",
                     help="interpret --theta/--phi in degrees")
    gen.add_argument("--out", required=True)

    spec = sub.add_parser("spectrum", help="ring and charge spectra of a field file")
    spec.add_argument("--in", dest="infile", required=True)
    spec.add_argument("--in-format", choices=["hwmf", "csv"], default="hwmf",
                      help="csv ingests x,y,re,im lattices (supply --k/--theta)")
    spec.add_argument("--k", type=float, default=None,
                      help="wavenumber for csv input")
    spec.add_argument("--theta", type=float, default=None,
                      help="cone angle for csv input")
    spec.add_argument("--ring-samples", type=int, default=spectral.DEFAULT_RING_SAMPLES)
    spec.add_argument("--n-range", default="-40,40", metavar="NMIN,NMAX")
    spec.add_argument("--window", default="none", choices=["none", "hann"])
    spec.add_argument("--out-ring", default=None)
    spec.add_argument("--out-oam", default=None)
    spec.add_argument("--out-summary", default=None,
                      help="JSON summary (default: stdout)")

    mom = sub.add_parser("momenta", help="momentum report for a field file")
    mom.add_argument("--in", dest="infile", required=True)
    mom.add_argument("--in-format", choices=["hwmf", "csv"], default="hwmf",
                     help="csv ingests x,y,re,im lattices (supply --k/--theta)")
    mom.add_argument("--k", type=float, default=None,
                     help="wavenumber for csv input")
    mom.add_argument("--theta", type=float, default=None,
                     help="cone angle for csv input")
    mom.add_argument("--methods", default="spectral,grid",
                     help="comma list from spectral,grid,paper")
    mom.add_argument("--ring-samples", type=int, default=spectral.DEFAULT_RING_SAMPLES)
    mom.add_argument("--n-range", default="-40,40", metavar="NMIN,NMAX")
    mom.add_argument("--window", default="none", choices=["none", "hann"])
    mom.add_argument("--f", type=float, default=None, help="semi-focal distance")
    mom.add_argument("--parity", choices=["even", "odd"], default=None)
    mom.add_argument("--n", type=int, default=None, help="elliptic order")
    mom.add_argument("--q", type=float, default=None,
                     help="separation parameter (default: from --f and metadata)")
    mom.add_argument("--out", default=None, help="report JSON (default: stdout)")

    tab = sub.add_parser("mathieu-table",
                         help="characteristic values and coefficients as CSV")
    tab.add_argument("--parity", required=True, choices=["even", "odd"])
    tab.add_argument("--n", type=int, required=True)
    tab.add_argument("--q", type=float, required=True)
    tab.add_argument("--q-max", type=float, default=None)
    tab.add_argument("--q-steps", type=int, default=None)
    tab.add_argument("--out", default=None, help="CSV path (default: stdout)")
    return parser


def _cmd_gen(args):
    theta = math.radians(args.theta) if args.degrees else args.theta
    phi = math.radians(args.phi) if args.degrees else args.phi
    if args.family == "plane":
        label = waves.PlaneWave(args.k, theta, phi)
    elif args.family == "bessel":
        label = waves.BesselWave(args.k, theta, args.n)
    else:
        if args.f is None:
            raise UsageError("--f is required for elliptic families")
        parity = args.family.split("-", 1)[1]
        label = waves.MathieuWave(args.k, theta, args.n, parity, args.f)

    nx, ny = _pair(args.grid, int, "--grid")
    dx = args.dx if args.dx is not None else 2.0 * math.pi / (32.0 * args.k)
    dy = args.dy if args.dy is not None else dx
    x0 = y0 = None
    if args.origin is not None:
        x0, y0 = _pair(args.origin, float, "--origin")
    grid = waves.sample_grid(label, nx, ny, dx, dy, x0=x0, y0=y0, z=args.z,
                             description=f"{args.family} k={args.k:g} theta={theta:g}")
    fieldio.write_field(grid, args.out)
    return 0


def _read_input(args):
    if args.in_format == "csv":
        return fieldio.read_field_csv(args.infile, k=args.k, theta=args.theta)
    return fieldio.read_field(args.infile)


def _cmd_spectrum(args):
    grid = _read_input(args)
    n_min, n_max = _pair(args.n_range, int, "--n-range")
    ring = spectral.ring_spectrum_from_grid(grid, args.ring_samples, args.window)
    spec = spectral.oam_spectrum(ring, n_min, n_max)
    if args.out_ring:
        fieldio.write_ring_csv(ring, args.out_ring)
    if args.out_oam:
        fieldio.write_oam_csv(spec, args.out_oam)
    summary = {
        "k": ring.k,
        "theta": ring.theta,
        "ring_samples": ring.m,
        "window": args.window,
        "n_min": n_min,
        "n_max": n_max,
        "ring_norm": spectral.parseval_norm(ring),
        "oam_norm": spec.norm,
        "weighted_ring_norm": math.sin(ring.theta) * spectral.parseval_norm(ring),
        "parseval_residual": spectral.parseval_residual(ring, spec),
    }
    text = json.dumps(summary, indent=2)
    if args.out_summary:
        with open(args.out_summary, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _cmd_momenta(args):
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    known = {"spectral", "grid", "paper"}
    if not methods or not set(methods) <= known:
        raise UsageError(f"--methods takes a comma list from {sorted(known)}")
    if "paper" in methods and (args.parity is None or args.n is None):
        raise UsageError("--methods paper needs --parity and --n "
                         "(and --q, or --f with cone metadata)")
    n_min, n_max = _pair(args.n_range, int, "--n-range")
    grid = _read_input(args)
    reports = momenta.report(
        grid, methods=methods, m=args.ring_samples, n_min=n_min, n_max=n_max,
        window=args.window, f=args.f, parity=args.parity, n=args.n, q=args.q,
    )
    text = fieldio.report_json_str(reports)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _class_tag(parity, n):
    if parity == "even":
        return "ce-even" if n % 2 == 0 else "ce-odd"
    return "se-odd" if n % 2 == 1 else "se-even"


def _cmd_mathieu_table(args):
    if (args.q_max is None) != (args.q_steps is None):
        raise UsageError("--q-max and --q-steps must be given together")
    if args.q_max is None:
        qs = [args.q]
    else:
        if args.q_steps < 2:
            raise UsageError("--q-steps must be at least 2")
        qs = list(np.linspace(args.q, args.q_max, args.q_steps))
    lines = ["class,n,q,char_value,j,coeff"]
    tag = _class_tag(args.parity, args.n)
    for q in qs:
        eig = mathieu_eigen(args.parity, args.n, q)
        for j, coeff in zip(eig.harmonics, eig.coeffs):
            lines.append(
                f"{tag},{args.n},{float(q):.17g},{eig.char_value:.17g},"
                f"{int(j)},{float(coeff):.17g}"
            )
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "spectrum": _cmd_spectrum,
    "momenta": _cmd_momenta,
    "mathieu-table": _cmd_mathieu_table,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RangeError, DomainError, NumericalError, UndefinedMeanError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

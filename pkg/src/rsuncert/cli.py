"""Command-line harness.

Subcommands:
    verify-bound   uncertainty product of a saturating or user-supplied field
    spectrum       radial eigenvalues gamma_n = 5/2 + 2n
    field          evaluate the closed-form field on a grid, write .rsf
    spread         <r^2>(t) trajectory and the quadratic spreading-law fit

Exit codes: 0 success, 2 input error, 3 degenerate field, 4 resolution
error, 5 truncation.  Units: c = 1; times are given in units of a/c.
Option precedence: command-line flags > --config JSON file > defaults.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .analytic_fields import SaturatingFieldSpec, photon_wavefunctions, saturating_rs_field
from .errors import (
    DegenerateFieldError,
    ResolutionError,
    RsfFormatError,
    TruncationError,
)
from .eigensolver import RadialProblem, solve_radial
from .kspace import FieldGrid, Grid3D
from .moments import uncertainty_product
from .propagator import spreading_trajectory
from .rsfio import read_rsf, write_rsf

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_RESOLUTION = 4
EXIT_TRUNCATION = 5


def _fmt(value) -> str:
    return "%.17g" % value


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_text(report, fmt):
    d = report.to_dict()
    if fmt == "csv":
        keys = ["delta_r2", "delta_k2", "product", "bound",
                "saturation_ratio", "norm_r", "norm_k"]
        head = ",".join(keys)
        row = ",".join(_fmt(d[k]) for k in keys)
        return head + "\n" + row + "\n"
    return json.dumps(d, indent=2) + "\n"


def _grid_size(value):
    n = int(value)
    if n < 16 or n > 256 or (n & (n - 1)) != 0:
        raise argparse.ArgumentTypeError(
            "grid size must be a power of two between 16 and 256"
        )
    return n


def _complex(value):
    try:
        return complex(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad complex literal {value!r}") from exc


def _times(value):
    try:
        return [float(tok) for tok in value.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad time list {value!r}") from exc


def _apply_config(args, parser, argv):
    """Merge --config JSON under explicitly given flags (flags win)."""
    if not getattr(args, "config", None):
        return args
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config file: {exc}")
    given = {tok.split("=")[0].lstrip("-").replace("-", "_")
             for tok in argv if tok.startswith("--")}
    for key, val in cfg.items():
        attr = key.replace("-", "_")
        if hasattr(args, attr) and attr not in given:
            setattr(args, attr, val)
    return args


def _field_spec(args) -> SaturatingFieldSpec:
    a = float(args.a)
    cp = args.c_plus
    cm = args.c_minus
    if cp is None and cm is None:
        return SaturatingFieldSpec.simplest(C=1.0, a=a)
    return SaturatingFieldSpec(a=a, c_plus=complex(cp or 0.0), c_minus=complex(cm or 0.0))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_verify_bound(args) -> int:
    """Uncertainty product of a saturating or stored field vs the 5/2 bound."""
    tol = float(args.tolerance if args.tolerance is not None else 1e-3)
    saturating = args.input is None
    try:
        if saturating:
            spec = _field_spec(args)
            method = args.method or "analytic"
            if method == "analytic":
                report = uncertainty_product(spec.amplitudes())
            else:
                grid = Grid3D.centered(args.grid, args.extent * spec.a).fourier_dual()
                from .kspace import synthesize_kspace

                report = uncertainty_product(synthesize_kspace(spec.amplitudes(), grid))
        else:
            field = read_rsf(args.input)
            report = uncertainty_product(field)
    except RsfFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DegenerateFieldError as exc:
        print(f"error: degenerate field: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE

    _emit(_report_text(report, args.format), args.out)
    ok = report.product >= report.bound - tol
    if saturating:
        ok = ok and abs(report.saturation_ratio - 1.0) <= tol
    return EXIT_OK if ok else 1


def cmd_spectrum(args) -> int:
    """Radial eigenvalues against 5/2 + 2n."""
    tol = float(args.tolerance if args.tolerance is not None else 1e-3)
    try:
        problem = RadialProblem(kappa_max=args.kappa_max, n_points=args.n_points)
        spectrum = solve_radial(problem, n_states=args.n_states)
    except ResolutionError as exc:
        print(f"error: resolution: {exc}", file=sys.stderr)
        return EXIT_RESOLUTION

    _emit(spectrum.to_json() + "\n", args.out)
    if args.dump_eigenfunctions:
        with open(args.dump_eigenfunctions, "w", encoding="utf-8") as fh:
            fh.write(spectrum.eigenfunctions_csv())
    targets = 2.5 + 2.0 * np.arange(args.n_states)
    ok = np.all(np.abs(spectrum.eigenvalues - targets) <= tol)
    return EXIT_OK if ok else 1


def cmd_field(args) -> int:
    """Evaluate the closed-form field (or a photon wave function) on a grid,
    write an .rsf file and optionally an axis-profile CSV."""
    spec = _field_spec(args)
    t = float(args.time) * spec.a  # times in units of a/c, c = 1

    def evaluate(points):
        if args.photon:
            fp, fm = photon_wavefunctions(points, t, spec)
            return fp if args.photon == "plus" else fm
        return saturating_rs_field(points, t, spec)

    grid = Grid3D.centered(args.grid, args.extent * spec.a)
    points = np.stack(np.meshgrid(*grid.axes(), indexing="ij"), axis=-1)
    field = FieldGrid(evaluate(points), grid, "position")
    try:
        write_rsf(args.out_field, field)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.profile_out:
        axis = {"x": 0, "y": 1, "z": 2}[args.profile_axis]
        coords = np.linspace(-args.extent * spec.a / 2, args.extent * spec.a / 2, 257)
        pts = np.zeros((coords.size, 3))
        pts[:, axis] = coords
        vals = evaluate(pts)
        lines = [f"{args.profile_axis},ReFx,ImFx,ReFy,ImFy,ReFz,ImFz"]
        for i, cvt in enumerate(coords):
            row = [_fmt(cvt)]
            for comp in range(3):
                row += [_fmt(vals[i, comp].real), _fmt(vals[i, comp].imag)]
            lines.append(",".join(row))
        try:
            with open(args.profile_out, "w", encoding="utf-8") as fh:
                fh.write("\n".join(lines) + "\n")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    return EXIT_OK


def cmd_spread(args) -> int:
    """<r^2>(t) trajectory and the quadratic spreading-law fit."""
    spec = _field_spec(args)
    tol = float(args.tolerance if args.tolerance is not None else 0.01)
    times = np.asarray(args.times, dtype=float) * spec.a  # units of a/c
    grid = Grid3D.centered(args.grid, args.extent * spec.a).fourier_dual()
    try:
        traj = spreading_trajectory(
            spec.amplitudes(), times, grid=grid, method="grid", strict=True
        )
    except TruncationError as exc:
        print(f"error: truncation: {exc}", file=sys.stderr)
        print("hint: enlarge --extent or reduce the time span", file=sys.stderr)
        return EXIT_TRUNCATION
    except DegenerateFieldError as exc:
        print(f"error: degenerate field: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE

    text = traj.to_csv() if args.format == "csv" else traj.to_json() + "\n"
    _emit(text, args.out)
    _, _, gamma, _ = traj.quadratic_fit()
    ok = abs(2.0 * gamma - 2.0) <= tol * 2.0
    if 0.0 in traj.times:
        i0 = int(np.argmin(np.abs(traj.times)))
        ok = ok and np.all(traj.second_moments >= traj.second_moments[i0] - 1e-9)
    return EXIT_OK if ok else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_field_opts(p):
    p.add_argument("--a", type=float, default=1.0, help="packet scale a")
    p.add_argument("--c-plus", type=_complex, default=None,
                   help="positive-helicity coefficient (complex literal)")
    p.add_argument("--c-minus", type=_complex, default=None,
                   help="negative-helicity coefficient")
    p.add_argument("--grid", type=_grid_size, default=64,
                   help="grid nodes per axis (power of two, 16..256)")
    p.add_argument("--extent", type=float, default=16.0,
                   help="box edge length in units of a")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsuncert",
        description="Verify the electromagnetic uncertainty relation "
                    "Dr*Dk >= 5/2 and its saturating fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify-bound", help="uncertainty product vs the bound")
    _add_field_opts(pv)
    pv.add_argument("--saturating", action="store_true",
                    help="use the built-in saturating field (default when no --input)")
    pv.add_argument("--input", default=None, help=".rsf field file to analyze")
    pv.add_argument("--method", choices=["analytic", "grid"], default=None,
                    help="evaluation path for the built-in field (default analytic)")
    pv.add_argument("--tolerance", type=float, default=None)
    pv.add_argument("--out", default=None)
    pv.add_argument("--format", choices=["json", "csv"], default="json")
    pv.add_argument("--config", default=None, help="JSON config file")
    pv.set_defaults(func=cmd_verify_bound)

    ps = sub.add_parser("spectrum", help="radial eigenvalues 5/2 + 2n")
    ps.add_argument("--kappa-max", type=float, default=10.0)
    ps.add_argument("--n-points", type=int, default=2000)
    ps.add_argument("--n-states", type=int, default=3)
    ps.add_argument("--tolerance", type=float, default=None)
    ps.add_argument("--dump-eigenfunctions", default=None,
                    help="CSV path for sampled eigenfunctions")
    ps.add_argument("--out", default=None)
    ps.add_argument("--config", default=None)
    ps.set_defaults(func=cmd_spectrum)

    pf = sub.add_parser("field", help="evaluate the closed-form field, write .rsf")
    _add_field_opts(pf)
    pf.add_argument("--time", type=float, default=0.0, help="time in units of a/c")
    pf.add_argument("--photon", choices=["plus", "minus"], default=None,
                    help="write a photon wave function instead of the classical field")
    pf.add_argument("--out-field", required=True, help=".rsf output path")
    pf.add_argument("--profile-axis", choices=["x", "y", "z"], default="z")
    pf.add_argument("--profile-out", default=None, help="axis-profile CSV path")
    pf.add_argument("--config", default=None)
    pf.set_defaults(func=cmd_field)

    pp = sub.add_parser("spread", help="<r^2>(t) trajectory and spreading fit")
    _add_field_opts(pp)
    pp.add_argument("--times", type=_times, default=[-1.0, -0.5, 0.0, 0.5, 1.0],
                    help="comma-separated times in units of a/c")
    pp.add_argument("--tolerance", type=float, default=None,
                    help="relative tolerance on the fitted acceleration")
    pp.add_argument("--out", default=None)
    pp.add_argument("--format", choices=["json", "csv"], default="json")
    pp.add_argument("--config", default=None)
    pp.set_defaults(func=cmd_spread)

    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    args = _apply_config(args, parser, argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

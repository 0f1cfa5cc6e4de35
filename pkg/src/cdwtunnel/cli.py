"""Command-line interface.

Subcommands write CSV curves (17 significant digits) or JSON fit reports and
print a one-line summary.  Exit codes: 0 success, 2 usage error, 3 I/O error,
4 computation error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .errors import CDWError
from .fitting import FitOptions, IEDataset, compare_models, fit_model
from .models import (
    LinRateParams,
    SolitonCurrentParams,
    SolitonProfileParams,
    WashboardParams,
    ZenerParams,
    drive_theta,
    lin_rate,
    soliton_current,
    soliton_profile,
    washboard_potential,
    zener_current,
)
from .mathcore import SeriesControl
from .tunneling import overlap_field_scan

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_COMPUTE = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fmt(x):
    return format(float(x), ".17g")


def write_csv(path, header, columns):
    rows = zip(*columns)
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _grid(args, lo_name="e_min", hi_name="e_max"):
    lo, hi, n = getattr(args, lo_name), getattr(args, hi_name), args.n
    if not lo < hi:
        raise UsageError(f"--{lo_name.replace('_', '-')} must be smaller than --{hi_name.replace('_', '-')}")
    if n < 2:
        raise UsageError("--n must be at least 2")
    return np.linspace(lo, hi, n)


def _cmd_eval(args):
    e = _grid(args)
    if args.model == "soliton":
        current = soliton_current(e, SolitonCurrentParams(args.c1, args.et, args.cv))
    else:
        current = zener_current(e, ZenerParams(args.gp, args.et))
    if args.noise:
        rng = np.random.default_rng(args.seed)
        current = current * (1.0 + args.noise * rng.normal(size=current.size))
    write_csv(args.out, ["E", "I"], [e, current])
    return f"eval: wrote {e.size} {args.model} points to {args.out}"


def _fit_options(args):
    return FitOptions(
        max_iterations=args.max_iter,
        tolerance=args.tol,
        restarts=args.restarts,
        seed=args.seed,
        fixed_cv=args.cv,
    )


def _cmd_fit(args):
    data = IEDataset.read_csv(args.data)
    result = fit_model(data, args.model, _fit_options(args))
    write_json(args.out, result.to_dict())
    return (
        f"fit: {args.model} ssr={result.sum_squared_residual:.6g} "
        f"converged={result.converged} -> {args.out}"
    )


def _cmd_compare(args):
    data = IEDataset.read_csv(args.data)
    cmp = compare_models(data, _fit_options(args))
    write_json(args.out, cmp.to_dict())
    return f"compare: preferred={cmp.preferred} -> {args.out}"


def _cmd_lin(args):
    e = _grid(args)
    if e[0] <= 0.0:
        raise UsageError("--e-min must be positive for lin")
    p = LinRateParams(args.d, args.charge, args.mass, SeriesControl(args.series_tol))
    rate = [lin_rate(float(v), p) for v in e]
    write_csv(args.out, ["E", "w"], [e, rate])
    return f"lin: wrote {e.size} D={args.d} rates to {args.out}"


def _washboard(args):
    return WashboardParams(
        pinning_coefficient=args.pinning,
        electrostatic_mu_e=args.mu_e,
        e_star_field=args.e_star,
        false_vacuum_phase=args.phi_false,
        true_vacuum_phase=args.phi_true,
        mode=args.mode,
    )


def _cmd_potential(args):
    p = _washboard(args)
    phi = _grid(args, "phi_min", "phi_max")
    theta = drive_theta(args.e_field, p)
    write_csv(args.out, ["phi", "V"], [phi, washboard_potential(phi, theta, p)])
    return f"potential: wrote {phi.size} points at theta={theta:.6g} to {args.out}"


def _cmd_profile(args):
    p = SolitonProfileParams(args.b, args.xa, args.xb)
    x = _grid(args, "x_min", "x_max")
    write_csv(args.out, ["x", "phi"], [x, soliton_profile(x, p)])
    return f"profile: wrote {x.size} points to {args.out}"


def _cmd_overlap_scan(args):
    e = _grid(args)
    if e[0] <= 0.0:
        raise UsageError("--e-min must be positive for overlap-scan")
    scan = overlap_field_scan(e, _washboard(args), (args.delta_s, args.e_star_charge), args.modes)
    es, ov = zip(*scan)
    write_csv(args.out, ["E", "overlap"], [es, ov])
    return f"overlap-scan: wrote {len(scan)} points to {args.out}"


def _add_grid(p, lo="--e-min", hi="--e-max", lo_default=0.05, hi_default=3.0, n_default=200):
    p.add_argument(lo, type=float, default=lo_default)
    p.add_argument(hi, type=float, default=hi_default)
    p.add_argument("--n", type=int, default=n_default, help="number of grid points")


def _add_fit_opts(p):
    p.add_argument("--data", required=True, help="CSV with header E,I")
    p.add_argument("--seed", type=int, default=0, help="seed for restart perturbations")
    p.add_argument("--restarts", type=int, default=4)
    p.add_argument("--max-iter", type=int, default=2000)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--cv", type=float, default=1.0, help="c_V held fixed in soliton fits")
    p.add_argument("--out", required=True)


def _add_washboard(p):
    p.add_argument("--pinning", type=float, default=100.0, help="pinning energy D*w_p^2")
    p.add_argument("--mu-e", type=float, default=1.0, help="electrostatic coefficient mu_E")
    p.add_argument("--e-star", type=float, default=2.0, help="internal field E*")
    p.add_argument("--phi-false", type=float, default=0.0)
    p.add_argument("--phi-true", type=float, default=2.0 * math.pi)
    p.add_argument("--mode", choices=("free", "experimental"), default="free")


def build_parser():
    parser = _Parser(prog="cdwtunnel", description="S-S' pair current, Zener and pair-creation curves")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("eval", help="evaluate a current model on a field grid")
    p.add_argument("--model", choices=("soliton", "zener"), default="soliton")
    p.add_argument("--et", type=float, default=1.0, help="threshold field E_T")
    p.add_argument("--cv", type=float, default=1.0)
    p.add_argument("--c1", type=float, default=1.0, help="soliton amplitude")
    p.add_argument("--gp", type=float, default=1.0, help="Zener conductance G_p")
    p.add_argument("--noise", type=float, default=0.0, help="relative Gaussian noise level")
    p.add_argument("--seed", type=int, default=0)
    _add_grid(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("fit", help="fit one current model to E,I data")
    p.add_argument("--model", choices=("soliton", "zener"), default="soliton")
    _add_fit_opts(p)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("compare", help="fit both current models and pick the better one")
    _add_fit_opts(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("lin", help="pair creation rate in D+1 dimensions")
    p.add_argument("--d", type=int, choices=(1, 2, 3), default=1)
    p.add_argument("--charge", type=float, default=1.0)
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--series-tol", type=float, default=1e-12)
    _add_grid(p, lo_default=0.01, hi_default=2.0, n_default=100)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_lin)

    p = sub.add_parser("potential", help="washboard potential against phase")
    _add_washboard(p)
    p.add_argument("--e-field", type=float, default=0.0, help="applied field setting the drive")
    _add_grid(p, "--phi-min", "--phi-max", -math.pi, 3.0 * math.pi, 400)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_potential)

    p = sub.add_parser("profile", help="kink/antikink phase profile")
    p.add_argument("--b", type=float, default=1.0, help="steepness")
    p.add_argument("--xa", type=float, default=-10.0)
    p.add_argument("--xb", type=float, default=10.0)
    _add_grid(p, "--x-min", "--x-max", -30.0, 30.0, 400)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("overlap-scan", help="finite-mode overlap against field")
    _add_washboard(p)
    p.add_argument("--delta-s", type=float, default=1.0)
    p.add_argument("--e-star-charge", type=float, default=2.0)
    p.add_argument("--modes", type=int, default=64)
    _add_grid(p, lo_default=0.5, hi_default=3.0, n_default=50)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_overlap_scan)

    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        summary = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CDWError as exc:
        print(f"error: {str(exc).splitlines()[0]}", file=sys.stderr)
        return EXIT_COMPUTE
    print(summary)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

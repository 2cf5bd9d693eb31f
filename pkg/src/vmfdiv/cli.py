"""Command-line interface: ``vmfdiv {div,sweep,moments,profile,check}``.

Scalar commands print one JSON object; stream commands print headered CSV.
Exit codes are 0 on success, 1 when a check fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import checks, divergence
from .vmf import log_normalizer, make_vmf, moments, uniform_sphere

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

# Direction inputs whose norm is further than this from one trigger a warning.
DIRECTION_WARN_TOL = 1e-6

DIRECTION_FLAGS = ("--mu", "--mu-y", "--mu-z")

KINDS = ("kl", "renyi", "chi2", "hellinger2", "tv-bounds")


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _number(value):
    """JSON/CSV-safe float: shortest round-trip repr, non-finite as a string."""
    value = float(value)
    if math.isfinite(value):
        return value
    return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")


def _csv_cell(value):
    value = _number(value)
    return repr(value) if isinstance(value, float) else value


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    return _number(obj)


def _emit_json(record, out):
    out.write(json.dumps(_jsonable(record), allow_nan=False) + "\n")


def parse_direction(text, name):
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"{name} must be comma-separated numbers, got {text!r}") from None
    norm = math.sqrt(sum(v * v for v in values))
    if math.isfinite(norm) and norm > 0 and abs(norm - 1.0) > DIRECTION_WARN_TOL:
        print(f"warning: {name} has norm {norm:.17g}; normalizing", file=sys.stderr)
    return values


def parse_grid(text):
    """``start:stop:factor`` -> geometric grid ``start, start*factor, ...`` up to ``stop``."""
    try:
        start, stop, factor = (float(v) for v in text.split(":"))
    except ValueError:
        raise UsageError(f"grid must be start:stop:factor, got {text!r}") from None
    if not (start > 0 and factor > 1 and math.isfinite(stop)):
        raise UsageError("grid needs start > 0 and factor > 1")
    grid = []
    k = 0
    while True:
        value = start * factor**k
        if value > stop * (1 + 1e-12):
            break
        grid.append(value)
        k += 1
    if not grid:
        raise UsageError(f"grid {text!r} is empty")
    return grid


def _add_pair_flags(parser):
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--p", type=int, required=True)
    parser.add_argument("--mu-y", required=True)
    ref = parser.add_mutually_exclusive_group(required=True)
    ref.add_argument("--kappa-z", type=float)
    ref.add_argument("--uniform-ref", action="store_true")
    parser.add_argument("--mu-z")
    parser.add_argument("--alpha", type=float)


def _reference(args):
    if args.uniform_ref:
        return uniform_sphere(args.p)
    if args.mu_z is None:
        raise UsageError("--kappa-z needs --mu-z")
    return make_vmf(args.p, args.kappa_z, parse_direction(args.mu_z, "--mu-z"))


def _evaluate(kind, y, z, alpha):
    if kind == "tv-bounds":
        report = divergence.tv_bounds(y, z)
        return {
            "value": report.best_tv_upper,
            "hellinger_sq": report.hellinger_sq,
            "kl": report.kl,
            "chi_sq": report.chi_sq,
            "pinsker_bound": report.pinsker_bound,
            "pinsker_alpha": report.pinsker_alpha,
            "best_tv_upper": report.best_tv_upper,
        }
    if kind == "renyi":
        if alpha is None:
            raise UsageError("--kind renyi needs --alpha")
        result = divergence.renyi(y, z, alpha)
    elif kind == "kl":
        result = divergence.kl(y, z)
    elif kind == "chi2":
        result = divergence.chi_square(y, z)
    else:
        result = divergence.hellinger_sq(y, z)
    return {"value": result.value, "branch": result.branch.value}


def _pair_echo(args):
    echo = {"kind": args.kind, "p": args.p, "mu_y": args.mu_y}
    if args.uniform_ref:
        echo["reference"] = "uniform"
    else:
        echo.update(kappa_z=args.kappa_z, mu_z=args.mu_z)
    if args.alpha is not None:
        echo["alpha"] = args.alpha
    return echo


def cmd_div(args, out):
    y = make_vmf(args.p, args.kappa_y, parse_direction(args.mu_y, "--mu-y"))
    record = _pair_echo(args)
    record["kappa_y"] = args.kappa_y
    record.update(_evaluate(args.kind, y, _reference(args), args.alpha))
    _emit_json(record, out)
    return EXIT_OK


def cmd_sweep(args, out):
    grid = parse_grid(args.kappa_y_grid)
    mu_y = parse_direction(args.mu_y, "--mu-y")
    z = _reference(args)
    rows = []
    for ky in grid:
        value = _evaluate(args.kind, make_vmf(args.p, ky, mu_y), z, args.alpha)["value"]
        rows.append((ky, value, value / math.log(ky) if ky != 1.0 else math.nan, value / ky))
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("kappa_y", "value", "value_over_ln_kappa_y", "value_over_kappa_y"))
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return EXIT_OK


def cmd_moments(args, out):
    dist = make_vmf(args.p, args.kappa, parse_direction(args.mu, "--mu"))
    m = moments(dist)
    _emit_json({
        "p": args.p,
        "kappa": args.kappa,
        "mu": args.mu,
        "mean": m.mean,
        "covariance": m.covariance.ravel(),
        "mean_resultant_length": m.mean_resultant_length,
        "circular_variance": m.circular_variance,
        "covariance_trace": float(np.trace(m.covariance)),
    }, out)
    return EXIT_OK


def cmd_profile(args, out):
    if args.p not in (2, 3):
        raise UsageError("profile supports --p 2 or --p 3 only")
    if args.n_angles < 2:
        raise UsageError("--n-angles must be at least 2")
    try:
        kappas = [float(v) for v in args.kappa.split(",")]
    except ValueError:
        raise UsageError(f"--kappa must be comma-separated numbers, got {args.kappa!r}") from None
    thetas = np.linspace(0.0, math.pi, args.n_angles)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("kappa", "theta", "density"))
    for kappa in kappas:
        log_c = log_normalizer(args.p, kappa)
        for theta in thetas:
            density = math.exp(kappa * math.cos(theta) - log_c)
            writer.writerow((_csv_cell(kappa), _csv_cell(theta), _csv_cell(density)))
    return EXIT_OK


def cmd_check(args, out):
    if args.suite != "all" and args.suite not in checks.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}")
    results = checks.run(args.suite, seed=args.seed, samples=args.samples)
    width = max(len(f"{r.suite}: {r.name}") for r in results)
    for r in results:
        label = f"{r.suite}: {r.name}"
        out.write(f"{'PASS' if r.passed else 'FAIL'}  {label:<{width}}  {r.detail}\n")
    failed = sum(not r.passed for r in results)
    out.write(f"{len(results) - failed}/{len(results)} checks passed\n")
    return EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


def build_parser():
    parser = _Parser(prog="vmfdiv", description="von Mises-Fisher divergences, moments and checks")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    div = sub.add_parser("div", help="evaluate one divergence")
    _add_pair_flags(div)
    div.add_argument("--kappa-y", type=float, required=True)
    div.set_defaults(func=cmd_div)

    sweep = sub.add_parser("sweep", help="divergence over a geometric kappa_y grid (CSV)")
    _add_pair_flags(sweep)
    sweep.add_argument("--kappa-y-grid", required=True, metavar="START:STOP:FACTOR")
    sweep.set_defaults(func=cmd_sweep)

    mom = sub.add_parser("moments", help="mean, covariance and circular variance")
    mom.add_argument("--p", type=int, required=True)
    mom.add_argument("--kappa", type=float, required=True)
    mom.add_argument("--mu", required=True)
    mom.set_defaults(func=cmd_moments)

    prof = sub.add_parser("profile", help="density against angle from the mean direction (CSV)")
    prof.add_argument("--p", type=int, required=True)
    prof.add_argument("--kappa", required=True, help="comma-separated concentrations")
    prof.add_argument("--n-angles", type=int, default=181)
    prof.set_defaults(func=cmd_profile)

    chk = sub.add_parser("check", help="run built-in verification suites")
    chk.add_argument("--suite", required=True, help=f"one of {', '.join(checks.SUITES)}, all")
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--samples", type=lambda s: int(float(s)), default=None,
                     help="Monte Carlo samples per estimate (default $VMF_CHECK_SAMPLES or 1e6)")
    chk.set_defaults(func=cmd_check)
    return parser


def _join_direction_values(argv):
    """Attach values such as ``-1,0,0`` to their flag so argparse does not read them as options."""
    joined = []
    it = iter(argv)
    for token in it:
        if token in DIRECTION_FLAGS:
            value = next(it, None)
            joined.append(token if value is None else f"{token}={value}")
        else:
            joined.append(token)
    return joined


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_join_direction_values(argv))
        return args.func(args, out)
    except (ValueError, TypeError) as exc:
        print(f"vmfdiv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

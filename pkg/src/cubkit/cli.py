"""Command-line entry point: ``cubkit {rule,interpolate,lebesgue,region}``.

Exit codes: 0 success, 1 usage error, 2 verification shortfall,
3 numerical failure. Data goes to stdout (or ``--out``), diagnostics to stderr.
"""

import argparse
import sys
from datetime import datetime, timezone

import numpy as np

from cubkit import __version__
from cubkit.errors import CubkitError, InputError, NumericalError
from cubkit.oracle import WeightSpec, default_order

EXIT_OK, EXIT_USAGE, EXIT_SHORTFALL, EXIT_NUMERICAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(text, out):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(v):
    return "%.17g" % v


# --------------------------------------------------------------------------
# test functions

def _parse_poly(spec):
    terms = []
    for chunk in spec.split(","):
        parts = chunk.split(":")
        if len(parts) != 3:
            raise UsageError(f"bad polynomial term {chunk!r}; expected coeff:a:b")
        try:
            c, a, b = float(parts[0]), int(parts[1]), int(parts[2])
        except ValueError:
            raise UsageError(f"bad polynomial term {chunk!r}") from None
        if a < 0 or b < 0:
            raise UsageError("exponents must be non-negative")
        terms.append((c, a, b))

    def f(x, y):
        return sum(c * x ** a * y ** b for c, a, b in terms) + 0 * x
    return f


def named_function(tag):
    """Vectorized ``f(x, y)`` for a CLI function tag."""
    if tag == "runge2d":
        return lambda x, y: 1.0 / (1.0 + 25.0 * (x * x + y * y))
    if tag == "cospi":
        return lambda x, y: np.cos(np.pi * (x + y))
    if tag.startswith("poly:"):
        return _parse_poly(tag[5:])
    raise UsageError(f"unknown function {tag!r}; use runge2d, cospi or poly:c:a:b,...")


# --------------------------------------------------------------------------
# commands

def cmd_rule(args):
    from cubkit.cubature import minimal_rule, near_minimal_rule, verify_rule
    from cubkit.io import RuleDocument

    if args.kind == "minimal" and args.sigma > 0:
        raise UsageError("minimal rules exist here only for sigma = -0.5")
    spec = WeightSpec(args.alpha, args.beta, args.sigma)
    order = args.oracle_order if args.oracle_order is not None else default_order()
    if args.kind == "minimal":
        rule = minimal_rule(spec, args.m)
    else:
        rule = near_minimal_rule(spec, args.m)
    verified = None
    if args.verify_degree is not None:
        report = verify_rule(rule, args.verify_degree, order)
        verified = report.max_exact_degree
        print(f"verified through degree {verified} (max residual "
              f"{report.max_residual():.3e})", file=sys.stderr)
    meta = {"tool_version": __version__, "oracle_order": order}
    if args.timestamp:
        meta["timestamp"] = datetime.now(timezone.utc).isoformat()
    doc = RuleDocument.from_rule(rule, verified, meta)
    _emit(doc.to_json() if args.format == "json" else doc.to_csv(), args.out)
    if verified is not None and verified < args.verify_degree:
        return EXIT_SHORTFALL
    return EXIT_OK


def cmd_interpolate(args):
    from cubkit.interpolation import interpolation_operator, lagrange_interpolate, sample

    f = named_function(args.function)
    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    op = interpolation_operator(WeightSpec(args.alpha, args.beta), args.m)
    g = np.linspace(-1.0, 1.0, args.grid)
    X, Y = np.meshgrid(g, g, indexing="ij")
    vals = lagrange_interpolate(op, sample(op, f), X, Y)
    lines = ["x,y,value" + (",f,error" if args.error else "")]
    if args.error:
        exact = np.broadcast_to(np.asarray(f(X, Y), dtype=float), X.shape)
        err = exact - vals
    for idx in np.ndindex(X.shape):
        row = [_fmt(X[idx]), _fmt(Y[idx]), _fmt(vals[idx])]
        if args.error:
            row += [_fmt(exact[idx]), _fmt(err[idx])]
        lines.append(",".join(row))
    if args.error:
        lines.append(f"# max_abs_error={_fmt(np.max(np.abs(err)))}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _parse_int_list(text):
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None
    if not vals or any(v < 0 for v in vals):
        raise UsageError("--m-list needs non-negative integers")
    return vals


def growth_regime(alpha, beta):
    top = max(alpha, beta)
    if top < -0.5:
        return "unspecified"
    return "log-squared" if top == -0.5 else "power-law"


def cmd_lebesgue(args):
    from cubkit.interpolation import fit_lebesgue, interpolation_operator, lebesgue_constant

    ms = _parse_int_list(args.m_list)
    if args.grid < 64:
        raise UsageError("--grid must be at least 64")
    spec = WeightSpec(args.alpha, args.beta)
    lams = []
    lines = ["m,n,lebesgue"]
    for m in ms:
        lam = lebesgue_constant(interpolation_operator(spec, m), args.grid)
        lams.append(lam)
        lines.append(f"{m},{2 * m + 1},{_fmt(lam)}")
    if args.fit:
        if len(ms) < 2:
            raise UsageError("--fit needs at least two values in --m-list")
        fit = fit_lebesgue(ms, lams)
        regime = growth_regime(args.alpha, args.beta)
        lines.append(f"# fit regime={regime} power_exponent={fit['power_exponent']:.6f} "
                     f"log_exponent={fit['log_exponent']:.6f} ratio={fit['ratio']:.6f}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_region(args):
    from cubkit.cubature import minimal_rule, near_minimal_rule
    from cubkit.geometry import check_node_region, region_curves

    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    spec = WeightSpec(args.alpha, args.beta)
    rule = minimal_rule(spec, args.m) if args.kind == "minimal" else near_minimal_rule(spec, args.m)
    curves = region_curves(args.m, spec.jacobi, args.samples)
    report = check_node_region(rule, curves)
    th = f"{_fmt(curves.theta_1)},{_fmt(curves.theta_m)}"
    lines = ["kind,label,index,x,y,inside,theta_1,theta_m"]
    for label, pts in curves.curves.items():
        for i, (x, y) in enumerate(pts):
            lines.append(f"curve,{label},{i},{_fmt(x)},{_fmt(y)},,{th}")
    for i, (x, y, o, ok) in enumerate(zip(rule.x, rule.y, rule.orbits, report.flags)):
        label = f"{o[0]}:{o[1]}:{o[2]}"
        lines.append(f"node,{label},{i},{_fmt(x)},{_fmt(y)},{int(ok)},{th}")
    _emit("\n".join(lines) + "\n", args.out)
    if not report.inside:
        print(f"{len(report.failures)} node(s) outside the region", file=sys.stderr)
        return EXIT_SHORTFALL
    return EXIT_OK


# --------------------------------------------------------------------------

def build_parser():
    parser = _Parser(prog="cubkit", description="Cubature rules and interpolation on the square.")
    parser.add_argument("--version", action="version", version=f"cubkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def weight_args(p, sigma=False):
        p.add_argument("--alpha", type=float, required=True)
        p.add_argument("--beta", type=float, required=True)
        if sigma:
            p.add_argument("--sigma", type=float, choices=(-0.5, 0.5), default=-0.5)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--out", default=None)

    p = sub.add_parser("rule", help="emit a cubature rule")
    weight_args(p, sigma=True)
    p.add_argument("--kind", choices=("near-minimal", "minimal"), default="near-minimal")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--verify-degree", type=int, default=None)
    p.add_argument("--oracle-order", type=int, default=None)
    p.add_argument("--timestamp", action="store_true", help="record the UTC time in metadata")
    p.set_defaults(func=cmd_rule)

    p = sub.add_parser("interpolate", help="evaluate the interpolant on a uniform grid")
    weight_args(p)
    p.add_argument("--function", required=True)
    p.add_argument("--grid", type=int, default=32)
    p.add_argument("--error", action="store_true")
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("lebesgue", help="Lebesgue constants over several m")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--m-list", default="2,4,8,16")
    p.add_argument("--grid", type=int, default=256)
    p.add_argument("--fit", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_lebesgue)

    p = sub.add_parser("region", help="node-region curves and node membership")
    weight_args(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--kind", choices=("near-minimal", "minimal"), default="near-minimal")
    p.set_defaults(func=cmd_region)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InputError) as exc:
        print(f"cubkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"cubkit: numerical failure: {exc}", file=sys.stderr)
        diag = getattr(exc, "diagnostics", None)
        if diag:
            print(f"cubkit: diagnostics: {diag}", file=sys.stderr)
        return EXIT_NUMERICAL
    except CubkitError as exc:
        print(f"cubkit: error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())

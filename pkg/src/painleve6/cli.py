"""Command-line interface: ``painleve6 <subcommand> ...``.

JSON for structured output, CSV for plot series.  Complex numbers are
[re, im] pairs and every float is written with 17 significant digits, so
identical inputs give byte-identical files.  Exit codes: 0 success, 1
numerical failure, 2 invalid input; errors go to stderr as JSON.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import elliptic, golden, monodromy, oracle, params, poles, series, shimomura, symmetry
from .covering import CoveringPoint
from .errors import PainleveError, ValidationError

DIGITS_ENV = "PAINLEVE6_DIGITS"


class UsageError(ValidationError):
    pass


# -- formatting ------------------------------------------------------------------------

def fmt(v: float) -> str:
    v = float(v)
    if math.isnan(v) or math.isinf(v):
        return json.dumps(str(v))
    s = format(v, ".17g")
    return "0" if s == "-0" else s


def _plain(v):
    """Python/numpy/mpmath scalars to float, complex or int."""
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, (float, np.floating)):
        return float(v)
    if isinstance(v, (complex, np.complexfloating)):
        return complex(v)
    if isinstance(v, np.integer):
        return int(v)
    if hasattr(v, "imag"):  # mpmath
        z = complex(v)
        return z if z.imag else z.real
    return v


def dumps(obj, indent: int = 0) -> str:
    pad = "  " * (indent + 1)
    end = "  " * indent
    obj = _plain(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(_plain(v), (dict, list, tuple, np.ndarray, complex)) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, complex):
        return f"[{fmt(obj.real)}, {fmt(obj.imag)}]"
    if isinstance(obj, float):
        return fmt(obj)
    return json.dumps(obj)


def cpair(z) -> list:
    z = complex(_plain(z))
    return [z.real, z.imag]


def csv_row(values) -> str:
    out = []
    for v in values:
        v = _plain(v)
        out.append(fmt(v) if isinstance(v, float) else str(v))
    return ",".join(out)


# -- parsing ---------------------------------------------------------------------------

def parse_complex(s) -> complex:
    """'re,im', a Python complex literal or a real number."""
    if isinstance(s, (int, float, complex)):
        return complex(s)
    t = str(s).strip().replace(" ", "")
    try:
        if "," in t:
            re_, im_ = t.split(",")
            return complex(float(re_), float(im_))
        return complex(t.replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse complex number {s!r}") from None


def parse_point(s):
    """A point of the covering: 'L:ln|x|,arg' or a complex number on the principal sheet."""
    t = str(s).strip()
    if t.startswith("L:"):
        la, arg = (float(v) for v in t[2:].split(","))
        return CoveringPoint(la, arg)
    return parse_complex(t)


def parse_list(s, n: int | None = None) -> list:
    sep = ";" if ";" in s else ","
    vals = [parse_complex(v) for v in s.split(sep) if v.strip()]
    if n is not None and len(vals) != n:
        raise UsageError(f"expected {n} values, got {len(vals)}", value=s)
    return vals


def parse_consts(items) -> dict:
    out = {}
    for it in items or []:
        if "=" not in it:
            raise UsageError(f"constant {it!r} is not of the form key=value")
        k, v = it.split("=", 1)
        k = k.strip()
        if k in ("k", "sign"):
            out[k] = int(v)
        else:
            out[k] = parse_complex(v)
    return out


def theta_arg(args, default=None):
    if getattr(args, "theta", None) is None:
        if default is None:
            raise UsageError("--theta is required")
        return params.ThetaClass(*default)
    return params.ThetaClass(*[parse_complex(v) for v in args.theta])


def default_digits(fallback):
    v = os.environ.get(DIGITS_ENV)
    if not v:
        return fallback
    try:
        d = int(v)
    except ValueError:
        raise UsageError(f"{DIGITS_ENV} must be an integer", value=v) from None
    return d


def read_json(path):
    try:
        with (sys.stdin if path == "-" else open(path)) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read JSON from {path}: {e}") from None


def write(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)


# -- subcommands -----------------------------------------------------------------------

def cmd_params(args):
    if args.json:
        obj = read_json(args.json)
        if "alpha" in obj:
            co = [complex(*obj[k]) if isinstance(obj[k], list) else complex(obj[k])
                  for k in ("alpha", "beta", "gamma", "delta")]
            p = params.parameters(*co)
        else:
            th = [complex(*obj[k]) if isinstance(obj[k], list) else complex(obj[k])
                  for k in ("theta0", "thetax", "theta1", "thetaInf")]
            p = params.coefficients_from_theta(th)
    elif args.theta is not None:
        p = params.coefficients_from_theta(theta_arg(args))
    elif args.coefficients is not None:
        p = params.parameters(*[parse_complex(v) for v in args.coefficients])
    else:
        raise UsageError("give --theta, --coefficients or --json")
    out = p.to_json()
    out["traces"] = [cpair(v) for v in params.trace_from_theta(p.theta)]
    write(args, dumps(out))


def cmd_fricke(args):
    if args.json:
        d = monodromy.MonodromyData.from_json(read_json(args.json))
    elif args.p:
        d = monodromy.MonodromyData(*parse_list(args.p, 7))
    else:
        raise UsageError("give --p or --json")
    r = monodromy.fricke_residual(d)
    write(args, dumps({"residual": complex(r), "abs": format(abs(r), ".15e"), "onCubic": d.on_cubic()}))


def cmd_symmetry(args):
    op = symmetry.SymmetryOp.parse(args.op)
    if args.coeffs:
        b = series.BranchExpansion.from_json(read_json(args.coeffs))
        write(args, dumps(symmetry.transport_expansion(op, b).to_json()))
    elif args.traces:
        d = monodromy.MonodromyData(*parse_list(args.traces, 7))
        write(args, dumps(symmetry.apply_to_traces(op, d).to_json()))
    elif args.point:
        x, y = parse_complex(args.point[0]), parse_complex(args.point[1])
        if args.dy is not None:
            X, Y, DY = symmetry.apply_to_point_derivative(op, x, y, parse_complex(args.dy))
            write(args, dumps({"x": complex(X), "y": complex(Y), "dy": complex(DY)}))
        else:
            X, Y = symmetry.apply_to_point(op, x, y)
            write(args, dumps({"x": complex(X), "y": complex(Y)}))
    elif args.theta is not None:
        th = symmetry.apply_to_theta(op, theta_arg(args))
        write(args, dumps({"theta": [complex(v) for v in th.as_tuple()]}))
    else:
        raise UsageError("give --theta, --point, --traces or --coeffs")


def cmd_expand(args):
    th = theta_arg(args, default=(0, 0, 0, 1))
    b = series.expand_branch(args.cls, parse_consts(args.const), th, args.order,
                             digits=args.digits if args.digits is not None else default_digits(None))
    write(args, dumps(b.to_json()))


def cmd_eval(args):
    b = series.BranchExpansion.from_json(read_json(args.coeffs))
    rows = []
    for s in args.x:
        x = parse_point(s)
        ev = series.evaluate(b, x, radius=args.radius)
        rows.append({"x": s, "value": complex(ev.value), "error": float(ev.error),
                     "denominator": None if ev.denominator is None else complex(ev.denominator)})
    write(args, dumps(rows[0] if len(rows) == 1 else rows))


def cmd_domain(args):
    s = parse_complex(args.sigma)
    a = parse_complex(args.a)
    if args.theta is not None:
        rule = shimomura.aya_rule(s, a, theta_arg(args))
    else:
        rule = {shimomura.sigma_N(s, args.N, args.sign): a}
    d = shimomura.domain_for_N(s, rule, args.N, args.sign, r=args.r)
    rows = d.boundary_polylines(args.log_min, args.samples)
    lines = ["# sigma_N = " + dumps(complex(d.sigma)) + ", a = " + dumps(complex(d.a)),
             "ln_abs_x,lower_im_sigma_arg_x,upper_im_sigma_arg_x"]
    lines += [csv_row(r) for r in rows]
    write(args, "\n".join(lines))


def cmd_classify(args):
    write(args, dumps(shimomura.classify_approach(args.slope, parse_complex(args.sigma))))


def cmd_elliptic(args):
    th = theta_arg(args, default=(0, 0, 0, 1))
    br = elliptic.v_elliptic_coefficients(parse_complex(args.nu1), parse_complex(args.nu2), th, args.order, args.r)
    rows = []
    for s in args.x:
        x = parse_point(s)
        rows.append((s, complex(br.argument(x)), complex(br.value(x, check_domain=not args.no_domain_check))))
    if args.csv:
        lines = ["x,re_u,im_u,re_y,im_y"]
        lines += [csv_row([f'"{s}"', u.real, u.imag, y.real, y.imag]) for s, u, y in rows]
        write(args, "\n".join(lines))
    else:
        out = [{"x": s, "u": u, "y": y} for s, u, y in rows]
        write(args, dumps(out[0] if len(out) == 1 else out))


def cmd_halfperiods(args):
    hp = elliptic.half_periods(parse_point(args.x))
    write(args, dumps({"omega1": complex(hp.omega1), "omega2": complex(hp.omega2), "tau": complex(hp.tau)}))


def _refine(task):
    rec, k, j = task
    xi, res, _ = poles.refine_pole(rec, k, j)
    return k, j, complex(poles._c(xi)), float(res)


def cmd_poles(args):
    digits = args.digits if args.digits is not None else default_digits(poles.DEFAULT_DIGITS)
    order = max(args.order, 1)
    if args.preset == "cp2":
        rec = poles.cp2_expansion(order, digits)
    else:
        if args.nu is None or args.phi is None or args.theta is None:
            raise UsageError("give --preset cp2 or all of --nu, --phi, --theta")
        nu = parse_complex(args.nu)
        if abs(nu.imag) > 0 or nu.real == 0:
            raise UsageError("nu must be real and nonzero", nu=nu)
        rec = poles.reciprocal_coefficients(nu.real, parse_complex(args.phi), theta_arg(args), order, digits)
    ks = range(args.k_min, args.k_max + 1)
    lattice = {(k, j): complex(poles._c(x)) for k, j, x in poles.zero_lattice(rec, ks)}
    tasks = [(rec, k, j) for k in ks for j in (1, 2)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            refined = list(ex.map(_refine, tasks))
    else:
        refined = [_refine(t) for t in tasks]
    lines = [f"# nu = {fmt(complex(poles._c(rec.nu)).real)}",
             f"# phi = {' '.join(fmt(v) for v in cpair(poles._c(rec.phi)))}"]
    if order >= 3:
        for j in (1, 2):
            for N, v in sorted(poles.pole_corrections(rec, j, order).items()):
                if N >= 3:
                    z = complex(poles._c(v))
                    lines.append(f"# Delta{N}({j}) = {fmt(z.real)} {fmt(z.imag)}")
    lines.append("k,j,re_x,im_x,re_xi,im_xi,abs_residual")
    for k, j, xi, res in refined:
        x = lattice[(k, j)]
        lines.append(csv_row([k, j, x.real, x.imag, xi.real, xi.imag, res]))
    write(args, "\n".join(lines))


def cmd_integrate(args):
    th = theta_arg(args)
    p = params.coefficients_from_theta(th)
    path = parse_list(args.path)
    if not path:
        raise UsageError("--path needs at least one point")
    tr = oracle.integrate(p, parse_complex(args.x0), parse_complex(args.y0), parse_complex(args.dy0), path,
                          tol=args.tol, chart=args.chart)
    lines = ["re_x,im_x,re_y,im_y,chart"]
    for x, y, c in tr.rows():
        y = complex(y)
        lines.append(csv_row([x.real, x.imag, y.real, y.imag, c]))
    write(args, "\n".join(lines))


def cmd_check(args):
    if args.golden:
        names = args.only or None
    else:
        names = [n for suite in (args.suite or golden.SUITES) for n in golden.SUITES[suite]]
    rows = golden.run(names, out=sys.stderr if args.out in (None, "-") and args.json else None)
    failed = [r for r in rows if r["status"] in ("FAIL", "XPASS")]
    if args.json:
        write(args, dumps(rows))
    else:
        width = max((len(r["name"]) for r in rows), default=10)
        lines = [f"{r['status']:5s}  {r['name']:{width}s}  {r['seconds']:7.2f}s  {r['detail']}" for r in rows]
        counts = {s: sum(r["status"] == s for r in rows) for s in ("PASS", "FAIL", "XFAIL", "XPASS")}
        lines.append(" ".join(f"{k}={v}" for k, v in counts.items()))
        write(args, "\n".join(lines))
    return 1 if failed else 0


# -- parser ----------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", default="-", help="output file, '-' for standard output")
    theta = _Parser(add_help=False)
    theta.add_argument("--theta", nargs=4, metavar=("T0", "TX", "T1", "TINF"))

    p = _Parser(prog="painleve6", description="Critical behaviour, poles and numerics for Painleve VI.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("params", parents=[common, theta], help="theta <-> (alpha, beta, gamma, delta)")
    s.add_argument("--coefficients", nargs=4, metavar=("ALPHA", "BETA", "GAMMA", "DELTA"))
    s.add_argument("--json")
    s.set_defaults(fn=cmd_params)

    s = sub.add_parser("fricke", parents=[common], help="residual of the Fricke cubic")
    s.add_argument("--p", help="p0,px,p1,pinf,p0x,px1,p01")
    s.add_argument("--json")
    s.set_defaults(fn=cmd_fricke)

    s = sub.add_parser("symmetry", parents=[common, theta], help="birational symmetries")
    s.add_argument("--op", required=True, help="permute01 | invx | swapxy")
    s.add_argument("--point", nargs=2, metavar=("X", "Y"))
    s.add_argument("--dy")
    s.add_argument("--traces", help="p0,px,p1,pinf,p0x,px1,p01")
    s.add_argument("--coeffs", help="expansion JSON")
    s.set_defaults(fn=cmd_symmetry)

    s = sub.add_parser("expand", parents=[common, theta], help="coefficients of a critical expansion")
    s.add_argument("--class", dest="cls", required=True, help="class tag, e.g. PowerGeneric, taylor6")
    s.add_argument("--const", action="append", metavar="KEY=VALUE")
    s.add_argument("--order", type=int, default=6)
    s.add_argument("--digits", type=int)
    s.set_defaults(fn=cmd_expand)

    s = sub.add_parser("eval", parents=[common], help="evaluate an expansion")
    s.add_argument("--coeffs", required=True)
    s.add_argument("--x", action="append", required=True, help="re,im or L:ln|x|,arg")
    s.add_argument("--radius", type=float, default=series.DEFAULT_RADIUS)
    s.set_defaults(fn=cmd_eval)

    s = sub.add_parser("domain", parents=[common, theta], help="boundary of a critical domain as CSV")
    s.add_argument("--sigma", required=True)
    s.add_argument("--a", required=True)
    s.add_argument("--r", type=float, default=shimomura.DEFAULT_R)
    s.add_argument("--N", type=int, default=0)
    s.add_argument("--sign", type=int, choices=(1, -1), default=1)
    s.add_argument("--log-min", type=float, default=-30.0)
    s.add_argument("--samples", type=int, default=50)
    s.set_defaults(fn=cmd_domain)

    s = sub.add_parser("classify", parents=[common], help="behaviour along a direction of approach")
    s.add_argument("--slope", type=float, required=True)
    s.add_argument("--sigma", required=True)
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("elliptic", parents=[common, theta], help="elliptic representation")
    s.add_argument("--nu1", required=True)
    s.add_argument("--nu2", required=True)
    s.add_argument("--x", action="append", required=True, help="re,im or L:ln|x|,arg")
    s.add_argument("--order", type=int, default=elliptic.DEFAULT_ORDER)
    s.add_argument("--r", type=float, default=elliptic.DEFAULT_R)
    s.add_argument("--no-domain-check", action="store_true")
    s.add_argument("--csv", action="store_true")
    s.set_defaults(fn=cmd_elliptic)

    s = sub.add_parser("halfperiods", parents=[common], help="half periods omega1, omega2")
    s.add_argument("--x", required=True)
    s.set_defaults(fn=cmd_halfperiods)

    s = sub.add_parser("poles", parents=[common, theta], help="pole lattice of an inverse-oscillatory branch")
    s.add_argument("--preset", choices=("cp2",))
    s.add_argument("--nu")
    s.add_argument("--phi")
    s.add_argument("--k-min", type=int, default=0)
    s.add_argument("--k-max", type=int, default=2)
    s.add_argument("--order", type=int, default=4)
    s.add_argument("--digits", type=int)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(fn=cmd_poles)

    s = sub.add_parser("integrate", parents=[common, theta], help="integrate PVI along a polyline")
    s.add_argument("--x0", required=True)
    s.add_argument("--y0", required=True)
    s.add_argument("--dy0", required=True)
    s.add_argument("--path", required=True, help="waypoints x1,x2,... (Python complex literals)")
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--chart", choices=oracle.CHARTS, default=None)
    s.set_defaults(fn=cmd_integrate)

    s = sub.add_parser("check", parents=[common], help="cross-module consistency suites")
    s.add_argument("--golden", action="store_true", help="run every worked example")
    s.add_argument("--only", action="append", metavar="PREFIX")
    s.add_argument("--suite", action="append", choices=sorted(golden.SUITES))
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_check)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        code = args.fn(args)
        return int(code or 0)
    except PainleveError as e:
        sys.stderr.write(dumps(e.to_json()) + "\n")
        return e.exit_code
    except (ValueError, ZeroDivisionError, ArithmeticError) as e:
        sys.stderr.write(dumps({"error": type(e).__name__, "message": str(e)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

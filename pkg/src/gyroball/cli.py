"""Command-line front end.

Exit codes: 0 success, 1 property failure, 2 usage/parse/lookup error,
3 boundary error, 4 sampling-health failure.  Structured reports go to
standard output; diagnostics go to standard error.
"""

import argparse
import os
import re
import sys

import numpy as np

from .disk import poincare_metric
from .einstein import gyrometric_de, rapidity_metric_dE
from .engine import CheckConfig, run_suite, SUITE_NAMES
from .errors import (
    BoundaryError,
    DimensionMismatchError,
    DomainError,
    GyroError,
    SamplingHealthError,
    UnknownNameError,
)
from .mobius import phi, phi_inv, rapidity_metric_dM
from .registry import MODEL_NAMES, get_model, gyronorm_names
from .vectors import ensure_in_ball, euclidean_norm

DEFAULT_SEED = 42

_COMPLEX_FORM = re.compile(
    r"^\s*(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*"
    r"(?P<im>[+-]\s*(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*i\s*$"
)


class PointParseError(GyroError, ValueError):
    pass


def parse_point(text, model_name=None):
    """Parse "x1,x2,..." (any model) or "a+bi" (poincare-disk)."""
    if model_name == "poincare-disk":
        m = _COMPLEX_FORM.match(text)
        if m:
            re_part = float(m.group("re")) if m.group("re") else 0.0
            im_part = float(m.group("im").replace(" ", ""))
            return np.array([re_part, im_part])
    try:
        coords = [float(part) for part in text.split(",")]
    except ValueError:
        raise PointParseError(f"cannot parse point {text!r}") from None
    if not coords:
        raise PointParseError(f"cannot parse point {text!r}")
    return np.array(coords)


def format_point(v):
    return ",".join(f"{x:.17g}" for x in np.atleast_1d(v))


def _resolve_dim(args, points):
    dims = {p.shape[-1] for p in points}
    if len(dims) != 1:
        raise DimensionMismatchError(
            f"points have mismatched dimensions: {sorted(dims)}"
        )
    dim = dims.pop()
    if args.dim is not None and args.dim != dim:
        raise DimensionMismatchError(
            f"--dim {args.dim} disagrees with point dimension {dim}"
        )
    if args.model == "poincare-disk" and dim != 2:
        raise DimensionMismatchError("model 'poincare-disk' requires dim = 2")
    return dim


def _cmd_add(args):
    u = parse_point(args.u, args.model)
    v = parse_point(args.v, args.model)
    dim = _resolve_dim(args, [u, v])
    model = get_model(args.model, dim=dim)
    model.validate(u) if model.validate else None
    model.validate(v) if model.validate else None
    result = model.add(u, v)
    if args.model != "group":
        ensure_in_ball(result)
    print(format_point(result))
    return 0


def _cmd_gyr(args):
    a = parse_point(args.a, args.model)
    b = parse_point(args.b, args.model)
    c = parse_point(args.c, args.model)
    dim = _resolve_dim(args, [a, b, c])
    model = get_model(args.model, dim=dim)
    if model.validate:
        for p in (a, b, c):
            model.validate(p)
    result = model.gyr(a, b, c)
    if args.model != "group":
        ensure_in_ball(result)
    print(format_point(result))
    return 0


_METRICS = {
    ("einstein", "rapidity"): rapidity_metric_dE,
    ("einstein", "euclidean"): gyrometric_de,
    ("mobius", "rapidity"): rapidity_metric_dM,
    ("poincare-disk", "poincare"): poincare_metric,
    ("group", "euclidean"): lambda u, v: euclidean_norm(v - u),
    ("group", "discrete"): lambda u, v: float(euclidean_norm(v - u) > 1e-9),
}


def _cmd_dist(args):
    u = parse_point(args.u, args.model)
    v = parse_point(args.v, args.model)
    dim = _resolve_dim(args, [u, v])
    model = get_model(args.model, dim=dim)
    if model.validate:
        model.validate(u)
        model.validate(v)
    norm_name = args.gyronorm or gyronorm_names(args.model)[0]
    try:
        metric = _METRICS[(args.model, norm_name)]
    except KeyError:
        valid = ", ".join(n for m, n in _METRICS if m == args.model)
        raise UnknownNameError(
            f"unknown gyronorm '{norm_name}' for model '{args.model}'; valid: {valid}"
        ) from None
    print(f"{float(metric(u, v)):.17g}")
    return 0


_ROUTES = {
    ("mobius", "einstein"): phi,
    ("einstein", "mobius"): phi_inv,
    ("poincare-disk", "mobius"): lambda p: p,
    ("mobius", "poincare-disk"): lambda p: p,
}


def _cmd_convert(args):
    try:
        route = _ROUTES[(args.src, args.dst)]
    except KeyError:
        raise UnknownNameError(
            f"unsupported conversion route {args.src} -> {args.dst}; supported: "
            + ", ".join(f"{a}->{b}" for a, b in _ROUTES)
        ) from None
    p = parse_point(args.point, args.src)
    if "poincare-disk" in (args.src, args.dst) and p.shape[-1] != 2:
        raise DimensionMismatchError("disk conversions require dim = 2")
    ensure_in_ball(p)
    result = route(p)
    ensure_in_ball(result)
    print(format_point(result))
    return 0


def _cmd_check(args):
    dim = args.dim if args.dim is not None else (2 if args.model == "poincare-disk" else 3)
    cfg = CheckConfig(samples=args.samples, seed=args.seed,
                      atol=args.tol_abs, rtol=args.tol_rel)
    try:
        report = run_suite(args.model, args.suite, cfg=cfg, dim=dim,
                           gyronorm=args.gyronorm)
    except SamplingHealthError as exc:
        if exc.report is not None and args.output == "structured":
            print(exc.report.to_json())
        print(f"error: {exc}", file=sys.stderr)
        return 4
    if args.output == "structured":
        print(report.to_json())
    else:
        print(f"suite {report.suite} on {report.model} (dim {report.dim}, "
              f"gyronorm {report.gyronorm}, seed {report.seed}, "
              f"samples {report.samples})")
        for prop in report.properties:
            line = f"  {prop.status.upper():7s} {prop.name} (checked {prop.checked})"
            if prop.note:
                line += f" -- {prop.note}"
            print(line)
            for c in prop.failures[:3]:
                print(f"          counterexample: inputs={c.inputs} "
                      f"lhs={c.lhs} rhs={c.rhs} diff={c.diff}")
    return 0 if report.passed else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gyroball",
        description="Gyrogroup algebra on the unit ball: compute, convert, and verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--model", required=True, choices=MODEL_NAMES)
        p.add_argument("--dim", type=int, default=None)

    p_add = sub.add_parser("add", help="gyroaddition of two points")
    add_common(p_add)
    p_add.add_argument("--u", required=True)
    p_add.add_argument("--v", required=True)
    p_add.set_defaults(func=_cmd_add)

    p_gyr = sub.add_parser("gyr", help="apply the gyration gyr[a,b] to c")
    add_common(p_gyr)
    p_gyr.add_argument("--a", required=True)
    p_gyr.add_argument("--b", required=True)
    p_gyr.add_argument("--c", required=True)
    p_gyr.set_defaults(func=_cmd_gyr)

    p_dist = sub.add_parser("dist", help="distance between two points")
    add_common(p_dist)
    p_dist.add_argument("--gyronorm", default=None)
    p_dist.add_argument("--u", required=True)
    p_dist.add_argument("--v", required=True)
    p_dist.set_defaults(func=_cmd_dist)

    p_conv = sub.add_parser("convert", help="convert a point between models")
    p_conv.add_argument("--from", dest="src", required=True, choices=MODEL_NAMES)
    p_conv.add_argument("--to", dest="dst", required=True, choices=MODEL_NAMES)
    p_conv.add_argument("point")
    p_conv.set_defaults(func=_cmd_convert)

    p_check = sub.add_parser("check", help="run a property suite")
    add_common(p_check)
    p_check.add_argument("--suite", required=True)
    p_check.add_argument("--gyronorm", default=None)
    p_check.add_argument("--samples", type=int, default=10000)
    p_check.add_argument("--seed", type=int, default=None)
    p_check.add_argument("--tol-abs", type=float, default=1e-9)
    p_check.add_argument("--tol-rel", type=float, default=1e-9)
    p_check.add_argument("--output", choices=("structured", "text"),
                         default="structured")
    p_check.set_defaults(func=_cmd_check)

    return parser


_POINT_FLAGS = {"--u", "--v", "--a", "--b", "--c"}


def _merge_point_flags(argv):
    """Join point flags with values that start with a minus sign, which
    argparse would otherwise read as options."""
    if argv is None:
        argv = sys.argv[1:]
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _POINT_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(_merge_point_flags(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "seed", None) is None and args.command == "check":
        args.seed = int(os.environ.get("GYRO_SEED", DEFAULT_SEED))
    try:
        return args.func(args)
    except BoundaryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (PointParseError, DomainError, DimensionMismatchError,
            UnknownNameError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()

"""Command-line entry point.

Exit status is 0 on success, 1 on a domain error (printed as
``ERROR <code>: <detail>``) and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import coamoeba as co
from .algebra import format_element, parse_field
from .errors import DomainError
from .hlgeometry import FillingData, filling_slope, front_projection
from .mirror import (
    LocalSystem, PlueckerPoint, brute_force_support, curvature, koszul_hf,
    localsystem_from_line, pluecker_embed, support_points, support_relations,
)
from .tropical import CurveError, TropicalCurve, check_balancing

# options whose values may start with a minus sign
_VALUE_OPTIONS = ("--mu", "--plucker", "--alpha", "--z", "--alpha-m0", "--alpha-l0")


class UsageError(Exception):
    pass


def _glue_values(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_OPTIONS and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def _field(text):
    try:
        return parse_field(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _elements(text: str, field, count: int | None = None) -> list:
    parts = [p for p in text.split(",")]
    if count is not None and len(parts) != count:
        raise UsageError(f"expected {count} comma-separated values, got {len(parts)}")
    try:
        return [field(p) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from None


def _local_system(args) -> LocalSystem:
    mu = _elements(args.mu, args.field, 5)
    try:
        return LocalSystem(tuple(mu), args.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, out: str):
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _fmt_vec(v) -> str:
    return ",".join(format_element(x) for x in v)


# -- subcommands -----------------------------------------------------------

def cmd_balance(args):
    try:
        curve = TropicalCurve.from_json(Path(args.curve).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read curve: {exc}") from None
    except CurveError as exc:
        raise DomainError("malformed_curve", str(exc)) from None
    residuals = check_balancing(curve)
    print(json.dumps({"balanced": all(not any(r) for r in residuals),
                      "residuals": [list(r) for r in residuals]}))


def cmd_coamoeba_sample(args):
    spec = co.CoamoebaSpec(args.n, args.lam)
    _emit(co.sample_csv(co.sample_immersion(spec, args.grid)), args.out)


def cmd_certify(args):
    spec = co.CoamoebaSpec(args.n, args.lam)
    report = co.certify_closed(spec, args.grid, args.tol)
    cone = co.chart_cone_residuals(spec, min(args.grid, 16)) if args.n == 3 else None
    sample = co.sample_immersion(spec, min(args.grid, 16))
    if args.out:
        _emit(co.residual_csv(report.points, report.residuals), args.out)
    print(co.summary_json(report.max_asymmetry, cone, co.hausdorff_to_tropical(sample)))
    if not report.passed:
        raise DomainError("not_closed", f"mixed-partial asymmetry {report.max_asymmetry:.3g} "
                                        f"exceeds {args.tol:g} at {report.worst_point}")


def cmd_front(args):
    if not args.epsilon > 0:
        raise UsageError("epsilon must be positive")
    lines = ["s,t,front_x,front_y,front_z,caustic"]
    for a in range(args.grid):
        for b in range(args.grid):
            s, t = 2 * math.pi * a / args.grid, 2 * math.pi * b / args.grid
            try:
                v = front_projection(s, t, args.epsilon)
                lines.append(",".join(repr(float(x)) for x in (s, t, *v)) + ",0")
            except DomainError:
                lines.append(f"{s!r},{t!r},nan,nan,nan,1")
    _emit("\n".join(lines) + "\n", args.out)


def cmd_curvature(args):
    print(format_element(curvature(_local_system(args))))


def cmd_plucker(args):
    print(_fmt_vec(pluecker_embed(_local_system(args)).coords))


def cmd_line(args):
    for rel in support_relations(_local_system(args)):
        print(rel)


def cmd_localsystem(args):
    coords = _elements(args.plucker, args.field, 6)
    try:
        point = PlueckerPoint(tuple(coords), args.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(_fmt_vec(localsystem_from_line(point).mu))


def cmd_support(args):
    if args.field.characteristic == 0:
        raise UsageError("support needs a prime field, e.g. --field fp:7")
    ls = _local_system(args)
    points = brute_force_support(ls) if args.brute else support_points(ls)
    print(json.dumps([[int(c) for c in p] for p in points]))


def cmd_koszul(args):
    alpha = _elements(args.alpha, args.field)
    z = _elements(args.z, args.field)
    try:
        ranks = koszul_hf(alpha, z, args.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(json.dumps({str(d): r for d, r in sorted(ranks.items())}))


def cmd_dehn(args):
    try:
        data = FillingData(Fraction(args.alpha_m0), Fraction(args.alpha_l0))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    print(filling_slope(data))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fourvalent", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("balance", help="per-vertex balancing residuals of a curve JSON")
    s.add_argument("curve")
    s.set_defaults(func=cmd_balance)

    s = sub.add_parser("coamoeba-sample", help="point cloud of the lift as CSV")
    s.add_argument("--n", type=int, choices=(2, 3), default=3)
    s.add_argument("--grid", type=int, default=16)
    s.add_argument("--lambda", dest="lam", type=float, default=1.0)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_coamoeba_sample)

    s = sub.add_parser("certify", help="closedness, cone and proximity summary as JSON")
    s.add_argument("--n", type=int, choices=(2, 3), default=3)
    s.add_argument("--grid", type=int, default=31)
    s.add_argument("--tol", type=float, default=1e-7)
    s.add_argument("--lambda", dest="lam", type=float, default=0.01)
    s.add_argument("--out", default=None, help="optional per-point residual CSV")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("front", help="front projection of the cone link as CSV")
    s.add_argument("--epsilon", type=float, default=3.0)
    s.add_argument("--grid", type=int, default=24)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_front)

    for name, func, text in (("curvature", cmd_curvature, "curvature of a local system"),
                             ("plucker", cmd_plucker, "Plücker coordinates of a local system"),
                             ("line", cmd_line, "the three support relations")):
        s = sub.add_parser(name, help=text)
        s.add_argument("--mu", required=True, help="five comma-separated holonomies")
        s.add_argument("--field", type=_field, default="q")
        s.set_defaults(func=func)

    s = sub.add_parser("localsystem", help="local system of a generic line")
    s.add_argument("--plucker", required=True, help="p12,p13,p14,p23,p24,p34")
    s.add_argument("--field", type=_field, default="q")
    s.set_defaults(func=cmd_localsystem)

    s = sub.add_parser("support", help="support points over a prime field as JSON")
    s.add_argument("--mu", required=True)
    s.add_argument("--field", type=_field, required=True)
    s.add_argument("--brute", action="store_true", help="exhaustive search instead of solving")
    s.set_defaults(func=cmd_support)

    s = sub.add_parser("koszul", help="cohomology ranks of the Koszul complex")
    s.add_argument("--alpha", required=True)
    s.add_argument("--z", required=True)
    s.add_argument("--field", type=_field, default="q")
    s.set_defaults(func=cmd_koszul)

    s = sub.add_parser("dehn", help="filling slope from the values on m0 and l0")
    s.add_argument("--alpha-m0", required=True)
    s.add_argument("--alpha-l0", required=True)
    s.set_defaults(func=cmd_dehn)
    return p


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    np.random.seed(args.seed)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"ERROR usage: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"ERROR {exc.code}: {exc.detail}")
        return 1
    return 0


def main():
    sys.exit(run())

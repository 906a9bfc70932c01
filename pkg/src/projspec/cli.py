"""Command-line interface.

Exit codes: 0 success, 1 usage, 2 numerical failure, 3 failed precondition
(e.g. a non-commutative tuple for ``arrange``), 4 geometric degeneracy (a
loop or line meeting the spectrum). Any input path may be ``-`` for stdin.
The default seed is 42, overridden by the PROJSPEC_SEED environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings

import numpy as np

from . import serialize as ser
from .arrangement import hyperplanes, verify_factorization
from .demos import disk_poly_membership, rotation_period_experiment, rotation_spectrum_locus
from .detpoly import interpolate_det
from .equiv import find_witness
from .errors import NotSimilarError, ProjSpecError
from .linalg import inverse
from .mcform import (
    centrality_check,
    closedness_check,
    descent_check,
    flatness_check,
    omega_eval,
    resolvent_derivative_check,
)
from .pencil import random_point
from .periods import nontriviality_certificate
from .spectrum import affine_slice, cloud_sample, margin

EXIT_USAGE = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    return int(os.environ.get("PROJSPEC_SEED", "42"))


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _q_arg(value: str) -> int:
    q = int(value)
    if q < 2:
        raise argparse.ArgumentTypeError("q must be at least 2")
    return q


def _complex_list(value: str) -> list[complex]:
    try:
        return [complex(v.replace(" ", "")) for v in value.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse coefficients {value!r}") from exc


def cmd_det(args) -> int:
    A = ser.tuple_from_json(_read_json(args.tuple))
    p = interpolate_det(A, seed=args.seed, oversample=args.oversample, samples=args.samples)
    _emit(ser.dumps(ser.polynomial_to_json(p)), args.output)
    return 0


def cmd_sample(args) -> int:
    A = ser.tuple_from_json(_read_json(args.tuple))
    if args.chart is not None:
        sl = affine_slice(A, args.chart, tuple(args.bounds), tuple(args.resolution))
        text = ser.points_csv(sl.rows(), A.n_plus_1)
    else:
        cloud = cloud_sample(A, args.lines, args.seed, tol=args.tol)
        text = ser.points_csv(((p.coords, p.margin) for p in cloud), A.n_plus_1)
        print(
            f"{len(cloud)} points from {cloud.lines} lines "
            f"({cloud.skipped_lines} skipped, {cloud.rejected_points} rejected)",
            file=sys.stderr,
        )
    _emit(text, args.output)
    return 0


def cmd_arrange(args) -> int:
    A = ser.tuple_from_json(_read_json(args.tuple))
    planes = hyperplanes(A, seed=args.seed)
    report = verify_factorization(A, planes, seed=args.seed)
    if not report.ok:
        print(f"warning: factorization residual {report.residual:.2e}", file=sys.stderr)
    _emit(ser.dumps(ser.arrangement_to_json(planes)), args.output)
    return 0


def _resolvent_points(A, count, rng, min_margin):
    pts = []
    while len(pts) < count:
        z = random_point(A.n_plus_1, rng)
        if margin(A, z) > min_margin:
            pts.append(z)
    return pts


def cmd_check_form(args) -> int:
    A = ser.tuple_from_json(_read_json(args.tuple))
    phi = ser.functional_from_json(_read_json(args.functional))
    rng = np.random.default_rng(args.seed)
    worst = dict.fromkeys(["euler", "resolvent_derivative", "flatness", "closedness", "descent"], 0.0)
    for z in _resolvent_points(A, args.points, rng, args.min_margin):
        F = omega_eval(A, z).coeffs
        fnorm = max(float(np.max(np.linalg.norm(F, axis=(1, 2)))), 1e-300)
        ainv = np.linalg.norm(inverse(A(z)))
        anorm = float(np.max(A.norms()))
        wnorm = max(float(np.linalg.norm(phi.weight)), 1e-300)
        eul = np.linalg.norm(np.tensordot(z, F, axes=1) - np.eye(A.k))
        worst["euler"] = max(worst["euler"], float(eul))
        rd = resolvent_derivative_check(A, z, args.h, richardson=True) / (ainv**2 * anorm)
        worst["resolvent_derivative"] = max(worst["resolvent_derivative"], rd)
        worst["flatness"] = max(worst["flatness"], flatness_check(A, z, args.h, richardson=True) / fnorm**2)
        cl = closedness_check(A, phi, z, args.h, richardson=True) / (wnorm * fnorm**2)
        worst["closedness"] = max(worst["closedness"], cl)
        worst["descent"] = max(worst["descent"], abs(descent_check(A, phi, z) - phi.at_identity))
    central = centrality_check(phi, A, seed=args.seed).violation
    thresholds = {
        "euler": args.euler_tol,
        "resolvent_derivative": args.derivative_tol,
        "flatness": args.derivative_tol,
        "closedness": args.closed_tol,
        "descent": args.euler_tol,
        "centrality": args.central_tol,
    }
    values = dict(worst, centrality=central)
    checks = {
        name: {"max": values[name], "threshold": thresholds[name], "pass": bool(values[name] <= thresholds[name])}
        for name in thresholds
    }
    out = {
        "functional": phi.label,
        "points": args.points,
        "phi_identity": ser.encode_complex(phi.at_identity),
        "checks": checks,
        "centrality_is_sampled": True,
    }
    _emit(ser.dumps(out), args.output)
    return 0


def cmd_period(args) -> int:
    A = ser.tuple_from_json(_read_json(args.tuple))
    phi = ser.functional_from_json(_read_json(args.functional))
    loop = ser.loop_from_json(_read_json(args.loop))
    cert = nontriviality_certificate(A, phi, [loop], seed=args.seed)
    out = ser.period_to_json(cert.periods[0])
    out.update(verdict=cert.verdict, centrality=cert.centrality, closedness=cert.closedness)
    _emit(ser.dumps(out), args.output)
    return 0


def cmd_equiv(args) -> int:
    A = ser.tuple_from_json(_read_json(args.tuple_a))
    B = ser.tuple_from_json(_read_json(args.tuple_b))
    try:
        w = find_witness(A, B, seed=args.seed)
    except NotSimilarError as exc:
        _emit(ser.dumps({"status": "NotSimilar", "reason": str(exc)}), args.output)
        return 0
    out = {"status": "Similar"}
    out.update(ser.witness_to_json(w))
    _emit(ser.dumps(out), args.output)
    return 0


def cmd_demo(args) -> int:
    if args.demo == "rotation":
        outer = rotation_period_experiment(args.q, outer=True)
        inner = rotation_period_experiment(args.q, outer=False)
        locus = rotation_spectrum_locus(args.q, args.lines, args.seed)
        out = {
            "q": args.q,
            "outer": ser.period_to_json(outer),
            "inner": ser.period_to_json(inner),
            "locus_deviation": locus.deviation,
            "locus_points": len(locus.points),
        }
    else:
        v = disk_poly_membership(args.coeffs)
        out = {
            "coeffs": ser.encode_vector(args.coeffs),
            "invertible": v.invertible,
            "margin": v.margin,
            "degenerate": v.degenerate,
            "roots": ser.encode_vector(v.roots),
        }
    _emit(ser.dumps(out), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="projspec", description="Projective spectra of matrix tuples.")
    parser.add_argument("--seed", type=int, default=_default_seed(), help="RNG seed (default 42 or $PROJSPEC_SEED)")
    parser.add_argument("--tol", type=float, default=1e-8, help="membership tolerance on the normalized margin (default 1e-8)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def out_arg(p):
        p.add_argument("-o", "--output", default=None, help="output path (default stdout)")

    p = sub.add_parser("det", help="interpolate det A(z) as a homogeneous polynomial")
    p.add_argument("tuple")
    p.add_argument("--oversample", type=int, default=2, help="samples per monomial (default 2)")
    p.add_argument("--samples", type=int, default=None, help="explicit sample count")
    out_arg(p)
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("sample", help="sample the spectrum along random lines or on an affine chart")
    p.add_argument("tuple")
    p.add_argument("--lines", type=int, default=50, help="random lines for --cloud (default 50)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--cloud", action="store_true", help="point cloud over random lines (default)")
    g.add_argument("--chart", type=int, default=None, help="affine chart index for a margin grid")
    p.add_argument("--bounds", type=float, nargs=4, default=[-2.0, 2.0, -2.0, 2.0], metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    p.add_argument("--resolution", type=int, nargs=2, default=[101, 101], metavar=("NX", "NY"))
    out_arg(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("arrange", help="hyperplane arrangement of a commutative tuple")
    p.add_argument("tuple")
    out_arg(p)
    p.set_defaults(func=cmd_arrange)

    p = sub.add_parser("check-form", help="differential identities of the Maurer-Cartan form")
    p.add_argument("tuple")
    p.add_argument("functional")
    p.add_argument("--points", type=int, default=10, help="random resolvent points (default 10)")
    p.add_argument("--h", type=float, default=None, help="difference step (default 1e-5 |z|)")
    p.add_argument("--min-margin", type=float, default=1e-3, help="margin required of sample points (default 1e-3)")
    p.add_argument("--euler-tol", type=float, default=1e-10, help="Euler contraction and descent threshold (default 1e-10)")
    p.add_argument("--derivative-tol", type=float, default=1e-6, help="relative resolvent/flatness threshold (default 1e-6)")
    p.add_argument("--closed-tol", type=float, default=1e-6, help="relative closedness threshold (default 1e-6)")
    p.add_argument("--central-tol", type=float, default=1e-8, help="sampled centrality threshold (default 1e-8)")
    out_arg(p)
    p.set_defaults(func=cmd_check_form)

    p = sub.add_parser("period", help="period of phi(omega_A) over a loop, with a nontriviality verdict")
    p.add_argument("tuple")
    p.add_argument("functional")
    p.add_argument("loop")
    out_arg(p)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("equiv", help="find U, V with U A_j V = B_j")
    p.add_argument("tuple_a")
    p.add_argument("tuple_b")
    out_arg(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("demo", help="finite rotation-algebra and disk-algebra demos")
    demo = p.add_subparsers(dest="demo", required=True, parser_class=_Parser)
    r = demo.add_parser("rotation", help="clock-shift periods and spectrum locus")
    r.add_argument("--q", type=_q_arg, required=True)
    r.add_argument("--lines", type=int, default=50)
    out_arg(r)
    d = demo.add_parser("disk", help="invertibility of sum z_j w^j in the disk algebra")
    d.add_argument("--coeffs", type=_complex_list, required=True, help="comma-separated, e.g. 1,-1 or 1,0,-4")
    out_arg(d)
    p.set_defaults(func=cmd_demo)
    return parser


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"projspec: warning: {message}", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    previous = warnings.showwarning
    warnings.showwarning = _show_warning
    try:
        return args.func(args)
    except ProjSpecError as exc:
        print(f"projspec: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except BrokenPipeError:
        # reader closed early (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_USAGE
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"projspec: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        warnings.showwarning = previous


if __name__ == "__main__":
    sys.exit(main())

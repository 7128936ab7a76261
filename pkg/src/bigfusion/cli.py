"""
Command line entry point.

    biframe gen --dim N --items K --mode coincident|hermitian|general --seed S -o FILE
    biframe check FILE [--tol 1e-9] [--json | --md]
    biframe dual FILE -o FILE
    biframe reconstruct FILE --vector-seed S
    biframe tensor LEFT RIGHT -o FILE
    biframe suite FILE... --report DIR

The tolerance defaults to 1e-9; the BIFRAME_TOL environment variable
overrides the default and an explicit --tol overrides both. Exit status is
0 exactly when every verdict of the command passes.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .bifusion import canonical_dual_bi, certify_bi_gfusion, reconstruct
from .errors import BiframeError, NotAFrame
from .gfusion import DEFAULT_TOL
from .harness.generate import draw_spec, generate, normalize_mode
from .harness.persist import load, save
from .harness.suite import run_suite
from .oracle import random_unit_vectors
from .tensorframe import certify_tensor, tensor_frame_operator_factorization, tensor_pair

TOL_ENV = "BIFRAME_TOL"
RECONSTRUCTION_TOL = 1e-8
FACTORIZATION_TOL = 1e-10


def resolve_tol(flag_value, environ=None):
    if flag_value is not None:
        return flag_value
    environ = os.environ if environ is None else environ
    raw = environ.get(TOL_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise SystemExit(f"error: {TOL_ENV}={raw!r} is not a number")
    if not tol > 0:
        raise SystemExit(f"error: {TOL_ENV} must be positive")
    return tol


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _cert_lines(label, cert):
    return (
        f"{label}: verdict={cert.verdict.value} lower={cert.lower:.12g} "
        f"upper={cert.upper:.12g} hermitian_deviation={cert.hermitian_deviation:.3e}"
    )


def cmd_gen(args):
    spec = draw_spec(
        args.seed,
        mode=normalize_mode(args.mode),
        ambient_dim=args.dim,
        item_count=args.items,
    )
    pair = generate(spec)
    save(args.output, pair)
    print(f"wrote {args.output}: dim={spec.ambient_dim} items={spec.item_count} mode={spec.pair_mode}")
    return 0


def cmd_check(args):
    tol = resolve_tol(args.tol)
    cert = certify_bi_gfusion(load(args.file), tol)
    if args.json:
        print(json.dumps({"file": str(args.file), **cert.to_dict()}, indent=2))
    elif args.md:
        print("| file | lower | upper | deviation | verdict |")
        print("|---|---|---|---|---|")
        print(
            f"| {args.file} | {cert.lower:.6g} | {cert.upper:.6g} | "
            f"{cert.hermitian_deviation:.2e} | {cert.verdict.value} |"
        )
    else:
        print(_cert_lines(str(args.file), cert))
    return 0 if cert.is_frame else 1


def cmd_dual(args):
    tol = resolve_tol(args.tol)
    dual = canonical_dual_bi(load(args.file), tol)
    save(args.output, dual)
    cert = certify_bi_gfusion(dual, tol)
    print(_cert_lines(f"dual -> {args.output}", cert))
    return 0 if cert.is_frame else 1


def cmd_reconstruct(args):
    tol = resolve_tol(args.tol)
    pair = load(args.file)
    rng = np.random.default_rng(args.vector_seed)
    f = random_unit_vectors(pair.ambient_dim, 1, rng)[0]
    r = reconstruct(pair, f, tol)
    print(f"relative error S^-1 S f: {r.error:.3e}")
    print(f"relative error S S^-1 f: {r.left_inverse_error:.3e}")
    ok = max(r.error, r.left_inverse_error) <= RECONSTRUCTION_TOL
    return 0 if ok else 1


def cmd_tensor(args):
    tol = resolve_tol(args.tol)
    tp = tensor_pair(load(args.left), load(args.right))
    save(args.output, tp.assembled)
    certs = certify_tensor(tp, tol)
    for label, cert in certs._asdict().items():
        print(_cert_lines(label, cert))
    fac = tensor_frame_operator_factorization(tp)
    bound = FACTORIZATION_TOL * (1.0 + np.linalg.norm(fac.assembled, 2))
    print(f"factorization error: {fac.error:.3e} (bound {bound:.3e})")
    ok = all(c.is_frame for c in certs) and fac.error <= bound
    return 0 if ok else 1


def cmd_suite(args):
    tol = resolve_tol(args.tol)
    paths = [Path(p) for p in args.files]

    def one(path):
        return run_suite(load(path), tol, seed=args.seed)

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        reports = list(pool.map(one, paths))

    out = Path(args.report)
    out.mkdir(parents=True, exist_ok=True)
    summary = ["# Suite report", "", f"tolerance: {tol:g}, seed: {args.seed}", ""]
    for path, report in zip(paths, reports):
        doc = {"file": str(path), **report.to_dict()}
        (out / f"{path.stem}.json").write_text(json.dumps(doc, indent=2) + "\n")
        summary += [f"File: `{path}`", "", report.to_markdown()]
        status = "PASS" if report.passed else "FAIL"
        print(f"{status} {path} verdict={report.verdict.value}")
    (out / "summary.md").write_text("\n".join(summary))
    return 0 if all(r.passed for r in reports) else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="biframe", description="Build, certify and verify bi-g-fusion frames.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_tol(p):
        p.add_argument("--tol", type=_positive_float, default=None,
                       help=f"verdict tolerance (default {DEFAULT_TOL:g} or ${TOL_ENV})")
        return p

    p = sub.add_parser("gen", help="generate a seeded random pair")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--items", type=int, required=True)
    p.add_argument("--mode", default="hermitian",
                   choices=["coincident", "hermitian", "hermitian-compatible", "general"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = with_tol(sub.add_parser("check", help="certify frame bounds of a pair"))
    p.add_argument("file")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--md", action="store_true")
    p.set_defaults(func=cmd_check)

    p = with_tol(sub.add_parser("dual", help="write the canonical dual pair"))
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_dual)

    p = with_tol(sub.add_parser("reconstruct", help="reconstruct a seeded random vector"))
    p.add_argument("file")
    p.add_argument("--vector-seed", type=int, default=0)
    p.set_defaults(func=cmd_reconstruct)

    p = with_tol(sub.add_parser("tensor", help="tensor product of two pairs"))
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_tensor)

    p = with_tol(sub.add_parser("suite", help="run every theorem check on each file"))
    p.add_argument("files", nargs="+")
    p.add_argument("--report", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=0, help="suite seed for vectors and operators")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotAFrame as exc:
        print(f"not a frame: {exc}", file=sys.stderr)
        return 1
    except (BiframeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

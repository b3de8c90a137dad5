"""Command-line front end.

Every command prints one JSON report on stdout (``generate`` without
``--out`` prints the bare matrix file instead).  Exit codes: 0 success (or
saturated), 1 not saturated, 2 input error, 3 numerical failure, 4 I/O error.
"""
import argparse
import sys
import time

import numpy as np

from . import certify as cert
from .bipartite import BipartiteOperator
from .exceptions import DianormError, NumericalFailure
from .linalg import frobenius_norm, nuclear_norm, random_gaussian, spectral_norm
from .matfile import (
    MatrixFileError,
    dumps,
    matrix_to_dict,
    operator_to_dict,
    read_matrix_file,
    write_matrix_file,
)
from .seesaw import SeesawConfig, sampled_lower_bound, square_norm

EXIT_OK = 0
EXIT_NOT_SATURATED = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


class InputError(ValueError):
    pass


def _load_operator(path, dim_w, dim_v):
    M, file_w, file_v, digest = read_matrix_file(path)
    dim_w = dim_w if dim_w is not None else file_w
    dim_v = dim_v if dim_v is not None else file_v
    if dim_w is None and dim_v is None:
        raise InputError("factor dimensions unknown: pass --dim-w/--dim-v or store them in the file")
    if dim_w is None:
        dim_w = M.shape[0] // dim_v
    if dim_v is None:
        dim_v = M.shape[0] // dim_w
    if not (M.shape[0] == M.shape[1] == dim_w * dim_v):
        raise InputError(f"matrix {M.shape[0]}x{M.shape[1]} does not match dims ({dim_w}, {dim_v})")
    return BipartiteOperator(M, dim_w, dim_v), digest


def _certificate_fields(c: cert.SaturationCertificate) -> dict:
    out = {
        "verdict": c.verdict.value,
        "nuclear_norm": c.nuclear_norm,
        "lower_residual": c.lower_residual,
        "upper_residual": c.upper_residual,
        "left_partial": matrix_to_dict(c.left_partial),
        "right_partial": matrix_to_dict(c.right_partial),
    }
    if c.psi is not None:
        out["psi"] = [[float(z.real), float(z.imag)] for z in c.psi]
        out["phi"] = [[float(z.real), float(z.imag)] for z in c.phi]
    return out


def _holder_fields(r: cert.HolderReport) -> dict:
    return {
        "equality_gap": r.equality_gap,
        "saturated": r.saturated,
        "singular_check": r.singular_check,
        "isometry_residual": r.isometry_residual,
        "isometry_check": r.isometry_check,
        "rank": r.rank,
        "conditions_agree": r.conditions_agree,
    }


def cmd_norm(args):
    M, _, _, digest = read_matrix_file(args.file)
    fn = {"nuclear": nuclear_norm, "frobenius": frobenius_norm, "spectral": spectral_norm}[args.which]
    return EXIT_OK, {"input_digest": digest, "results": {args.which: fn(M)}, "config": {}}


def cmd_squarenorm(args):
    X, digest = _load_operator(args.file, args.dim_w, args.dim_v)
    cfg = SeesawConfig(rel_tol=args.tol, max_iter=args.max_iter, restarts=args.restarts,
                       seed=args.seed, sample_count=args.samples)
    res = square_norm(X, cfg)
    nuc = nuclear_norm(X.matrix)
    results = {
        "value": res.value,
        "nuclear_norm": nuc,
        "upper_bound": X.dim_v * nuc,
        "ratio": res.value / nuc if nuc > 0 else None,
        "converged": res.converged,
        "iterations": res.iterations,
        "a_opt": matrix_to_dict(res.a_opt),
        "b_opt": matrix_to_dict(res.b_opt),
    }
    if args.samples > 0:
        results["sampled_lower_bound"] = sampled_lower_bound(X, cfg)
    config = {"dim_w": X.dim_w, "dim_v": X.dim_v, "rel_tol": cfg.rel_tol,
              "max_iter": cfg.max_iter, "restarts": cfg.restarts, "seed": cfg.seed,
              "samples": cfg.sample_count}
    return EXIT_OK, {"input_digest": digest, "results": results, "config": config}


def cmd_certify(args):
    X, digest = _load_operator(args.file, args.dim_w, args.dim_v)
    results = {}
    saturated = False
    if args.which in ("lower", "both"):
        c = cert.certify_lower(X, args.tol)
        results["lower"] = _certificate_fields(c)
        saturated |= c.saturated
    if args.which in ("upper", "both"):
        c = cert.certify_upper(X, args.tol)
        results["upper"] = _certificate_fields(c)
        saturated |= c.saturated
    code = EXIT_OK if saturated else EXIT_NOT_SATURATED
    config = {"dim_w": X.dim_w, "dim_v": X.dim_v, "which": args.which, "tol": args.tol}
    return code, {"input_digest": digest, "results": results, "config": config}


def _unit_vector(rng, n):
    v = random_gaussian(n, rng)
    return v / np.linalg.norm(v)


def cmd_generate(args):
    dw, dv = args.dim_w, args.dim_v
    if dw < 1 or dv < 1:
        raise InputError("dimensions must be positive")
    rng = np.random.default_rng(args.seed)
    if args.family == "cptp":
        kraus = args.kraus if args.kraus is not None else dw * dv
        X = cert.gen_cptp_choi(dw, dv, kraus, args.seed)
    elif args.family == "upper":
        if args.random:
            Y = random_gaussian((dw, dw), rng)
            psi, phi = _unit_vector(rng, dv), _unit_vector(rng, dv)
        else:
            Y = np.eye(dw)
            psi = phi = np.eye(dv)[0]
        X = cert.gen_upper_saturator(Y, psi, phi, dv)
    else:
        X = BipartiteOperator(random_gaussian((dw * dv, dw * dv), rng), dw, dv)
    config = {"family": args.family, "dim_w": dw, "dim_v": dv, "seed": args.seed,
              "kraus": args.kraus, "random": args.random}
    if args.out is None:
        # bare matrix file on stdout, so the output can be redirected to a file
        return EXIT_OK, {"raw": operator_to_dict(X)}
    write_matrix_file(args.out, X.matrix, dw, dv)
    _, _, _, digest = read_matrix_file(args.out)
    return EXIT_OK, {"output": args.out, "output_digest": digest, "results": {}, "config": config}


def cmd_holder(args):
    A, _, _, da = read_matrix_file(args.file_a)
    B, _, _, db = read_matrix_file(args.file_b)
    digests = [da, db]
    if args.file_c is None:
        r = cert.holder_saturation(A, B, args.tol)
        results = _holder_fields(r)
        saturated = r.saturated
    else:
        C, _, _, dc = read_matrix_file(args.file_c)
        digests.append(dc)
        r = cert.iterated_holder(A, B, C, args.tol)
        results = {"equality_gap": r.equality_gap, "saturated": r.saturated,
                   "conditions_hold": r.conditions_hold,
                   "left": _holder_fields(r.left), "right": _holder_fields(r.right)}
        saturated = r.saturated
    code = EXIT_OK if saturated else EXIT_NOT_SATURATED
    return code, {"input_digest": digests, "results": results, "config": {"tol": args.tol}}


def _add_dims(p, required=False):
    p.add_argument("--dim-w", type=int, required=required)
    p.add_argument("--dim-v", type=int, required=required)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dianorm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="nuclear, Frobenius or spectral norm of a matrix")
    p.add_argument("file")
    p.add_argument("--which", choices=["nuclear", "frobenius", "spectral"], default="nuclear")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("squarenorm", help="square norm of a bipartite operator")
    p.add_argument("file")
    _add_dims(p)
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9, help="relative stopping tolerance")
    p.add_argument("--samples", type=int, default=0,
                   help="also report the best of this many random feasible pairs")
    p.set_defaults(func=cmd_squarenorm)

    p = sub.add_parser("certify", help="saturation certificates for the norm bounds")
    p.add_argument("file")
    _add_dims(p)
    p.add_argument("--which", choices=["lower", "upper", "both"], default="both")
    p.add_argument("--tol", type=float, default=cert.DEFAULT_TOL)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("generate", help="write an operator from a test family")
    p.add_argument("--family", choices=["cptp", "upper", "gaussian"], required=True)
    _add_dims(p, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kraus", type=int, default=None, help="Kraus count for --family cptp")
    p.add_argument("--random", action="store_true",
                   help="random Y, psi, phi for --family upper (default Y=1, psi=phi=e_1)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("holder", help="Hoelder saturation for A B or A B C")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("file_c", nargs="?")
    p.add_argument("--tol", type=float, default=cert.DEFAULT_TOL)
    p.set_defaults(func=cmd_holder)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        code, report = args.func(args)
    except NumericalFailure as exc:
        print(f"dianorm: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (MatrixFileError, InputError, DianormError, ValueError) as exc:
        print(f"dianorm: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"dianorm: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    if "raw" in report:
        print(dumps(report["raw"]))
        return code
    report = {"command": args.command, "argv": argv, **report,
              "wall_time": time.perf_counter() - start}
    print(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
